#pragma once

#include <tcpair/ring.hpp>

#include <json.hpp>

#include <string>

namespace tcpair::rings {

using Json = nlohmann::ordered_json;

auto to_json(const Presentation & p) -> Json;
auto to_json(const RingElement & e) -> Json;
auto to_json(const RingHom & h) -> Json;

/// The readers raise SchemaError naming the JSON pointer of the offending value.
auto presentation_from_json(const Json & j, const std::string & pointer = "") -> Presentation;
auto polynomial_from_json(const Json & j, const std::vector<Generator> & generators, const std::string & pointer = "") -> Polynomial;
auto element_from_json(const RingPtr & ring, const Json & j, const std::string & pointer = "") -> RingElement;
auto hom_from_json(const RingPtr & source, const RingPtr & target, const Json & j, const std::string & pointer = "") -> RingHom;

}
