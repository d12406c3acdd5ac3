#pragma once

#include <tcpair/bounds.hpp>
#include <tcpair/ring.hpp>

#include <iosfwd>
#include <string>

namespace tcpair::cli {

struct RingSpec
{
    rings::RingPtr source;
    rings::RingPtr target;
    rings::RingHom hom;
};

/// Reads {"source": presentation, "target": presentation, "hom": {"images": ...}}.
/// A field override replaces the field of both presentations.
auto load_ring_spec(const std::string & path, const std::string & field_override = "") -> RingSpec;

auto emit_report(const bounds::BoundReport & report, bool json) -> std::string;

/// Exit codes: 0 success, 2 invalid input, 3 failed verification.
auto run(int argc, const char * const * argv, std::ostream & out, std::ostream & err) -> int;

}
