#include <tcpair/error.hpp>
#include <tcpair/ring_json.hpp>

#include <algorithm>
#include <set>

namespace tcpair::rings {

namespace {
    [[noreturn]] void schema(const std::string & pointer, const std::string & msg)
    {
        fail(ErrorCode::SchemaError, (pointer.empty() ? std::string{"/"} : pointer) + ": " + msg);
    }

    auto escape(const std::string & key) -> std::string
    {
        std::string out;
        for (char c : key) {
            if (c == '~')
                out += "~0";
            else if (c == '/')
                out += "~1";
            else
                out += c;
        }
        return out;
    }

    auto child(const std::string & pointer, const std::string & key) -> std::string
    {
        return pointer + "/" + escape(key);
    }

    auto child(const std::string & pointer, std::size_t index) -> std::string
    {
        return pointer + "/" + std::to_string(index);
    }

    auto member(const Json & j, const std::string & key, const std::string & pointer) -> const Json &
    {
        if (! j.is_object())
            schema(pointer, "expected an object");
        auto it = j.find(key);
        if (it == j.end())
            schema(pointer, "missing key '" + key + "'");
        return *it;
    }

    auto as_int(const Json & j, const std::string & pointer) -> int
    {
        if (! j.is_number_integer())
            schema(pointer, "expected an integer");
        auto v = j.get<long long>();
        if (v < -1000000 || v > 1000000)
            schema(pointer, "integer out of range");
        return static_cast<int>(v);
    }

    auto as_rational(const Json & j, const std::string & pointer) -> Rational
    {
        if (j.is_number_integer())
            return Rational{j.get<long>()};
        if (! j.is_string())
            schema(pointer, "expected a rational literal string");
        try {
            return parse_rational(j.get<std::string>());
        }
        catch (const Error & e) {
            schema(pointer, e.what());
        }
    }

    auto monomial_json(const Monomial & m, const std::vector<Generator> & generators) -> Json
    {
        Json out = Json::object();
        for (std::size_t g = 0; g < m.size(); ++g)
            if (m[g] != 0)
                out[generators[g].name] = m[g];
        return out;
    }

    auto polynomial_json(const Polynomial & p, const std::vector<Generator> & generators) -> Json
    {
        Json out = Json::array();
        for (auto & t : p)
            out.push_back(Json{{"coeff", to_string(t.coeff)}, {"monomial", monomial_json(t.monomial, generators)}});
        return out;
    }
}

auto to_json(const Presentation & p) -> Json
{
    Json gens = Json::array();
    for (auto & g : p.generators)
        gens.push_back(Json{{"name", g.name}, {"degree", g.degree}});
    Json rels = Json::array();
    for (auto & r : p.relations)
        rels.push_back(polynomial_json(r, p.generators));
    return Json{{"field", p.field.name()}, {"generators", gens}, {"relations", rels}, {"top_degree", p.top_degree}};
}

auto to_json(const RingElement & e) -> Json
{
    return polynomial_json(e.ring()->to_polynomial(e), e.ring()->presentation().generators);
}

auto to_json(const RingHom & h) -> Json
{
    Json images = Json::object();
    for (int g = 0; g < h.source()->generator_count(); ++g)
        images[h.source()->generator(g).name] = to_json(h.image(g));
    return Json{{"images", images}};
}

auto polynomial_from_json(const Json & j, const std::vector<Generator> & generators, const std::string & pointer) -> Polynomial
{
    if (! j.is_array())
        schema(pointer, "expected a list of terms");
    Polynomial p;
    for (std::size_t t = 0; t < j.size(); ++t) {
        auto tp = child(pointer, t);
        auto & term = j[t];
        auto coeff = as_rational(member(term, "coeff", tp), child(tp, "coeff"));
        auto & mono = member(term, "monomial", tp);
        auto mp = child(tp, "monomial");
        if (! mono.is_object())
            schema(mp, "expected an object mapping generator names to exponents");
        Monomial m(generators.size(), 0);
        for (auto & [name, exp] : mono.items()) {
            auto it = std::find_if(generators.begin(), generators.end(), [&](auto & g) { return g.name == name; });
            if (it == generators.end())
                schema(child(mp, name), "unknown generator '" + name + "'");
            int e = as_int(exp, child(mp, name));
            if (e < 0)
                schema(child(mp, name), "exponent must be non-negative");
            m[static_cast<std::size_t>(it - generators.begin())] += e;
        }
        p.push_back(Term{coeff, m});
    }
    return p;
}

auto presentation_from_json(const Json & j, const std::string & pointer) -> Presentation
{
    if (! j.is_object())
        schema(pointer, "expected a ring presentation object");
    Presentation p;
    auto & field = member(j, "field", pointer);
    if (! field.is_string())
        schema(child(pointer, "field"), "expected \"Q\", \"F2\" or \"Fp:<p>\"");
    try {
        p.field = parse_field(field.get<std::string>());
    }
    catch (const Error & e) {
        schema(child(pointer, "field"), e.what());
    }

    auto gp = child(pointer, "generators");
    auto & gens = member(j, "generators", pointer);
    if (! gens.is_array())
        schema(gp, "expected a list of generators");
    std::set<std::string> names;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        auto ep = child(gp, g);
        auto & name = member(gens[g], "name", ep);
        if (! name.is_string() || name.get<std::string>().empty())
            schema(child(ep, "name"), "expected a non-empty string");
        if (! names.insert(name.get<std::string>()).second)
            schema(child(ep, "name"), "duplicate generator name '" + name.get<std::string>() + "'");
        int degree = as_int(member(gens[g], "degree", ep), child(ep, "degree"));
        if (degree < 1)
            schema(child(ep, "degree"), "generator degree must be >= 1");
        p.generators.push_back(Generator{name.get<std::string>(), degree});
    }

    p.top_degree = as_int(member(j, "top_degree", pointer), child(pointer, "top_degree"));
    if (p.top_degree < 0)
        schema(child(pointer, "top_degree"), "must be non-negative");

    auto rp = child(pointer, "relations");
    auto & rels = member(j, "relations", pointer);
    if (! rels.is_array())
        schema(rp, "expected a list of relations");
    for (std::size_t r = 0; r < rels.size(); ++r) {
        auto poly = polynomial_from_json(rels[r], p.generators, child(rp, r));
        std::optional<int> degree;
        for (auto & t : poly) {
            int d = monomial_degree(p.generators, t.monomial);
            if (degree && *degree != d)
                schema(child(rp, r), "relation is not homogeneous");
            degree = d;
        }
        p.relations.push_back(std::move(poly));
    }
    return p;
}

auto element_from_json(const RingPtr & ring, const Json & j, const std::string & pointer) -> RingElement
{
    return ring->reduce(polynomial_from_json(j, ring->presentation().generators, pointer));
}

auto hom_from_json(const RingPtr & source, const RingPtr & target, const Json & j, const std::string & pointer) -> RingHom
{
    auto ip = child(pointer, "images");
    auto & images = member(j, "images", pointer);
    if (! images.is_object())
        schema(ip, "expected an object mapping source generator names to elements");
    for (auto & [name, value] : images.items()) {
        (void)value;
        bool known = false;
        for (int g = 0; g < source->generator_count(); ++g)
            known = known || source->generator(g).name == name;
        if (! known)
            schema(child(ip, name), "unknown source generator '" + name + "'");
    }
    std::vector<RingElement> out;
    for (int g = 0; g < source->generator_count(); ++g) {
        auto & name = source->generator(g).name;
        auto it = images.find(name);
        if (it == images.end())
            schema(ip, "missing image for generator '" + name + "'");
        auto e = element_from_json(target, *it, child(ip, name));
        auto poly = polynomial_from_json(*it, target->presentation().generators, child(ip, name));
        for (auto & t : poly)
            if (monomial_degree(target->presentation().generators, t.monomial) != source->generator(g).degree)
                schema(child(ip, name), "image must have degree " + std::to_string(source->generator(g).degree));
        out.push_back(std::move(e));
    }
    return RingHom{source, target, std::move(out)};
}

}
