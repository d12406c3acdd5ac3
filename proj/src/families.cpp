#include <tcpair/error.hpp>
#include <tcpair/families.hpp>

#include <bit>

namespace tcpair::rings {

namespace {
    auto unit_monomial(int count, int g, int e = 1) -> Monomial
    {
        Monomial m(static_cast<std::size_t>(count), 0);
        m[static_cast<std::size_t>(g)] = e;
        return m;
    }
}

auto build_truncated(int gen_degree, int truncation, const Field & field, const std::string & name) -> RingPtr
{
    if (gen_degree < 1 || truncation < 2)
        fail(ErrorCode::PreconditionFailed, "truncated ring needs degree >= 1 and truncation >= 2");
    Presentation p;
    p.field = field;
    p.generators = {Generator{name, gen_degree}};
    p.top_degree = gen_degree * (truncation - 1);
    p.relations = {Polynomial{Term{1, Monomial{truncation}}}};
    return GradedRing::build(std::move(p));
}

auto build_exterior(int n, const Field & field, const std::string & prefix) -> RingPtr
{
    if (n < 1)
        fail(ErrorCode::PreconditionFailed, "exterior algebra needs at least one generator");
    Presentation p;
    p.field = field;
    p.top_degree = n;
    for (int i = 0; i < n; ++i)
        p.generators.push_back(Generator{prefix + std::to_string(i + 1), 1});
    // Squares vanish on their own away from characteristic 2; F2 needs them spelled out.
    for (int i = 0; i < n; ++i)
        p.relations.push_back(Polynomial{Term{1, unit_monomial(n, i, 2)}});
    return GradedRing::build(std::move(p));
}

auto build_wedge(const std::vector<int> & degrees, const Field & field, const std::string & prefix) -> RingPtr
{
    if (degrees.empty())
        fail(ErrorCode::PreconditionFailed, "wedge needs at least one sphere");
    Presentation p;
    p.field = field;
    const int n = static_cast<int>(degrees.size());
    for (int i = 0; i < n; ++i) {
        if (degrees[static_cast<std::size_t>(i)] < 1)
            fail(ErrorCode::PreconditionFailed, "sphere dimensions must be >= 1");
        p.generators.push_back(Generator{prefix + std::to_string(i + 1), degrees[static_cast<std::size_t>(i)]});
        p.top_degree = std::max(p.top_degree, degrees[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            auto m = unit_monomial(n, i);
            ++m[static_cast<std::size_t>(j)];
            if (monomial_degree(p.generators, m) <= p.top_degree)
                p.relations.push_back(Polynomial{Term{1, m}});
        }
    return GradedRing::build(std::move(p));
}

auto build_point(const Field & field) -> RingPtr
{
    Presentation p;
    p.field = field;
    return GradedRing::build(std::move(p));
}

auto build_polygon(const lengths::LengthVector & l, const Field & field, std::optional<int> top_degree) -> PolygonRing
{
    const int n = l.size();
    if (n > max_polygon_size)
        fail(ErrorCode::SizeTooLarge, "polygon rings are limited to n <= " + std::to_string(max_polygon_size));
    auto v = lengths::vet(l);
    if (! v.generic)
        fail(ErrorCode::NonGenericLength, "length vector " + lengths::format_lengths(l) + " has a subset with half the total length");
    if (! v.nondegenerate)
        fail(ErrorCode::DegenerateLength, "length vector " + lengths::format_lengths(l) + " has an edge at least as long as all others combined");

    auto table = lengths::classify_subsets(l);
    Presentation p;
    p.field = field;
    p.top_degree = top_degree.value_or(2 * (n - 3));
    p.generators.push_back(Generator{"R", 2});
    for (int i = 1; i < n; ++i)
        p.generators.push_back(Generator{"V" + std::to_string(i), 2});

    // Generator 0 is R; V_i (1-based i < n) is generator i, i.e. edge index i-1.
    auto v_monomial = [&](lengths::SubsetMask s, int r_power) {
        Monomial m(static_cast<std::size_t>(n), 0);
        m[0] = r_power;
        for (int i = 0; i + 1 < n; ++i)
            if (s & (lengths::SubsetMask{1} << i))
                m[static_cast<std::size_t>(i + 1)] = 1;
        return m;
    };

    for (int i = 1; i < n; ++i) {
        Monomial sq(static_cast<std::size_t>(n), 0), rv(static_cast<std::size_t>(n), 0);
        sq[static_cast<std::size_t>(i)] = 2;
        rv[0] = 1;
        rv[static_cast<std::size_t>(i)] = 1;
        if (4 <= p.top_degree)
            p.relations.push_back(Polynomial{Term{1, sq}, Term{1, rv}});
    }

    const lengths::SubsetMask last = lengths::SubsetMask{1} << (n - 1);
    for (auto L : table.long_subsets()) {
        int size = std::popcount(L);
        if (2 * (size - 1) > p.top_degree)
            continue;
        if (L & last) {
            p.relations.push_back(Polynomial{Term{1, v_monomial(L & ~last, 0)}});
        }
        else {
            Polynomial rel;
            // Proper subsets S of L that are short.
            for (lengths::SubsetMask S = L;; S = (S - 1) & L) {
                if (S != L && table.is_short(S))
                    rel.push_back(Term{1, v_monomial(S, size - std::popcount(S) - 1)});
                if (S == 0)
                    break;
            }
            p.relations.push_back(std::move(rel));
        }
    }
    return PolygonRing{l, GradedRing::build(std::move(p))};
}

auto chern_class(const PolygonRing & p, int j) -> RingElement
{
    const int n = p.lengths.size();
    if (j < 1 || j > n)
        fail(ErrorCode::IndexOutOfRange, "Chern class index " + std::to_string(j) + " outside 1.." + std::to_string(n));
    auto R = p.ring->generator_element(0);
    if (j == n)
        return -R;
    return R + scale(2, p.ring->generator_element(j));
}

auto symplectic_class(const PolygonRing & p, std::optional<Rational> scale_factor) -> RingElement
{
    if (! p.ring->field().is_rationals())
        fail(ErrorCode::PreconditionFailed, "the symplectic class is computed over Q");
    Rational lambda = scale_factor.value_or(Rational{p.lengths.common_denominator()});
    auto omega = p.ring->zero();
    for (int i = 1; i <= p.lengths.size(); ++i)
        omega = omega + scale(lambda * p.lengths[i - 1], chern_class(p, i));
    return omega;
}

auto polygon_inclusion_hom(const PolygonRing & source, const PolygonRing & target, const std::vector<int> & phi) -> RingHom
{
    const int n = source.lengths.size();
    const int m = target.lengths.size();
    if (static_cast<int>(phi.size()) != n)
        fail(ErrorCode::PreconditionFailed, "phi must have one entry per source edge");
    for (int x : phi)
        if (x < 0 || x >= m)
            fail(ErrorCode::IndexOutOfRange, "phi value outside the target edge range");
    if (source.ring->field().characteristic() == 2)
        fail(ErrorCode::PreconditionFailed, "the inclusion hom divides by 2");

    // R = −c_n and V_j = (c_j + c_n)/2, then push forward along c_j ↦ c'_{phi(j)}.
    auto c_target = [&](int j) { return chern_class(target, phi[static_cast<std::size_t>(j - 1)] + 1); };
    std::vector<RingElement> images;
    images.push_back(-c_target(n));
    Rational half{1, 2};
    for (int j = 1; j < n; ++j)
        images.push_back(scale(half, c_target(j) + c_target(n)));
    return RingHom{source.ring, target.ring, std::move(images)};
}

}
