#include <tcpair/error.hpp>
#include <tcpair/families.hpp>
#include <tcpair/ring.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace tcpair;
using namespace tcpair::rings;

namespace {

auto Q = Field::rationals();
auto F2 = Field::prime(2);

auto mono(std::initializer_list<int> e) -> Monomial
{
    return Monomial(e);
}

auto random_homogeneous(const RingPtr & ring, int d, std::mt19937_64 & rng) -> RingElement
{
    auto e = ring->zero();
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int i = 0; i < ring->rank(d); ++i)
        e = e + scale(coeff(rng), ring->basis_element(d, i));
    return e;
}

/// rank(H^{2k}) and the pairing H^{2k} × H^{top-2k} → H^top.
void expect_poincare_duality(const RingPtr & ring)
{
    const int top = ring->top_degree();
    ASSERT_EQ(ring->rank(top), 1);
    for (int d = 0; d <= top; ++d) {
        ASSERT_EQ(ring->rank(d), ring->rank(top - d)) << "degree " << d;
        linalg::DenseMatrix pairing;
        for (int i = 0; i < ring->rank(d); ++i) {
            std::vector<Rational> row;
            for (int j = 0; j < ring->rank(top - d); ++j)
                row.push_back((ring->basis_element(d, i) * ring->basis_element(top - d, j)).component(top)[0]);
            pairing.push_back(row);
        }
        EXPECT_EQ(linalg::rank(ring->field(), pairing), ring->rank(d)) << "degree " << d;
    }
}

}

TEST(TruncatedRing, CubeTimesXVanishesInF2)
{
    auto r = build_truncated(1, 4, F2);
    auto x = r->generator_element(0);
    EXPECT_FALSE(power(x, 3).is_zero());
    EXPECT_TRUE((power(x, 3) * x).is_zero());
}

TEST(TruncatedRing, ComplexProjectivePlaneRanks)
{
    auto r = build_truncated(2, 3, Q);
    EXPECT_EQ(r->ranks(), (std::vector<int>{1, 0, 1, 0, 1}));
}

TEST(TruncatedRing, SphereClassSquaresToZero)
{
    auto r = build_truncated(1, 2, Q);
    auto x = r->generator_element(0);
    EXPECT_FALSE(x.is_zero());
    EXPECT_TRUE((x * x).is_zero());
}

TEST(ExteriorAlgebra, TripleProductAndSquares)
{
    auto r = build_exterior(3, Q);
    auto x1 = r->generator_element(0), x2 = r->generator_element(1), x3 = r->generator_element(2);
    EXPECT_FALSE((x1 * x2 * x3).is_zero());
    EXPECT_TRUE((x1 * x1).is_zero());
    EXPECT_EQ(r->ranks(), (std::vector<int>{1, 3, 3, 1}));
}

TEST(ExteriorAlgebra, DegreeOneClassesAnticommute)
{
    auto r = build_exterior(2, Q);
    auto x1 = r->generator_element(0), x2 = r->generator_element(1);
    EXPECT_EQ(x1 * x2, -(x2 * x1));
    EXPECT_FALSE((x1 * x2).is_zero());
}

TEST(ExteriorAlgebra, SquaresVanishOverF2)
{
    auto r = build_exterior(3, F2);
    EXPECT_EQ(r->ranks(), (std::vector<int>{1, 3, 3, 1}));
    EXPECT_TRUE((r->generator_element(1) * r->generator_element(1)).is_zero());
}

TEST(WedgeRing, ProductsVanish)
{
    auto r = build_wedge({2, 2, 3}, Q);
    EXPECT_TRUE((r->generator_element(0) * r->generator_element(1)).is_zero());
    EXPECT_TRUE((r->generator_element(0) * r->generator_element(2)).is_zero());
    EXPECT_EQ(r->ranks(), (std::vector<int>{1, 0, 2, 1}));
}

TEST(WedgeRing, SingleSphereMatchesTruncated)
{
    auto w = build_wedge({2}, Q);
    auto t = build_truncated(2, 2, Q);
    EXPECT_EQ(w->ranks(), t->ranks());
}

TEST(WedgeRing, TwoCircles)
{
    auto r = build_wedge({1, 1}, Q);
    auto g1 = r->generator_element(0), g2 = r->generator_element(1);
    EXPECT_TRUE((g1 * g1).is_zero());
    EXPECT_TRUE((g1 * g2).is_zero());
    EXPECT_EQ(r->ranks(), (std::vector<int>{1, 2}));
}

TEST(Reduce, PolynomialNormalFormMatchesProducts)
{
    auto r = build_exterior(3, Q);
    auto p = r->reduce(Polynomial{Term{2, mono({1, 1, 0})}, Term{-1, mono({0, 1, 1})}});
    auto x1 = r->generator_element(0), x2 = r->generator_element(1), x3 = r->generator_element(2);
    EXPECT_EQ(p, scale(2, x1 * x2) - x2 * x3);
    EXPECT_EQ(r->reduce(r->to_polynomial(p)), p);
}

TEST(Tensor, CharacteristicTwoSquare)
{
    auto a = build_truncated(1, 4, F2, "x");
    auto b = build_truncated(1, 3, F2, "y");
    auto t = GradedRing::tensor(a, b);
    auto x = tensor_element(t, a->generator_element(0), b->one());
    auto y = tensor_element(t, a->one(), b->generator_element(0));
    auto s = x + y;
    EXPECT_EQ(s * s, x * x + y * y);
}

TEST(Tensor, ExteriorClassesAnticommuteAcrossFactors)
{
    auto a = build_exterior(1, Q, "a");
    auto b = build_exterior(1, Q, "b");
    auto t = GradedRing::tensor(a, b);
    auto x = tensor_element(t, a->generator_element(0), b->one());
    auto y = tensor_element(t, a->one(), b->generator_element(0));
    EXPECT_EQ(x * y, -(y * x));
    EXPECT_EQ(x * y, tensor_element(t, a->generator_element(0), b->generator_element(0)));
}

TEST(Tensor, RanksAreConvolution)
{
    auto a = build_truncated(2, 4, Q);
    auto b = build_exterior(3, Q);
    auto t = GradedRing::tensor(a, b);
    for (int d = 0; d <= t->top_degree(); ++d) {
        int expected = 0;
        for (int p = 0; p <= d; ++p)
            expected += a->rank(p) * b->rank(d - p);
        EXPECT_EQ(t->rank(d), expected) << "degree " << d;
    }
}

TEST(Tensor, FieldMismatchRejected)
{
    try {
        (void)GradedRing::tensor(build_point(Q), build_point(F2));
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::FieldMismatch);
    }
}

TEST(Tensor, SignedBinomialForComplexProjectivePair)
{
    for (int n = 1; n <= 4; ++n)
        for (int m = 0; m <= n; ++m) {
            auto a = build_truncated(2, n + 1, Q, "x");
            auto b = m == 0 ? build_point(Q) : build_truncated(2, m + 1, Q, "y");
            auto t = GradedRing::tensor(a, b);
            auto x = a->generator_element(0);
            auto y = m == 0 ? b->zero() : b->generator_element(0);
            auto z = tensor_element(t, x, b->one()) - tensor_element(t, a->one(), y);
            auto expected = scale(Rational{binomial(static_cast<unsigned long>(n + m), static_cast<unsigned long>(m))} * (m % 2 ? -1 : 1),
                tensor_element(t, power(x, n), power(y, m)));
            EXPECT_EQ(power(z, n + m), expected) << n << "," << m;
        }
}

TEST(Polygon, SquareRelation)
{
    auto p = build_polygon(lengths::parse_lengths("1,1,2,3,5,7"), Q);
    auto R = p.ring->generator_element(0);
    for (int i = 1; i < 6; ++i) {
        auto V = p.ring->generator_element(i);
        EXPECT_EQ(V * V, -(R * V));
    }
}

TEST(Polygon, SurfaceRanks)
{
    auto p = build_polygon(lengths::parse_lengths("1,1,1,2"), Q);
    EXPECT_EQ(p.ring->ranks(), (std::vector<int>{1, 0, 1}));
}

TEST(Polygon, NonGenericRejected)
{
    try {
        (void)build_polygon(lengths::parse_lengths("1,1,2,2"), Q);
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::NonGenericLength);
    }
}

TEST(Polygon, DegenerateRejected)
{
    try {
        (void)build_polygon(lengths::parse_lengths("1,1,7,10"), Q);
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateLength);
    }
}

TEST(Polygon, PoincareDualityForExampleVector)
{
    auto p = build_polygon(lengths::parse_lengths("1,1,2,3,5,7"), Q);
    expect_poincare_duality(p.ring);
}

TEST(Polygon, NothingAboveManifoldDimension)
{
    for (auto text : {"1,1,2,3,5,7", "1,2,3,6,7", "1,1,1,2", "2,3,3,4,5"}) {
        auto l = lengths::parse_lengths(text);
        auto p = build_polygon(l, Q, 2 * (l.size() - 3) + 2);
        EXPECT_EQ(p.ring->rank(p.ring->top_degree()), 0) << text;
        EXPECT_EQ(p.ring->rank(2 * (l.size() - 3)), 1) << text;
    }
}

TEST(Polygon, ChernClasses)
{
    auto p = build_polygon(lengths::parse_lengths("1,1,1,2"), Q);
    auto R = p.ring->generator_element(0);
    EXPECT_EQ(chern_class(p, 4), -R);
    EXPECT_EQ(chern_class(p, 1), R + scale(2, p.ring->generator_element(1)));
    try {
        (void)chern_class(p, 5);
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
    }
}

TEST(Polygon, SymplecticClassOfSurfaceIsNonzero)
{
    auto p = build_polygon(lengths::parse_lengths("1,1,1,2"), Q);
    EXPECT_FALSE(symplectic_class(p).is_zero());
}

TEST(Polygon, InclusionHomSendsChernClasses)
{
    auto l = lengths::parse_lengths("1,1,2,3,5,7");
    lengths::OrderedSetPartition part{6, {{0}, {2}, {3}, {1, 4}, {5}}};
    auto ident = lengths::edge_identify(l, part);
    auto src = build_polygon(l, Q);
    auto tgt = build_polygon(ident.lengths, Q);
    auto h = polygon_inclusion_hom(src, tgt, ident.phi);
    for (int j = 1; j <= 6; ++j)
        EXPECT_EQ(h.apply(chern_class(src, j)), chern_class(tgt, ident.phi[static_cast<std::size_t>(j - 1)] + 1)) << j;
    std::optional<Rational> lambda = Rational{1};
    EXPECT_EQ(h.apply(symplectic_class(src, lambda)), symplectic_class(tgt, lambda));
}

TEST(RingHom, TruncationHomIsValid)
{
    auto a = build_truncated(1, 5, F2, "x");
    auto b = build_truncated(1, 3, F2, "y");
    RingHom h{a, b, {b->generator_element(0)}};
    EXPECT_EQ(h.apply(a->generator_element(0)), b->generator_element(0));
}

TEST(RingHom, RejectsBrokenRelation)
{
    auto a = build_truncated(1, 3, F2, "x");
    auto b = build_truncated(1, 5, F2, "y");
    try {
        RingHom h{a, b, {b->generator_element(0)}};
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::RelationNotPreserved);
    }
}

TEST(RingHom, IdentityActsTrivially)
{
    auto p = build_polygon(lengths::parse_lengths("1,1,2,3,5,7"), Q);
    auto id = RingHom::identity(p.ring);
    std::mt19937_64 rng{7};
    for (int d = 0; d <= p.ring->top_degree(); d += 2) {
        auto e = random_homogeneous(p.ring, d, rng);
        EXPECT_EQ(id.apply(e), e);
    }
}

TEST(Arithmetic, MismatchedRingsRejected)
{
    auto a = build_exterior(2, Q);
    auto b = build_exterior(2, Q);
    try {
        (void)(a->generator_element(0) * b->generator_element(0));
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::RingMismatch);
    }
}
