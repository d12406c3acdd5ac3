#include <tcpair/bounds.hpp>
#include <tcpair/error.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace tcpair;
using namespace tcpair::bounds;

namespace {

auto lv(std::vector<int> v) -> lengths::LengthVector
{
    std::vector<Rational> q;
    for (int a : v)
        q.emplace_back(a);
    return lengths::LengthVector{q};
}

auto ell() -> lengths::LengthVector
{
    return lv({1, 1, 2, 3, 5, 7});
}

template <class F>
void expect_error(ErrorCode code, F && f)
{
    try {
        f();
        FAIL() << "expected " << error_code_name(code);
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

void expect_exact(const BoundReport & r, int value)
{
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.lower, value);
    ASSERT_TRUE(r.upper.has_value());
    EXPECT_EQ(*r.upper, value);
}

auto has_rule(const BoundReport & r, const std::string & rule) -> bool
{
    for (auto & s : r.steps)
        if (s.rule == rule)
            return true;
    return false;
}

}

TEST(Bounds, DimConnUpper)
{
    EXPECT_EQ(upper_from_dim_conn(SpaceFacts{4, 0}, 2), 7);
    for (int n = 1; n <= 6; ++n)
        for (int m = 0; m <= n; ++m)
            EXPECT_EQ(upper_from_dim_conn(SpaceFacts{2 * n, 1}, 2 * m), n + m + 1);
    EXPECT_EQ(upper_from_dim_conn(SpaceFacts{6, 1}, 4), 6);
    // N/d integral: (3+0+1)/2 + 1 = 3 is excluded.
    EXPECT_EQ(upper_from_dim_conn(SpaceFacts{3, 1}, 0), 2);
}

TEST(Bounds, ChainRules)
{
    PairFacts contractible{SpaceFacts{3, 0, true}, SpaceFacts{0, 0, true}, true};
    expect_exact(chain_rules(contractible), 1);

    PairFacts s4{SpaceFacts{4, 3, false, 2, 3}, SpaceFacts{2, 0}, false};
    auto r = chain_rules(s4);
    EXPECT_EQ(r.lower, 2);
    EXPECT_EQ(r.upper, 3);
    EXPECT_FALSE(r.exact);

    PairFacts group{SpaceFacts{3, 0, false, 4, std::nullopt, true}, SpaceFacts{1, 0}, false};
    expect_exact(chain_rules(group), 4);

    PairFacts null{SpaceFacts{4, 3, false, 2}, SpaceFacts{2, 1}, true};
    expect_exact(chain_rules(null), 2);

    expect_error(ErrorCode::InconsistentFacts, [] { (void) chain_rules(PairFacts{SpaceFacts{4, 3, false, 5, 3}, SpaceFacts{}, false}); });
    expect_error(ErrorCode::InconsistentFacts, [] { (void) chain_rules(PairFacts{SpaceFacts{4, 3, true, 2}, SpaceFacts{}, false}); });
}

TEST(Bounds, TcOfYIsNeverALowerBound)
{
    PairFacts f{SpaceFacts{4, 3, false, 2, 3}, SpaceFacts{2, 0, false, 3, 4}, false};
    auto r = chain_rules(f);
    EXPECT_EQ(r.lower, 2);
}

TEST(Bounds, SpherePairs)
{
    expect_exact(catalog_sphere_pair(4, 2), 2);
    expect_exact(catalog_sphere_pair(2, 1), 2);
    expect_exact(catalog_sphere_pair(5, 3), 2);
    expect_error(ErrorCode::PreconditionFailed, [] { (void) catalog_sphere_pair(3, 3); });
    expect_error(ErrorCode::PreconditionFailed, [] { (void) catalog_sphere_pair(3, 0); });
}

TEST(Bounds, Tori)
{
    for (int n = 1; n <= 5; ++n) {
        auto r = catalog_torus(n);
        expect_exact(r, n + 1);
        ASSERT_EQ(r.certificates.size(), 1U);
        EXPECT_EQ(r.certificates[0].k, n);
    }
    expect_error(ErrorCode::PreconditionFailed, [] { (void) catalog_torus(0); });
}

TEST(Bounds, Wedges)
{
    expect_exact(catalog_wedge({2, 2, 3}, 2), 3);
    expect_exact(catalog_wedge({2, 2, 3}, 0), 2);
    auto r = catalog_wedge({2, 2, 3}, 1);
    EXPECT_FALSE(r.exact);
    EXPECT_EQ(r.upper, 3);
    EXPECT_EQ(r.lower, 3);
    EXPECT_TRUE(has_rule(r, "range"));
    expect_error(ErrorCode::PreconditionFailed, [] { (void) catalog_wedge({2}, 0); });
    expect_error(ErrorCode::PreconditionFailed, [] { (void) catalog_wedge({2, 3}, 2); });
}

TEST(Bounds, WedgeCertificateIsNegatedMixedClass)
{
    auto r = catalog_wedge({1, 3, 2, 2}, 3);
    ASSERT_EQ(r.certificates.size(), 1U);
    auto & c = r.certificates[0];
    EXPECT_EQ(c.k, 2);
    EXPECT_TRUE(cuplength::verify_certificate(c));
    auto t = c.product.ring();
    auto expected = -rings::tensor_element(t, t->left()->generator_element(3), t->right()->generator_element(0));
    EXPECT_TRUE(c.product == expected);
}

TEST(Bounds, ComplexProjectivePairs)
{
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= n; ++m) {
            auto r = catalog_cp_pair(n, m);
            expect_exact(r, n + m + 1);
            auto s = catalog_cp_pair(m, n);
            EXPECT_EQ(to_json(r).dump(), to_json(s).dump());
        }
    auto r = catalog_cp_pair(2, 1);
    ASSERT_EQ(r.certificates.size(), 1U);
    EXPECT_EQ(*r.certificates[0].coefficient, Rational(-3));
}

TEST(Bounds, PolygonSingleSpace)
{
    auto r = catalog_polygon(ell());
    expect_exact(r, 7);
    ASSERT_EQ(r.certificates.size(), 1U);
    EXPECT_EQ(r.certificates[0].k, 6);
    EXPECT_TRUE(has_rule(r, "pullback"));
    EXPECT_TRUE(has_rule(r, "dimension and connectivity"));
}

TEST(Bounds, PolygonPairs)
{
    auto l = ell();
    expect_exact(catalog_polygon(l, lengths::parse_partition("1|3|4|2,5|6", 6)), 6);
    expect_exact(catalog_polygon(l, lengths::parse_partition("1|2|4|5|3,6", 6)), 6);
    expect_exact(catalog_polygon(l, lengths::parse_partition("1,4|6|2,3,5", 6)), 4);
    expect_error(ErrorCode::DegenerateLength, [&] { (void) catalog_polygon(l, lengths::parse_partition("1|2|6|3,4,5", 6)); });
}

TEST(Bounds, PolygonNestedIdentificationsAreMonotone)
{
    auto l = ell();
    // Each partition coarsens the one before.
    std::vector<std::string> chain{"1|2|3|4|5|6", "1|3|4|2,5|6", "1|3,4|2,5|6", "1,3,4|2,5|6"};
    int previous = 1 << 20;
    for (auto & p : chain) {
        auto part = lengths::parse_partition(p, 6);
        auto ident = lengths::edge_identify(l, part);
        if (! ident.nondegenerate)
            continue;
        auto r = catalog_polygon(l, part);
        ASSERT_TRUE(r.exact);
        EXPECT_LE(r.lower, previous) << p;
        previous = r.lower;
    }
}

TEST(Bounds, PolygonValueMatchesBothBoundsOnRandomVectors)
{
    std::mt19937_64 rng(7);
    int checked = 0;
    for (int attempt = 0; attempt < 400 && checked < 12; ++attempt) {
        int n = 4 + static_cast<int>(rng() % 5);
        std::vector<int> v;
        for (int i = 0; i < n; ++i)
            v.push_back(1 + static_cast<int>(rng() % 9));
        auto l = lv(v);
        auto vet = lengths::vet(l);
        if (! vet.generic || ! vet.nondegenerate)
            continue;
        auto r = catalog_polygon(l);
        int dimconn = upper_from_dim_conn(SpaceFacts{2 * (n - 3), 1}, 2 * (n - 3));
        expect_exact(r, 2 * n - 5);
        EXPECT_EQ(r.lower, dimconn);
        EXPECT_EQ(r.certificates.at(0).bound(), dimconn);
        ++checked;
    }
    EXPECT_GE(checked, 8);
}

TEST(Bounds, CatalogValuesLieInComputedWindow)
{
    // window [cup-length + 1, dim-conn bound] recomputed from facts
    for (int n = 1; n <= 4; ++n) {
        auto r = catalog_torus(n);
        int lo = r.certificates[0].bound();
        int hi = upper_from_dim_conn(SpaceFacts{n, 0}, 0);
        EXPECT_LE(lo, r.lower);
        EXPECT_LE(*r.upper, hi);
    }
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 1}, {4, 2}, {5, 3}}) {
        auto r = catalog_sphere_pair(n, m);
        EXPECT_LE(r.certificates[0].bound(), r.lower);
        EXPECT_LE(*r.upper, upper_from_dim_conn(SpaceFacts{n, n - 1}, m));
    }
    auto w = catalog_wedge({2, 2, 3}, 2);
    EXPECT_LE(w.certificates[0].bound(), w.lower);
    EXPECT_LE(*w.upper, upper_from_dim_conn(SpaceFacts{3, 1}, 2));
}

TEST(Bounds, RealProjectiveDeskCase)
{
    auto r = rp_pair_bounds(3, 2, {planners::build_quaternion_map(3, 2)}, PlannerCheck{2000, 1e-3, 0});
    expect_exact(r, 4);
    ASSERT_TRUE(r.verification.has_value());
    EXPECT_EQ(r.verification->cover_failures, 0);
    bool labelled = false;
    for (auto & s : r.steps)
        labelled = labelled || s.value == "artifact-derived";
    EXPECT_TRUE(labelled);
    bool cited = false;
    for (auto & s : r.steps)
        cited = cited || s.cite.find("it is well-known that cat(ℝPⁿ) = n+1") != std::string::npos;
    EXPECT_TRUE(cited);
}

TEST(Bounds, RealProjectivePolymulOnly)
{
    for (auto [n, m] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {6, 4}}) {
        auto r = rp_pair_bounds(n, m, {});
        EXPECT_EQ(r.upper, n + m + 1);
        EXPECT_GE(r.lower, n + 1);
    }
    expect_error(ErrorCode::PreconditionFailed, [] { (void) rp_pair_bounds(5, 1, {}); });
    expect_error(ErrorCode::PreconditionFailed, [] { (void) rp_pair_bounds(3, 3, {}); });
}

TEST(Bounds, ReportJsonShape)
{
    auto j = to_json(catalog_wedge({2, 2, 3}, 1));
    std::vector<std::string> keys;
    for (auto & [k, v] : j.items())
        keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"lower", "upper", "exact", "steps"}));
    for (auto & s : j["steps"]) {
        std::vector<std::string> sk;
        for (auto & [k, v] : s.items())
            sk.push_back(k);
        EXPECT_EQ(sk, (std::vector<std::string>{"rule", "cite", "value"}));
    }
    BoundReport open;
    EXPECT_TRUE(to_json(open)["upper"].is_null());
}
