#include "property_checks.hpp"

#include <tcpair/bounds.hpp>

#include <gtest/gtest.h>

using namespace tcpair;

TEST(Properties, RingFamiliesReduceAndCommute)
{
    std::uint64_t seed = 1;
    for (auto & f : checks::ring_families()) {
        auto t = checks::ring_properties(f.ring, 1000, seed++);
        EXPECT_EQ(t.pairs, 1000) << f.name;
        EXPECT_EQ(t.reduce_failures, 0) << f.name;
        EXPECT_EQ(t.commutativity_failures, 0) << f.name;
        EXPECT_EQ(t.reference_failures, 0) << f.name;
    }
}

TEST(Properties, AssociativityOnRandomTriples)
{
    std::mt19937_64 rng(5);
    for (auto & f : checks::ring_families()) {
        for (int i = 0; i < 100; ++i) {
            auto a = checks::random_homogeneous(f.ring, checks::random_degree(f.ring, rng), rng);
            auto b = checks::random_homogeneous(f.ring, checks::random_degree(f.ring, rng), rng);
            auto c = checks::random_homogeneous(f.ring, checks::random_degree(f.ring, rng), rng);
            ASSERT_TRUE((a * b) * c == a * (b * c)) << f.name;
            ASSERT_TRUE(a * (b + c) == a * b + a * c) << f.name;
        }
    }
}

TEST(Properties, GenericityPreservedUnderIdentification)
{
    EXPECT_EQ(checks::genericity_failures(200, 99), 0);
}

TEST(Properties, EveryEmittedCertificateReverifies)
{
    std::vector<bounds::BoundReport> reports{
        bounds::catalog_sphere_pair(4, 2),
        bounds::catalog_torus(4),
        bounds::catalog_wedge({2, 2, 3}, 2),
        bounds::catalog_wedge({1, 2, 3}, 1),
        bounds::catalog_wedge({2, 2, 3}, 0),
        bounds::catalog_cp_pair(3, 2),
        bounds::catalog_polygon(lengths::parse_lengths("1,1,2,3,5,7"), lengths::parse_partition("1|3|4|2,5|6", 6)),
        bounds::rp_pair_bounds(5, 3, {}),
    };
    int checked = 0;
    for (auto & r : reports)
        for (auto & c : r.certificates) {
            EXPECT_TRUE(cuplength::verify_certificate(c));
            EXPECT_FALSE(c.product.is_zero());
            ++checked;
        }
    EXPECT_EQ(checked, static_cast<int>(reports.size()));
}
