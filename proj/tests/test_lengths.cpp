#include <tcpair/error.hpp>
#include <tcpair/lengths.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace tcpair;
using namespace tcpair::lengths;

namespace {

auto lv(std::vector<int> v) -> LengthVector
{
    std::vector<Rational> q;
    for (int a : v)
        q.emplace_back(a);
    return LengthVector{q};
}

auto mask(std::initializer_list<int> one_based) -> SubsetMask
{
    SubsetMask s = 0;
    for (int i : one_based)
        s |= SubsetMask{1} << (i - 1);
    return s;
}

/// Compares the two sums of S and its complement term by term.
auto naive_class(const LengthVector & l, SubsetMask s) -> SubsetClass
{
    Rational in = 0, out = 0;
    for (int i = 0; i < l.size(); ++i) {
        if ((s >> i) & 1U)
            in += l[i];
        else
            out += l[i];
    }
    if (in < out)
        return SubsetClass::Short;
    if (in > out)
        return SubsetClass::Long;
    return SubsetClass::Balanced;
}

auto random_vector(std::mt19937_64 & rng, int n) -> LengthVector
{
    std::vector<Rational> q;
    for (int i = 0; i < n; ++i) {
        Rational r{static_cast<long>(1 + rng() % 12), static_cast<long>(1 + rng() % 3)};
        r.canonicalize();
        q.push_back(r);
    }
    return LengthVector{q};
}

auto random_partition(std::mt19937_64 & rng, int n) -> OrderedSetPartition
{
    int m = 3 + static_cast<int>(rng() % static_cast<unsigned>(n - 2));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        order[static_cast<std::size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(m));
    for (int i = 0; i < n; ++i)
        parts[static_cast<std::size_t>(i < m ? i : static_cast<int>(rng() % static_cast<unsigned>(m)))].push_back(order[static_cast<std::size_t>(i)]);
    return OrderedSetPartition{n, parts};
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

}

TEST(Lengths, ParseAndFormat)
{
    auto l = parse_lengths("1, 1/2 ,3");
    EXPECT_EQ(l.size(), 3);
    EXPECT_EQ(l[1], Rational(1, 2));
    EXPECT_EQ(format_lengths(l), "1,1/2,3");
    EXPECT_EQ(l.common_denominator(), 2);
    expect_error(ErrorCode::ParseError, [] { (void) parse_lengths("1,0,2"); });
    expect_error(ErrorCode::ParseError, [] { (void) parse_lengths("1,2"); });
    expect_error(ErrorCode::ParseError, [] { (void) parse_lengths("1,x,2"); });
    expect_error(ErrorCode::ParseError, [] { (void) parse_lengths("1,2/0,2"); });
}

TEST(Lengths, RationalsAreCanonical)
{
    auto q = parse_rational("-6/4");
    EXPECT_EQ(q.get_num(), -3);
    EXPECT_EQ(q.get_den(), 2);
    EXPECT_EQ(to_string(parse_rational("10/5")), "2");
    expect_error(ErrorCode::ParseError, [] { (void) parse_rational("6/-4"); });
}

TEST(Lengths, ClassifyExamples)
{
    auto t = classify_subsets(lv({1, 1, 2, 2}));
    EXPECT_EQ(t.class_of(mask({1, 3})), SubsetClass::Balanced);
    auto u = classify_subsets(lv({1, 1, 1, 2}));
    EXPECT_EQ(u.class_of(mask({4})), SubsetClass::Short);
    EXPECT_EQ(u.class_of(mask({1, 4})), SubsetClass::Long);
    EXPECT_EQ(u.class_of(0), SubsetClass::Short);
    EXPECT_EQ(u.class_of(u.full_mask()), SubsetClass::Long);
}

TEST(Lengths, FamiliesContainTheirIndex)
{
    auto t = classify_subsets(lv({1, 1, 2, 3, 5, 7}));
    for (int i = 0; i < 6; ++i) {
        for (auto s : t.short_containing(i)) {
            EXPECT_TRUE((s >> i) & 1U);
            EXPECT_TRUE(t.is_short(s));
        }
        for (auto s : t.long_containing(i)) {
            EXPECT_TRUE((s >> i) & 1U);
            EXPECT_TRUE(t.is_long(s));
        }
        EXPECT_EQ(t.short_containing(i).size() + t.long_containing(i).size(), 32U);
    }
}

TEST(Lengths, ClassifyMatchesNaiveOracleAndDuality)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 3 + static_cast<int>(rng() % 8);
        auto l = random_vector(rng, n);
        auto t = classify_subsets(l);
        for (SubsetMask s = 0; s <= t.full_mask(); ++s) {
            ASSERT_EQ(t.class_of(s), naive_class(l, s));
            auto c = t.class_of(t.full_mask() ^ s);
            if (t.class_of(s) == SubsetClass::Short)
                ASSERT_EQ(c, SubsetClass::Long);
            if (t.class_of(s) == SubsetClass::Balanced)
                ASSERT_EQ(c, SubsetClass::Balanced);
        }
    }
}

TEST(Lengths, SizeLimit)
{
    std::vector<Rational> q(25, Rational(1));
    expect_error(ErrorCode::SizeTooLarge, [&] { (void) classify_subsets(LengthVector{q}); });
}

TEST(Lengths, Vetting)
{
    auto a = vet(lv({1, 1, 2, 3, 5, 7}));
    EXPECT_TRUE(a.generic);
    EXPECT_TRUE(a.nondegenerate);
    EXPECT_TRUE(a.ordered);
    EXPECT_FALSE(vet(lv({1, 1, 2, 2})).generic);
    EXPECT_FALSE(vet(lv({1, 1, 7, 10})).nondegenerate);
    EXPECT_FALSE(vet(lv({2, 1, 2})).ordered);
}

TEST(Lengths, SortOrdered)
{
    auto s = sort_ordered(lv({2, 1, 1}));
    EXPECT_EQ(s.lengths, lv({1, 1, 2}));
    EXPECT_EQ(s.permutation[0], 2);
    auto id = sort_ordered(lv({4, 7, 8}));
    EXPECT_EQ(id.permutation, (std::vector<int>{0, 1, 2}));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto l = random_vector(rng, 3 + static_cast<int>(rng() % 6));
        auto once = sort_ordered(l);
        auto twice = sort_ordered(once.lengths);
        EXPECT_EQ(once.lengths, twice.lengths);
        EXPECT_TRUE(vet(once.lengths).ordered);
        for (int i = 0; i < l.size(); ++i)
            EXPECT_EQ(once.lengths[once.permutation[static_cast<std::size_t>(i)]], l[i]);
    }
}

TEST(Lengths, EdgeIdentificationExamples)
{
    auto l = lv({1, 1, 2, 3, 5, 7});
    EXPECT_EQ(edge_identify(l, parse_partition("1|3|4|2,5|6", 6)).lengths, lv({1, 2, 3, 6, 7}));
    EXPECT_EQ(edge_identify(l, parse_partition("1|2|4|5|3,6", 6)).lengths, lv({1, 1, 3, 5, 9}));
    auto p3 = edge_identify(l, parse_partition("1,4|6|2,3,5", 6));
    EXPECT_EQ(p3.lengths, lv({4, 7, 8}));
    EXPECT_EQ(p3.phi, (std::vector<int>{0, 2, 2, 0, 2, 1}));
    auto p4 = edge_identify(l, parse_partition("1|2|6|3,4,5", 6));
    EXPECT_EQ(p4.lengths, lv({1, 1, 7, 10}));
    EXPECT_FALSE(p4.nondegenerate);
    EXPECT_TRUE(p4.generic);
}

TEST(Lengths, PartitionErrors)
{
    auto l = lv({1, 1, 2, 3, 5, 7});
    expect_error(ErrorCode::BadPartition, [] { (void) parse_partition("1|2|3", 6); });
    expect_error(ErrorCode::BadPartition, [] { (void) parse_partition("1,2|2|3,4,5,6", 6); });
    expect_error(ErrorCode::BadPartition, [] { (void) parse_partition("1|2|7|3,4,5,6", 6); });
    expect_error(ErrorCode::ParseError, [] { (void) parse_partition("1|a|3,4,5,6", 6); });
    expect_error(ErrorCode::TooFewParts, [&] { (void) edge_identify(l, parse_partition("1,2,3|4,5,6", 6)); });
    expect_error(ErrorCode::BadPartition, [&] { (void) edge_identify(l, parse_partition("1|2|3", 3)); });
}

TEST(Lengths, PartitionRoundTrip)
{
    auto p = parse_partition("1,4|6|2,3,5", 6);
    EXPECT_EQ(format_partition(p), "1,4|6|2,3,5");
    EXPECT_EQ(p.mask(0), mask({1, 4}));
}

TEST(Lengths, GenericityPreservedUnderIdentification)
{
    std::mt19937_64 rng(2024);
    int cases = 0;
    while (cases < 200) {
        int n = 4 + static_cast<int>(rng() % 7);
        auto l = random_vector(rng, n);
        if (! vet(l).generic)
            continue;
        auto p = random_partition(rng, n);
        auto e = edge_identify(l, p);
        EXPECT_TRUE(e.generic);
        EXPECT_TRUE(vet(e.lengths).generic);
        Rational total = 0;
        for (auto & x : e.lengths.entries())
            total += x;
        EXPECT_EQ(total, l.total());
        ++cases;
    }
}
