#include <tcpair/error.hpp>
#include <tcpair/lengths.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace tcpair::lengths {

LengthVector::LengthVector(std::vector<Rational> entries) :
    _entries(std::move(entries))
{
    if (_entries.size() < 3)
        fail(ErrorCode::PreconditionFailed, "a length vector needs at least 3 entries");
    for (auto & e : _entries) {
        e.canonicalize();
        if (sgn(e) <= 0)
            fail(ErrorCode::PreconditionFailed, "length entries must be positive, got " + to_string(e));
    }
}

auto LengthVector::total() const -> Rational
{
    return std::accumulate(_entries.begin(), _entries.end(), Rational{0});
}

auto LengthVector::common_denominator() const -> Integer
{
    Integer d = 1;
    for (auto & e : _entries)
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.get_den_mpz_t());
    return d;
}

auto parse_lengths(std::string_view text) -> LengthVector
{
    std::vector<Rational> entries;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        entries.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    for (auto & e : entries)
        if (sgn(e) <= 0)
            fail(ErrorCode::ParseError, "length entries must be positive, got " + to_string(e));
    if (entries.size() < 3)
        fail(ErrorCode::ParseError, "a length vector needs at least 3 entries");
    return LengthVector{std::move(entries)};
}

auto format_lengths(const LengthVector & l) -> std::string
{
    std::string out;
    for (int i = 0; i < l.size(); ++i) {
        if (i)
            out += ',';
        out += to_string(l[i]);
    }
    return out;
}

ShortLongTable::ShortLongTable(int n, std::vector<SubsetClass> classes) :
    _n(n),
    _classes(std::move(classes))
{
    _balanced = static_cast<std::size_t>(std::count(_classes.begin(), _classes.end(), SubsetClass::Balanced));
}

auto ShortLongTable::short_containing(int i) const -> std::vector<SubsetMask>
{
    std::vector<SubsetMask> out;
    for (SubsetMask s = 0; s <= full_mask(); ++s)
        if ((s >> i & 1U) && is_short(s))
            out.push_back(s);
    return out;
}

auto ShortLongTable::long_containing(int i) const -> std::vector<SubsetMask>
{
    std::vector<SubsetMask> out;
    for (SubsetMask s = 0; s <= full_mask(); ++s)
        if ((s >> i & 1U) && is_long(s))
            out.push_back(s);
    return out;
}

auto ShortLongTable::long_subsets() const -> std::vector<SubsetMask>
{
    std::vector<SubsetMask> out;
    for (SubsetMask s = 0; s <= full_mask(); ++s)
        if (is_long(s))
            out.push_back(s);
    return out;
}

namespace {
    // Subset sums split into low and high halves so that each mask costs one
    // addition. Doubled sums are compared against the total.
    template <typename Int>
    auto classify_with(const std::vector<Int> & w, int n) -> std::vector<SubsetClass>
    {
        int low_bits = n / 2;
        int high_bits = n - low_bits;
        std::vector<Int> low(std::size_t{1} << low_bits, Int(0)), high(std::size_t{1} << high_bits, Int(0));
        for (std::size_t s = 1; s < low.size(); ++s) {
            int b = std::countr_zero(s);
            low[s] = low[s & (s - 1)] + w[static_cast<std::size_t>(b)];
        }
        for (std::size_t s = 1; s < high.size(); ++s) {
            int b = std::countr_zero(s);
            high[s] = high[s & (s - 1)] + w[static_cast<std::size_t>(b + low_bits)];
        }
        Int total = low.back() + high.back();

        std::vector<SubsetClass> classes(std::size_t{1} << n);
        SubsetMask low_mask = (SubsetMask{1} << low_bits) - 1;
        for (std::size_t s = 0; s < classes.size(); ++s) {
            Int twice = low[s & low_mask] + high[s >> low_bits];
            twice += twice;
            classes[s] = twice < total ? SubsetClass::Short : (twice > total ? SubsetClass::Long : SubsetClass::Balanced);
        }
        return classes;
    }
}

auto classify_subsets(const LengthVector & l) -> ShortLongTable
{
    int n = l.size();
    if (n > max_enumeration_size)
        fail(ErrorCode::SizeTooLarge, "subset enumeration is limited to n <= 24, got n = " + std::to_string(n));

    Integer scale = l.common_denominator();
    std::vector<Integer> w;
    w.reserve(static_cast<std::size_t>(n));
    Integer total = 0;
    for (auto & e : l.entries()) {
        Integer v = e.get_num() * (scale / e.get_den());
        total += v;
        w.push_back(v);
    }

    // 2·total must fit comfortably in 63 bits for the fast path.
    if (mpz_sizeinbase(total.get_mpz_t(), 2) < 60) {
        std::vector<std::int64_t> small;
        for (auto & v : w)
            small.push_back(v.get_si());
        return ShortLongTable{n, classify_with(small, n)};
    }
    return ShortLongTable{n, classify_with(w, n)};
}

auto vet(const LengthVector & l) -> Vetting
{
    auto table = classify_subsets(l);
    Vetting v{};
    v.generic = table.balanced_count() == 0;
    v.nondegenerate = true;
    for (int i = 0; i < l.size(); ++i)
        if (! table.is_short(SubsetMask{1} << i))
            v.nondegenerate = false;
    v.ordered = std::is_sorted(l.entries().begin(), l.entries().end());
    return v;
}

auto sort_ordered(const LengthVector & l) -> SortedLengths
{
    std::vector<int> order(static_cast<std::size_t>(l.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return l[a] < l[b]; });

    std::vector<Rational> sorted;
    std::vector<int> permutation(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        sorted.push_back(l[order[pos]]);
        permutation[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
    }
    return SortedLengths{LengthVector{std::move(sorted)}, std::move(permutation)};
}

OrderedSetPartition::OrderedSetPartition(int n, std::vector<std::vector<int>> parts) :
    _n(n),
    _parts(std::move(parts)),
    _phi(static_cast<std::size_t>(n), -1)
{
    if (n < 1 || n > max_enumeration_size)
        fail(ErrorCode::BadPartition, "ground set size out of range");
    for (std::size_t j = 0; j < _parts.size(); ++j) {
        if (_parts[j].empty())
            fail(ErrorCode::BadPartition, "part " + std::to_string(j + 1) + " is empty");
        for (int i : _parts[j]) {
            if (i < 0 || i >= n)
                fail(ErrorCode::BadPartition, "index " + std::to_string(i + 1) + " is outside [" + std::to_string(n) + "]");
            if (_phi[static_cast<std::size_t>(i)] != -1)
                fail(ErrorCode::BadPartition, "index " + std::to_string(i + 1) + " appears in more than one part");
            _phi[static_cast<std::size_t>(i)] = static_cast<int>(j);
        }
    }
    for (int i = 0; i < n; ++i)
        if (_phi[static_cast<std::size_t>(i)] == -1)
            fail(ErrorCode::BadPartition, "index " + std::to_string(i + 1) + " is not covered by any part");
}

auto OrderedSetPartition::mask(int j) const -> SubsetMask
{
    SubsetMask m = 0;
    for (int i : _parts.at(static_cast<std::size_t>(j)))
        m |= SubsetMask{1} << i;
    return m;
}

auto parse_partition(std::string_view text, int n) -> OrderedSetPartition
{
    std::vector<std::vector<int>> parts;
    std::size_t start = 0;
    while (true) {
        auto bar = text.find('|', start);
        auto group = text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
        std::vector<int> part;
        std::size_t gstart = 0;
        while (true) {
            auto comma = group.find(',', gstart);
            auto token = group.substr(gstart, comma == std::string_view::npos ? std::string_view::npos : comma - gstart);
            auto q = parse_rational(token);
            if (q.get_den() != 1 || q < 1)
                fail(ErrorCode::ParseError, "partition indices must be positive integers, got '" + std::string(token) + "'");
            part.push_back(static_cast<int>(q.get_num().get_si()) - 1);
            if (comma == std::string_view::npos)
                break;
            gstart = comma + 1;
        }
        parts.push_back(std::move(part));
        if (bar == std::string_view::npos)
            break;
        start = bar + 1;
    }
    return OrderedSetPartition{n, std::move(parts)};
}

auto format_partition(const OrderedSetPartition & p) -> std::string
{
    std::string out;
    for (std::size_t j = 0; j < p.parts().size(); ++j) {
        if (j)
            out += '|';
        for (std::size_t k = 0; k < p.parts()[j].size(); ++k) {
            if (k)
                out += ',';
            out += std::to_string(p.parts()[j][k] + 1);
        }
    }
    return out;
}

auto edge_identify(const LengthVector & l, const OrderedSetPartition & p) -> EdgeIdentified
{
    if (p.ground_size() != l.size())
        fail(ErrorCode::BadPartition, "partition covers [" + std::to_string(p.ground_size()) + "] but the length vector has size " + std::to_string(l.size()));
    if (p.part_count() < 3)
        fail(ErrorCode::TooFewParts, "edge identification needs at least 3 parts, got " + std::to_string(p.part_count()));

    std::vector<Rational> merged;
    for (auto & part : p.parts()) {
        Rational sum = 0;
        for (int i : part)
            sum += l[i];
        merged.push_back(sum);
    }
    LengthVector identified{std::move(merged)};
    auto flags = vet(identified);

    // Every subset sum of the identified vector is a subset sum of l.
    if (flags.generic == false && vet(l).generic)
        fail(ErrorCode::VerificationFailed, "edge identification of a generic length vector produced a balanced subset");

    return EdgeIdentified{std::move(identified), p.phi(), flags.generic, flags.nondegenerate};
}

}
