#pragma once

#include <tcpair/rational.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tcpair::lengths {

inline constexpr int max_enumeration_size = 24;

/// Edge lengths of a closed polygon. Entries are strictly positive; indices
/// are 0-based internally and printed 1-based.
class LengthVector
{
public:
    explicit LengthVector(std::vector<Rational> entries);

    [[nodiscard]] auto size() const noexcept -> int { return static_cast<int>(_entries.size()); }
    [[nodiscard]] auto operator[](int i) const -> const Rational & { return _entries.at(static_cast<std::size_t>(i)); }
    [[nodiscard]] auto entries() const noexcept -> std::span<const Rational> { return _entries; }
    [[nodiscard]] auto total() const -> Rational;

    /// Least positive integer λ with λ·ℓ ∈ ℤⁿ.
    [[nodiscard]] auto common_denominator() const -> Integer;

    auto operator==(const LengthVector &) const -> bool = default;

private:
    std::vector<Rational> _entries;
};

auto parse_lengths(std::string_view text) -> LengthVector;
auto format_lengths(const LengthVector & l) -> std::string;

/// Bit i set means index i (0-based) belongs to the subset.
using SubsetMask = std::uint32_t;

enum class SubsetClass : std::uint8_t
{
    Short,
    Long,
    Balanced
};

class ShortLongTable
{
public:
    ShortLongTable(int n, std::vector<SubsetClass> classes);

    [[nodiscard]] auto size() const noexcept -> int { return _n; }
    [[nodiscard]] auto full_mask() const noexcept -> SubsetMask { return (SubsetMask{1} << _n) - 1; }
    [[nodiscard]] auto class_of(SubsetMask s) const -> SubsetClass { return _classes.at(s); }
    [[nodiscard]] auto is_short(SubsetMask s) const -> bool { return class_of(s) == SubsetClass::Short; }
    [[nodiscard]] auto is_long(SubsetMask s) const -> bool { return class_of(s) == SubsetClass::Long; }
    [[nodiscard]] auto balanced_count() const noexcept -> std::size_t { return _balanced; }

    /// The family of short subsets containing index i.
    [[nodiscard]] auto short_containing(int i) const -> std::vector<SubsetMask>;
    /// The family of long subsets containing index i.
    [[nodiscard]] auto long_containing(int i) const -> std::vector<SubsetMask>;
    [[nodiscard]] auto long_subsets() const -> std::vector<SubsetMask>;

private:
    int _n;
    std::vector<SubsetClass> _classes;
    std::size_t _balanced = 0;
};

auto classify_subsets(const LengthVector & l) -> ShortLongTable;

struct Vetting
{
    bool generic;
    bool nondegenerate;
    bool ordered;
};

auto vet(const LengthVector & l) -> Vetting;

struct SortedLengths
{
    LengthVector lengths;
    /// permutation[i] is the sorted position of original index i.
    std::vector<int> permutation;
};

auto sort_ordered(const LengthVector & l) -> SortedLengths;

/// Ordered set partition of {0,…,n-1}; phi[i] = j iff i lies in part j.
class OrderedSetPartition
{
public:
    OrderedSetPartition(int n, std::vector<std::vector<int>> parts);

    [[nodiscard]] auto ground_size() const noexcept -> int { return _n; }
    [[nodiscard]] auto part_count() const noexcept -> int { return static_cast<int>(_parts.size()); }
    [[nodiscard]] auto parts() const noexcept -> const std::vector<std::vector<int>> & { return _parts; }
    [[nodiscard]] auto mask(int j) const -> SubsetMask;
    [[nodiscard]] auto phi() const noexcept -> const std::vector<int> & { return _phi; }

private:
    int _n;
    std::vector<std::vector<int>> _parts;
    std::vector<int> _phi;
};

/// Parses "1|3|4|2,5|6" (1-based indices) into a partition of [n].
auto parse_partition(std::string_view text, int n) -> OrderedSetPartition;
auto format_partition(const OrderedSetPartition & p) -> std::string;

struct EdgeIdentified
{
    LengthVector lengths;
    std::vector<int> phi;
    bool generic;
    bool nondegenerate;
};

auto edge_identify(const LengthVector & l, const OrderedSetPartition & p) -> EdgeIdentified;

}
