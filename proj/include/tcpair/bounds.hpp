#pragma once

#include <tcpair/cuplength.hpp>
#include <tcpair/lengths.hpp>
#include <tcpair/planners.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tcpair::bounds {

using Json = nlohmann::ordered_json;

struct SpaceFacts
{
    int dim = 0;
    /// π_j vanishes for j ≤ connectivity.
    int connectivity = 0;
    bool contractible = false;
    std::optional<int> known_cat;
    std::optional<int> known_tc;
    bool topological_group = false;
};

struct PairFacts
{
    SpaceFacts x;
    SpaceFacts y;
    /// The inclusion Y ⊆ X is null-homotopic.
    bool y_contractible_in_x = false;
};

struct Step
{
    std::string rule;
    std::string cite;
    std::string value;
};

struct BoundReport
{
    int lower = 1;
    std::optional<int> upper;
    bool exact = false;
    std::vector<Step> steps;
    std::vector<cuplength::CupLengthCertificate> certificates;
    std::optional<planners::VerificationReport> verification;

    void raise_lower(int value, Step step);
    void cap_upper(int value, Step step);
    void note(Step step);
    /// exact := lower = upper; InconsistentFacts when lower > upper.
    void settle();
};

auto to_json(const BoundReport & r) -> Json;

/// Largest integer strictly below (dim X + dim Y + 1)/(s + 1) + 1.
auto upper_from_dim_conn(const SpaceFacts & x, int dim_y) -> int;

/// General inequalities that only need facts about X (and Y ⊆ X). TC(Y) is
/// never used as a lower bound.
auto chain_rules(const PairFacts & facts) -> BoundReport;

auto catalog_sphere_pair(int n, int m) -> BoundReport;
auto catalog_torus(int n) -> BoundReport;
/// m = 0 means Y is the wedge point; otherwise Y is the wedge of the first m spheres.
auto catalog_wedge(const std::vector<int> & dims, int m) -> BoundReport;
auto catalog_cp_pair(int n, int m) -> BoundReport;
auto catalog_polygon(const lengths::LengthVector & l, const std::optional<lengths::OrderedSetPartition> & partition = std::nullopt) -> BoundReport;

struct PlannerCheck
{
    int samples = 10000;
    double delta = 1e-3;
    std::uint64_t seed = 0;
};

/// Lower bound from the F2 cup-length search and cat(ℝPⁿ); upper bound from
/// the best non-singular map among the witnesses and polynomial multiplication.
auto rp_pair_bounds(int n, int m, const std::vector<planners::BilinearMap> & witnesses, std::optional<PlannerCheck> check = std::nullopt) -> BoundReport;

}
