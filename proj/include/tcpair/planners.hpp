#pragma once

#include <tcpair/rational.hpp>

#include <json.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace tcpair::planners {

using Vec = std::vector<double>;
using Json = nlohmann::ordered_json;

inline constexpr int samples_per_segment = 64;
inline constexpr double unit_tolerance = 1e-9;
inline constexpr double endpoint_tolerance = 1e-6;

/// A query (x, y): plan a path starting at x and ending at y.
struct Query
{
    Vec x;
    Vec y;
};

struct PathSample
{
    int rule = 0;
    std::vector<double> t;
    std::vector<Vec> points;
    /// Largest | |p| − 1 | seen before renormalizing a sample.
    double max_violation = 0;
};

/// An open cover of X × Y with a continuous section over each piece.
class Planner
{
public:
    virtual ~Planner() = default;

    [[nodiscard]] virtual auto name() const -> std::string = 0;
    [[nodiscard]] virtual auto rule_count() const -> int = 0;
    /// Throws when the query lies outside X × Y.
    virtual void validate(const Query & q) const = 0;
    /// One value per rule (index 0 is rule 1). Rule i applies exactly when
    /// its value is positive, and every query within half that value applies too.
    [[nodiscard]] virtual auto margins(const Query & q) const -> std::vector<double> = 0;
    /// Rule used for q, 1-based. Largest margin wins; lower index on ties.
    [[nodiscard]] virtual auto dispatch(const Query & q) const -> int;
    [[nodiscard]] virtual auto plan(const Query & q) const -> PathSample = 0;

    [[nodiscard]] virtual auto sample(std::mt19937_64 & rng) const -> Query = 0;
    /// Moves both points by exactly delta in the planner's metric.
    [[nodiscard]] virtual auto perturb(const Query & q, double delta, std::mt19937_64 & rng) const -> Query = 0;
    [[nodiscard]] virtual auto distance(const Vec & a, const Vec & b) const -> double = 0;
    [[nodiscard]] virtual auto query_distance(const Query & a, const Query & b) const -> double;
    /// Boundary and base-point queries checked before random ones.
    [[nodiscard]] virtual auto special_queries() const -> std::vector<Query> { return {}; }

    [[nodiscard]] virtual auto point_json(const Vec & p) const -> Json;
};

auto to_json(const PathSample & path, const Planner & planner) -> Json;

/// Two rules for S^n relative to the standard S^m, 0 < m < n.
class SpherePairPlanner final : public Planner
{
public:
    SpherePairPlanner(int n, int m, double epsilon = 0.5);

    [[nodiscard]] auto name() const -> std::string override { return "sphere-pair"; }
    [[nodiscard]] auto rule_count() const -> int override { return 2; }
    void validate(const Query & q) const override;
    [[nodiscard]] auto margins(const Query & q) const -> std::vector<double> override;
    [[nodiscard]] auto plan(const Query & q) const -> PathSample override;
    [[nodiscard]] auto sample(std::mt19937_64 & rng) const -> Query override;
    [[nodiscard]] auto perturb(const Query & q, double delta, std::mt19937_64 & rng) const -> Query override;
    [[nodiscard]] auto distance(const Vec & a, const Vec & b) const -> double override;
    [[nodiscard]] auto special_queries() const -> std::vector<Query> override;

private:
    int _n, _m;
    double _epsilon;
};

/// Three rules for a wedge of spheres relative to the sub-wedge of its first m spheres.
///
/// A point of the wedge is stored in the product of its spheres: the block
/// of sphere i holds the point and every other block holds the base point
/// e1. The wedge point x0 has every block equal to e1.
class WedgePairPlanner final : public Planner
{
public:
    WedgePairPlanner(std::vector<int> dims, int m);

    [[nodiscard]] auto name() const -> std::string override { return "wedge-pair"; }
    [[nodiscard]] auto rule_count() const -> int override { return 3; }
    void validate(const Query & q) const override;
    [[nodiscard]] auto margins(const Query & q) const -> std::vector<double> override;
    [[nodiscard]] auto plan(const Query & q) const -> PathSample override;
    [[nodiscard]] auto sample(std::mt19937_64 & rng) const -> Query override;
    [[nodiscard]] auto perturb(const Query & q, double delta, std::mt19937_64 & rng) const -> Query override;
    [[nodiscard]] auto distance(const Vec & a, const Vec & b) const -> double override;
    [[nodiscard]] auto special_queries() const -> std::vector<Query> override;
    [[nodiscard]] auto point_json(const Vec & p) const -> Json override;

    /// Embeds a point given by a 1-based sphere index (0 for x0) and coordinates on that sphere.
    [[nodiscard]] auto embed(int sphere, const Vec & coords) const -> Vec;
    /// Inverse of embed; returns sphere 0 for x0.
    [[nodiscard]] auto locate(const Vec & p) const -> std::pair<int, Vec>;
    [[nodiscard]] auto wedge_point() const -> Vec;
    [[nodiscard]] auto antipode(int sphere) const -> Vec;
    [[nodiscard]] auto dims() const noexcept -> const std::vector<int> & { return _dims; }
    [[nodiscard]] auto subwedge_size() const noexcept -> int { return _m; }

private:
    /// First coordinate of the point on its own sphere; 1 at x0.
    [[nodiscard]] auto height(const Vec & p) const -> double;

    std::vector<int> _dims;
    std::vector<std::size_t> _offsets;
    std::size_t _ambient;
    int _m;
};

/// Exact bilinear map ℝ^p × ℝ^q → ℝ^k with f(x,y)_r = Σ c[i][j][r] x_i y_j.
struct BilinearMap
{
    int p = 0, q = 0, k = 0;
    std::vector<Rational> c;
    bool certified_nonsingular = false;
    std::string origin;

    [[nodiscard]] auto coeff(int i, int j, int r) const -> const Rational &;
    [[nodiscard]] auto apply(const Vec & x, const Vec & y) const -> Vec;
    [[nodiscard]] auto apply_exact(const std::vector<Rational> & x, const std::vector<Rational> & y) const -> std::vector<Rational>;
    /// Post-composition with a k' × k matrix.
    [[nodiscard]] auto compose(const std::vector<std::vector<Rational>> & a) const -> BilinearMap;
    [[nodiscard]] auto is_zero() const -> bool;
};

/// Polynomial multiplication of coefficient vectors, ℝ^{n+1} × ℝ^{m+1} → ℝ^{n+m+1}.
auto build_polymul_map(int n, int m) -> BilinearMap;
/// q · r̄ on the first n+1 and m+1 basis quaternions, into ℝ^4.
auto build_quaternion_map(int n, int m) -> BilinearMap;

/// Smallest value of |f(x,y)| / (|x||y|) over random unit pairs.
auto sampled_nonsingularity(const BilinearMap & f, int samples, std::uint64_t seed) -> double;

/// Post-composes f with an invertible map whose first row is positive on
/// every f((u,0),u), u ∈ ℝ^q \ {0}. Maps without a certificate are first
/// screened for zeros on 10⁵ random pairs.
auto diagonal_positivize(const BilinearMap & f, std::uint64_t seed = 0) -> BilinearMap;

/// Planner on ℝP^n × ℝP^m from a diagonal-positive non-singular map into ℝ^k.
/// Points are unit representatives in ℝ^{n+1}; y uses the first m+1 coordinates.
class ProjectivePairPlanner final : public Planner
{
public:
    explicit ProjectivePairPlanner(BilinearMap f);

    [[nodiscard]] auto name() const -> std::string override { return "projective-pair"; }
    [[nodiscard]] auto rule_count() const -> int override { return _f.k; }
    void validate(const Query & q) const override;
    [[nodiscard]] auto margins(const Query & q) const -> std::vector<double> override;
    [[nodiscard]] auto dispatch(const Query & q) const -> int override;
    [[nodiscard]] auto plan(const Query & q) const -> PathSample override;
    [[nodiscard]] auto sample(std::mt19937_64 & rng) const -> Query override;
    [[nodiscard]] auto perturb(const Query & q, double delta, std::mt19937_64 & rng) const -> Query override;
    [[nodiscard]] auto distance(const Vec & a, const Vec & b) const -> double override;
    [[nodiscard]] auto special_queries() const -> std::vector<Query> override;

    [[nodiscard]] auto map() const noexcept -> const BilinearMap & { return _f; }
    /// ρ(u, u') with u' truncated to its first m+1 coordinates.
    [[nodiscard]] auto rho(const Vec & u, const Vec & v) const -> Vec;

private:
    BilinearMap _f;
    int _n, _m;
    std::vector<double> _row_norms;
};

/// First nonzero coordinate (beyond 1e-12) made positive.
auto canonical_representative(Vec u) -> Vec;

struct VerificationReport
{
    int n = 0;
    int cover_failures = 0;
    double endpoint_max_err = 0;
    double continuity_defect = 0;
    std::uint64_t seed = 0;
    double max_violation = 0;
    std::vector<int> rule_usage;

    [[nodiscard]] auto passed() const -> bool { return cover_failures == 0 && endpoint_max_err <= endpoint_tolerance && max_violation <= unit_tolerance; }
};

/// Samples n queries (special queries first), checks cover and endpoints,
/// and measures the largest sup-distance between the paths of a query and
/// its delta-perturbation when both use the same rule. Deterministic in the
/// seed regardless of thread count; TCPAIR_THREADS caps the threads.
auto verify_planner(const Planner & planner, int n, double delta, std::uint64_t seed) -> VerificationReport;

auto to_json(const VerificationReport & r) -> Json;

}
