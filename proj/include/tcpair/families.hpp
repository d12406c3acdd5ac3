#pragma once

#include <tcpair/lengths.hpp>
#include <tcpair/ring.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tcpair::rings {

inline constexpr int max_polygon_size = 12;

/// k[x]/(x^truncation) with |x| = gen_degree.
auto build_truncated(int gen_degree, int truncation, const Field & field, const std::string & name = "x") -> RingPtr;

/// Exterior algebra on n degree-1 generators x1..xn.
auto build_exterior(int n, const Field & field, const std::string & prefix = "x") -> RingPtr;

/// Cohomology of a wedge of spheres: classes g1..gn with every product zero.
auto build_wedge(const std::vector<int> & degrees, const Field & field, const std::string & prefix = "g") -> RingPtr;

/// The ground field in degree 0.
auto build_point(const Field & field) -> RingPtr;

struct PolygonRing
{
    lengths::LengthVector lengths;
    RingPtr ring;
};

/// Generators R, V1..V_{n-1} (all degree 2) modulo the three relation
/// families built from the short/long subsets of ℓ. The basis is computed up
/// to the manifold dimension 2(n-3) unless a larger cap is requested.
auto build_polygon(const lengths::LengthVector & l, const Field & field, std::optional<int> top_degree = std::nullopt) -> PolygonRing;

/// Chern class c_j for 1 ≤ j ≤ n: R + 2V_j when j < n, and −R for j = n.
auto chern_class(const PolygonRing & p, int j) -> RingElement;

/// Σ λℓ_i c_i. λ defaults to the least common denominator of ℓ, making the
/// coefficients integers.
auto symplectic_class(const PolygonRing & p, std::optional<Rational> scale = std::nullopt) -> RingElement;

/// Pullback along N(ℓ^P) ⊆ N(ℓ), determined by c_j ↦ c_{phi(j)}. phi is
/// 0-based and maps indices of ℓ to indices of ℓ^P.
auto polygon_inclusion_hom(const PolygonRing & source, const PolygonRing & target, const std::vector<int> & phi) -> RingHom;

}
