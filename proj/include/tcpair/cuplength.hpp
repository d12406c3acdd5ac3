#pragma once

#include <tcpair/ring.hpp>
#include <tcpair/ring_json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tcpair::cuplength {

using rings::RingElement;
using rings::RingHom;
using rings::RingPtr;

enum class ZeroDivisorOrigin
{
    /// x⊗1 − 1⊗ι*(x) for a generator x of the source.
    Difference,
    /// κ⊗1 for κ in the kernel of ι*.
    Kernel
};

struct ZeroDivisor
{
    RingElement element;
    ZeroDivisorOrigin origin;
    std::string label;
    int degree;
};

struct ZeroDivisorSet
{
    RingPtr tensor;
    RingHom hom;
    std::vector<ZeroDivisor> generators;
};

/// α⊗β ↦ ι*(α)·β, landing in the target of ι*.
auto evaluate(const RingHom & hom, const RingElement & z) -> RingElement;

/// T must be the tensor product of hom.source() and hom.target().
auto zero_divisor_generators(const RingPtr & tensor, const RingHom & hom) -> ZeroDivisorSet;

struct CupLengthCertificate
{
    int k = 0;
    std::vector<RingElement> factors;
    std::vector<std::string> labels;
    RingElement product;
    /// False when a node budget stopped the search early.
    bool complete = true;
    /// Fast path only: the scalar c with product = c · ωXⁿ⊗ωYᵐ.
    std::optional<Rational> coefficient;

    [[nodiscard]] auto bound() const noexcept -> int { return k + 1; }
};

/// ⌊top/2⌋ when every generator of T has even degree, top otherwise.
auto default_max_factors(const RingPtr & tensor) -> int;

/// Exhaustive multiset search over the basic zero-divisors, largest degree
/// first. Returns the longest non-vanishing product found.
auto cuplength_lower_bound(const ZeroDivisorSet & z, int max_factors, std::optional<std::size_t> node_budget = std::nullopt) -> CupLengthCertificate;

/// (ωX⊗1 − 1⊗ωY)^{n+m} for symplectic classes with ι*(ωX) = ωY.
auto symplectic_fastpath(const RingPtr & tensor, const RingHom & hom, const RingElement & omega_x, const RingElement & omega_y, int n, int m) -> CupLengthCertificate;

/// Re-multiplies the factors and compares with the stored product.
auto verify_certificate(const CupLengthCertificate & c) -> bool;

auto to_json(const CupLengthCertificate & c) -> rings::Json;

}
