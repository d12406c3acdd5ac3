#pragma once

#include <tcpair/rational.hpp>

#include <string>
#include <string_view>

namespace tcpair {

/// Coefficient field: either ℚ or 𝔽ₚ. Scalars are carried as Rationals; over
/// 𝔽ₚ they are kept as canonical residues in [0, p).
class Field
{
public:
    static auto rationals() -> Field { return Field{0}; }
    static auto prime(long p) -> Field;

    [[nodiscard]] auto characteristic() const noexcept -> long { return _p; }
    [[nodiscard]] auto is_rationals() const noexcept -> bool { return _p == 0; }
    [[nodiscard]] auto name() const -> std::string;

    [[nodiscard]] auto from(const Rational & q) const -> Rational;
    [[nodiscard]] auto from(long v) const -> Rational { return from(Rational{v}); }
    [[nodiscard]] auto add(const Rational & a, const Rational & b) const -> Rational;
    [[nodiscard]] auto sub(const Rational & a, const Rational & b) const -> Rational;
    [[nodiscard]] auto mul(const Rational & a, const Rational & b) const -> Rational;
    [[nodiscard]] auto neg(const Rational & a) const -> Rational;
    [[nodiscard]] auto inv(const Rational & a) const -> Rational;
    /// (-1)^e in this field.
    [[nodiscard]] auto sign(long e) const -> Rational { return from(e % 2 == 0 ? 1 : -1); }

    auto operator==(const Field &) const -> bool = default;

private:
    explicit Field(long p) :
        _p(p)
    {
    }

    long _p;
};

/// Accepts "Q", "F2" or "Fp:<p>".
auto parse_field(std::string_view text) -> Field;

}
