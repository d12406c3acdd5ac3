#include <tcpair/error.hpp>
#include <tcpair/field.hpp>

namespace tcpair {

namespace {
    auto is_prime(long p) -> bool
    {
        if (p < 2)
            return false;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0)
                return false;
        return true;
    }
}

auto Field::prime(long p) -> Field
{
    if (! is_prime(p))
        fail(ErrorCode::PreconditionFailed, "field characteristic " + std::to_string(p) + " is not prime");
    return Field{p};
}

auto Field::name() const -> std::string
{
    if (_p == 0)
        return "Q";
    if (_p == 2)
        return "F2";
    return "Fp:" + std::to_string(_p);
}

auto Field::from(const Rational & q) const -> Rational
{
    if (_p == 0)
        return q;
    Integer p = _p;
    Integer den = q.get_den() % p;
    if (den == 0)
        fail(ErrorCode::PreconditionFailed, "coefficient " + to_string(q) + " is undefined in characteristic " + std::to_string(_p));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    Integer r = (q.get_num() * inv) % p;
    if (r < 0)
        r += p;
    return Rational{r};
}

auto Field::add(const Rational & a, const Rational & b) const -> Rational
{
    if (_p == 0)
        return a + b;
    Integer r = a.get_num() + b.get_num();
    if (r >= _p)
        r -= _p;
    return Rational{r};
}

auto Field::sub(const Rational & a, const Rational & b) const -> Rational
{
    if (_p == 0)
        return a - b;
    Integer r = a.get_num() - b.get_num();
    if (r < 0)
        r += _p;
    return Rational{r};
}

auto Field::mul(const Rational & a, const Rational & b) const -> Rational
{
    if (_p == 0)
        return a * b;
    Integer r = (a.get_num() * b.get_num()) % _p;
    return Rational{r};
}

auto Field::neg(const Rational & a) const -> Rational
{
    if (_p == 0)
        return -a;
    return sgn(a) == 0 ? a : Rational{Integer{_p} - a.get_num()};
}

auto Field::inv(const Rational & a) const -> Rational
{
    if (sgn(a) == 0)
        fail(ErrorCode::PreconditionFailed, "division by zero in field " + name());
    if (_p == 0)
        return 1 / a;
    Integer p = _p, r;
    mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), p.get_mpz_t());
    return Rational{r};
}

auto parse_field(std::string_view text) -> Field
{
    if (text == "Q")
        return Field::rationals();
    if (text == "F2")
        return Field::prime(2);
    if (text.starts_with("Fp:")) {
        auto q = parse_rational(text.substr(3));
        if (q.get_den() != 1 || ! q.get_num().fits_slong_p())
            fail(ErrorCode::ParseError, "bad field characteristic in '" + std::string(text) + "'");
        long p = q.get_num().get_si();
        if (p < 2)
            fail(ErrorCode::ParseError, "bad field characteristic in '" + std::string(text) + "'");
        return Field::prime(p);
    }
    fail(ErrorCode::ParseError, "unknown field '" + std::string(text) + "' (expected Q, F2 or Fp:<p>)");
}

}
