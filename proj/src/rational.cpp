#include <tcpair/error.hpp>
#include <tcpair/rational.hpp>

#include <cctype>

namespace tcpair {

namespace {
    auto is_integer_literal(std::string_view s) -> bool
    {
        if (s.empty())
            return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (! std::isdigit(static_cast<unsigned char>(s[i])))
                return false;
        return true;
    }

    auto trim(std::string_view s) -> std::string_view
    {
        while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    }
}

auto parse_rational(std::string_view text) -> Rational
{
    auto s = trim(text);
    auto slash = s.find('/');
    auto num = trim(s.substr(0, slash));
    auto den = slash == std::string_view::npos ? std::string_view{"1"} : trim(s.substr(slash + 1));
    if (! is_integer_literal(num) || ! is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        fail(ErrorCode::ParseError, "malformed rational literal '" + std::string(text) + "'");

    std::string n{num[0] == '+' ? num.substr(1) : num};
    Integer d{std::string(den)};
    if (d == 0)
        fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rational q{Integer{n}, d};
    q.canonicalize();
    return q;
}

auto to_string(const Rational & q) -> std::string
{
    return q.get_str();
}

auto binomial(unsigned long n, unsigned long k) -> Integer
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}
