#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tcpair {

/// Exact rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a", "-a" or "a/b". Throws ParseError on malformed input or b = 0.
auto parse_rational(std::string_view text) -> Rational;

auto to_string(const Rational & q) -> std::string;

auto binomial(unsigned long n, unsigned long k) -> Integer;

}
