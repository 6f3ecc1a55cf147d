#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace halllab {

/// Exact arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);

/// Parses "p", "p/q" or a finite decimal such as "0.5".
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

double to_double(const Rational& r);

}  // namespace halllab
