#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace padicfs {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "num/den" or "num" (base 10, optional sign). Throws std::invalid_argument.
Rational parseRational(std::string_view text);

/// Canonical string form: "num/den", or "num" when den = 1.
std::string toString(const Rational& r);

/// p^k for any integer k (negative allowed).
Rational powP(long p, long k);

Integer ipow(long base, unsigned long exponent);

double toDouble(const Rational& r);

}  // namespace padicfs
