#pragma once

#include <gmpxx.h>

#include <string>

namespace iif {

/// Exact rational constant. mpq_class keeps num/den canonical (gcd 1, den > 0).
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline std::string to_string(const Rat& r) { return r.get_str(); }

/// Rational from text such as "3", "-7/2" or "0.25".
Rat parse_rat(const std::string& text);

Rat factorial(unsigned n);
Rat binomial(unsigned n, unsigned k);

}  // namespace iif
