#pragma once

#include <gmpxx.h>

#include <string>

namespace pscat {

using Rational = mpq_class;
using Integer = mpz_class;

// "num/den" (or just "num" when den = 1).
inline std::string to_fraction_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(const std::string& s) {
    Rational r(s);
    r.canonicalize();
    return r;
}

inline Integer factorial(unsigned long n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

}  // namespace pscat
