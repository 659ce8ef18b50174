#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>

#include "odb/errors.hpp"

namespace odb {

using Rational = mpq_class;
using Integer = mpz_class;

// C(n, k) as an exact integer; 0 for k < 0 or k > n.
inline Integer binomial(unsigned long n, long k) {
    if (k < 0 || static_cast<unsigned long>(k) > n) return Integer(0);
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, static_cast<unsigned long>(k));
    return out;
}

// q^e for any integer e (q nonzero when e < 0).
inline Rational rational_pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    Rational base = e > 0 ? q : Rational(1) / q;
    unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

// Splits q as d * 2^e with d in [0.5, 1) (sign carried by d). Handles
// rationals far outside double range.
inline std::pair<double, long> to_double_2exp(const Rational& q) {
    if (sgn(q) == 0) return {0.0, 0};
    mpf_class f(0, 128);
    f = q;
    long e = 0;
    double d = mpf_get_d_2exp(&e, f.get_mpf_t());
    return {d, e};
}

inline double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

// Parses "a/b" or a plain integer as an exact rational. Returns nullopt for
// anything containing a decimal point or exponent (callers that demand
// exactness refuse those).
inline std::optional<Rational> parse_fraction(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s.find_first_of(".eE") != std::string::npos) return std::nullopt;
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) return std::nullopt;
    mpq_canonicalize(q.get_mpq_t());
    return q;
}

// "num/den" (canonical form) for JSON output.
inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline void require_probability(const Rational& p, const char* what) {
    if (p <= 0 || p >= 1) throw ArgumentError(std::string(what) + " must lie in (0,1)");
}

inline void require_probability(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0)) throw ArgumentError(std::string(what) + " must lie in (0,1)");
}

}  // namespace odb
