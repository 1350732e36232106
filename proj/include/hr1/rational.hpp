#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hr1 {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative integer");
    mpz_class z;
    mpz_fac_ui(z.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(z);
}

inline Rational binomial(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(z);
}

// Exact power with integer (possibly negative) exponent.
inline Rational pow_rat(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw std::domain_error("0 raised to negative power");
        return Rational(0);
    }
    Rational b = e > 0 ? base : Rational(1) / base;
    unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational acc(1);
    while (k) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

// Serializes as "p" or "p/q", always canonical, never a float.
inline std::string rat_to_string(const Rational& r) {
    return r.get_str();
}

inline std::optional<Rational> rat_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    Rational r;
    if (r.set_str(s, 10) != 0) return std::nullopt;
    if (r.get_den() == 0) return std::nullopt;
    r.canonicalize();
    return r;
}

} // namespace hr1
