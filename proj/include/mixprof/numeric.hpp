#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mixprof {

using Rat = mpq_class;
using BigInt = mpz_class;

// Scalar backends for the dual-arithmetic machinery: IEEE binary64 for
// sweeps, exact rationals for oracle-grade verification. Operations are
// templated on the scalar; the backend is chosen at construction time.
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double from_ratio(long num, long den) { return double(num) / double(den); }
    static double abs(double x) { return std::fabs(x); }
    static double to_double(double x) { return x; }
};

// mpq_class(num, den) stores the pair verbatim; GMP rational arithmetic
// requires canonical operands, so every ratio construction goes through here.
inline Rat frac(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

template <>
struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static Rat from_ratio(long num, long den) { return frac(num, den); }
    static Rat abs(const Rat& x) { return ::abs(x); }
    static double to_double(const Rat& x) { return x.get_d(); }
};

inline double to_double(double x) { return x; }
inline double to_double(const Rat& x) { return x.get_d(); }

inline BigInt binomial_big(long n, long k) {
    if (k < 0 || n < 0 || k > n) return BigInt(0);
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline BigInt factorial_big(long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// ln(n!) in extended precision: exact products below 20, Stirling series
// above. Values reach ~1e7 at n ~ 1e6, where binary64 rounding alone would
// cost ~1e-9 absolute; the 64-bit mantissa keeps the absolute error near
// 1e-15 so pmfs assembled from these stay accurate to ~1e-13 relative.
inline long double log_factorial_ext(long n) {
    if (n < 2) return 0.0L;
    if (n < 20) {
        long double f = 1.0L;
        for (long j = 2; j <= n; ++j) f *= static_cast<long double>(j);
        return std::log(f);
    }
    const long double z = static_cast<long double>(n) + 1.0L;
    const long double coef[] = {1.0L / 12, -1.0L / 360, 1.0L / 1260, -1.0L / 1680, 1.0L / 1188};
    long double series = 0.0L, zp = z;
    for (long double c : coef) {
        series += c / zp;
        zp *= z * z;
    }
    return (z - 0.5L) * std::log(z) - z + 0.5L * std::log(2.0L * 3.141592653589793238462643L) +
           series;
}

inline double log_factorial(long n) { return static_cast<double>(log_factorial_ext(n)); }

// log binom(n,k) for float-mode work.
inline double log_binomial(long n, long k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    if (k == 0 || k == n) return 0.0;
    return static_cast<double>(log_factorial_ext(n) - log_factorial_ext(k) -
                               log_factorial_ext(n - k));
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

// Parses decimal strings ("0.25", "-3", "1e-3", "2/3") to exact rationals so
// exact mode is reachable from flag values.
inline Rat parse_rational(std::string_view s) {
    std::string str(s);
    if (str.find('/') != std::string::npos) {
        Rat q(str);
        q.canonicalize();
        return q;
    }
    bool neg = false;
    std::size_t i = 0;
    if (i < str.size() && (str[i] == '+' || str[i] == '-')) {
        neg = str[i] == '-';
        ++i;
    }
    std::string digits;
    long exp10 = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < str.size(); ++i) {
        char ch = str[i];
        if (ch >= '0' && ch <= '9') {
            digits += ch;
            seen_digit = true;
            if (seen_dot) --exp10;
        } else if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else if (ch == 'e' || ch == 'E') {
            exp10 += std::stol(str.substr(i + 1));
            break;
        } else {
            throw std::invalid_argument("parse_rational: bad numeric literal '" + str + "'");
        }
    }
    if (!seen_digit) throw std::invalid_argument("parse_rational: bad numeric literal '" + str + "'");
    Rat q(BigInt(digits.empty() ? "0" : digits, 10), BigInt(1));  // base fixed: "025" is 25
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 < 0)
        q /= Rat(scale);
    else
        q *= Rat(scale);
    q.canonicalize();
    return neg ? Rat(-q) : q;
}

}  // namespace mixprof
