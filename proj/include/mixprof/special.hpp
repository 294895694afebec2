#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mixprof/numeric.hpp"

namespace mixprof {

// Krawtchouk family K_i(x; p, n) with p = alpha/(alpha+1), normalised so
// K_i(0) = 1. Out-of-range binomials vanish, which makes the printed
// summation limits harmless.
struct KrawtchoukParams {
    long n;
    Rat alpha;

    KrawtchoukParams(long n_, Rat alpha_) : n(n_), alpha(std::move(alpha_)) {
        if (n < 1) throw std::invalid_argument("KrawtchoukParams: n must be >= 1");
        if (alpha <= 0) throw std::invalid_argument("KrawtchoukParams: alpha must be positive");
    }

    Rat p() const { return alpha / (alpha + 1); }
};

// K_i(x) = binom(n,i)^{-1} sum_j binom(x,j) binom(n-x,i-j) (-1/alpha)^j.
inline Rat krawtchouk_exact(const KrawtchoukParams& kp, long i, long x) {
    if (i < 0 || i > kp.n || x < 0 || x > kp.n)
        throw std::out_of_range("krawtchouk: index outside 0..n");
    Rat inv_neg_alpha = Rat(-1) / kp.alpha;
    Rat acc(0);
    long jmax = std::min(i, x);
    Rat power(1);
    for (long j = 0; j <= jmax; ++j) {
        BigInt prod = binomial_big(x, j) * binomial_big(kp.n - x, i - j);
        if (prod != 0) acc += Rat(prod) * power;
        power *= inv_neg_alpha;
    }
    return acc / Rat(binomial_big(kp.n, i));
}

// binary64 value of the same sum. Below the exact-evaluation cap the sum is
// carried in rational arithmetic and rounded once at the end; above it the
// terms are assembled from log-binomials.
inline double krawtchouk(const KrawtchoukParams& kp, long i, long x) {
    constexpr long kExactCap = 512;
    if (kp.n <= kExactCap) return krawtchouk_exact(kp, i, x).get_d();
    if (i < 0 || i > kp.n || x < 0 || x > kp.n)
        throw std::out_of_range("krawtchouk: index outside 0..n");
    const double log_alpha = std::log(to_double(kp.alpha));
    const double lead = log_binomial(kp.n, i);
    double acc = 0.0;
    for (long j = std::max(0L, i - (kp.n - x)); j <= std::min(i, x); ++j) {
        double lg = log_binomial(x, j) + log_binomial(kp.n - x, i - j) - lead - double(j) * log_alpha;
        acc += (j % 2 == 0 ? 1.0 : -1.0) * std::exp(lg);
    }
    return acc;
}

// LHS - RHS of  sum_x K_i K_j alpha^x binom(n,x)
//             = (alpha+1)^n alpha^{-i} binom(n,i)^{-1} delta_ij.
inline Rat krawtchouk_orthogonality_residual(const KrawtchoukParams& kp, long i, long j) {
    if (i < 0 || i > kp.n || j < 0 || j > kp.n)
        throw std::out_of_range("krawtchouk_orthogonality_residual: index outside 0..n");
    Rat lhs(0);
    Rat alpha_pow(1);
    for (long x = 0; x <= kp.n; ++x) {
        lhs += krawtchouk_exact(kp, i, x) * krawtchouk_exact(kp, j, x) * alpha_pow *
               Rat(binomial_big(kp.n, x));
        alpha_pow *= kp.alpha;
    }
    Rat rhs(0);
    if (i == j)
        rhs = pow_rat(kp.alpha + 1, static_cast<unsigned long>(kp.n)) /
              (pow_rat(kp.alpha, static_cast<unsigned long>(i)) * Rat(binomial_big(kp.n, i)));
    return lhs - rhs;
}

inline double log_binomial_pmf(long n, double p, long k) {
    long double lg = log_factorial_ext(n) - log_factorial_ext(k) - log_factorial_ext(n - k) +
                     static_cast<long double>(k) * std::log(static_cast<long double>(p)) +
                     static_cast<long double>(n - k) *
                         std::log1p(-static_cast<long double>(p));
    return static_cast<double>(lg);
}

inline double binomial_pmf(long n, double p, long k) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("binomial_pmf: p outside (0,1)");
    if (k < 0 || k > n) throw std::out_of_range("binomial_pmf: k outside 0..n");
    if (n <= 1000) {
        double acc = 1.0;
        // direct product, interleaving factors to stay in range
        long kk = std::min(k, n - k);
        for (long j = 0; j < kk; ++j) acc *= double(n - j) / double(kk - j);
        acc *= std::pow(p, double(k)) * std::pow(1.0 - p, double(n - k));
        return acc;
    }
    return std::exp(log_binomial_pmf(n, p, k));
}

// (1/2) sum_k |Bin(n,p)(k) - Bin(n,q)(k)|, log-stabilised term by term.
inline double tv_binomials(long n, double p, double q) {
    if (!(p > 0.0 && p < 1.0) || !(q > 0.0 && q < 1.0))
        throw std::domain_error("tv_binomials: parameters outside (0,1)");
    double acc = 0.0;
    for (long k = 0; k <= n; ++k)
        acc += std::fabs(std::exp(log_binomial_pmf(n, p, k)) - std::exp(log_binomial_pmf(n, q, k)));
    return 0.5 * acc;
}

// Standard normal cdf through the complementary error function; absolute
// error at most 1e-12 (validated against a series oracle in the tests).
inline double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Gaussian limit profile 2 Phi(e^{-c}/2) - 1.
inline double gaussian_profile(double c) { return 2.0 * std_normal_cdf(0.5 * std::exp(-c)) - 1.0; }

inline double poisson_pmf(double lambda, long k) {
    if (lambda <= 0.0) throw std::domain_error("poisson_pmf: rate must be positive");
    if (k < 0) return 0.0;
    return std::exp(double(k) * std::log(lambda) - lambda - std::lgamma(double(k) + 1.0));
}

// Truncation point keeps both tails below 1e-15 (Chernoff).
inline double tv_poissons(double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw std::domain_error("tv_poissons: rates must be positive");
    double m = std::max(a, b);
    long kstar = static_cast<long>(m + 40.0 * std::sqrt(m) + 20.0);
    double acc = 0.0;
    for (long k = 0; k <= kstar; ++k) acc += std::fabs(poisson_pmf(a, k) - poisson_pmf(b, k));
    return 0.5 * acc;
}

// Poisson limit profile d_TV(Pois(1+e^{-c}), Pois(1)).
inline double poisson_profile(double c) { return tv_poissons(1.0 + std::exp(-c), 1.0); }

// | d_TV(Bin(n, p - p*y/sqrt(alpha n)), Bin(n, p)) - (2 Phi(|y|/2) - 1) |
// with p = alpha/(alpha+1); the gap decays as n grows.
inline double binomial_clt_gap(long n, double alpha, double y) {
    if (n < 1) throw std::invalid_argument("binomial_clt_gap: n must be >= 1");
    if (alpha <= 0.0) throw std::domain_error("binomial_clt_gap: alpha must be positive");
    double p = alpha / (alpha + 1.0);
    double shifted = p * (1.0 - y / std::sqrt(alpha * double(n)));
    if (!(shifted > 0.0 && shifted < 1.0))
        throw std::domain_error("binomial_clt_gap: perturbed parameter outside (0,1)");
    double tv = tv_binomials(n, shifted, p);
    return std::fabs(tv - (2.0 * std_normal_cdf(0.5 * std::fabs(y)) - 1.0));
}

// Tail sum_{i>M} e^{-ci}/sqrt(i!), in log space.
inline double truncation_tail(double c, long M) {
    double acc = 0.0;
    double prev = 0.0;
    for (long i = M + 1; i < M + 100000; ++i) {
        double lg = -c * double(i) - 0.5 * std::lgamma(double(i) + 1.0);
        double term = std::exp(lg);
        acc += term;
        if (i > M + 8 && term < prev && term < 1e-18 * std::max(acc, 1.0)) break;
        prev = term;
    }
    return acc;
}

// Smallest M >= 1 with sum_{i>M} e^{-ci}/sqrt(i!) < eps.
inline long truncation_index(double c, double eps) {
    for (long M = 1; M <= 100000; ++M)
        if (truncation_tail(c, M) < eps) return M;
    throw std::runtime_error("truncation_index: no admissible M below 1e5");
}

}  // namespace mixprof
