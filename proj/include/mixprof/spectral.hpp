#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixprof/chain.hpp"

namespace mixprof {

inline constexpr std::size_t kMaxEigenStates = 2000;

// Descending eigenvalues with pi-orthonormal eigenvectors of a reversible
// chain: lambda[0] = 1 with constant eigenvector, and
// sum_x pi(x) f_i(x) f_j(x) = delta_ij.
struct EigenSystem {
    std::vector<double> eigenvalues;           // descending
    std::vector<std::vector<double>> vectors;  // vectors[i][x] = f_i(x)
    Distribution<double> pi;

    std::size_t size() const { return eigenvalues.size(); }
};

// Conjugates to S(x,y) = sqrt(pi(x)/pi(y)) P(x,y) (symmetric by detailed
// balance), runs cyclic Jacobi sweeps until the off-diagonal Frobenius norm
// drops below 1e-12 (at most 100 sweeps), maps eigenvectors back by dividing
// by sqrt(pi). Sorting is descending; ties are broken by ascending index of
// the first nonzero eigenvector entry, and that entry is made positive, so
// decompositions are deterministic.
inline EigenSystem symmetric_eigendecomposition(const Chain<double>& chain) {
    const std::size_t n = chain.size();
    if (n > kMaxEigenStates)
        throw std::length_error("symmetric_eigendecomposition: state space exceeds 2000");
    auto rev = check_reversible(chain, 1e-10);
    if (!rev.reversible)
        throw std::invalid_argument(
            "symmetric_eigendecomposition: chain not reversible (max violation " +
            std::to_string(rev.max_violation) + ")");

    std::vector<double> sqrt_pi(n);
    for (std::size_t x = 0; x < n; ++x) sqrt_pi[x] = std::sqrt(chain.stationary()[x]);

    Matrix<double> a(n, n), v(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        v(x, x) = 1.0;
        for (std::size_t y = 0; y < n; ++y)
            a(x, y) = sqrt_pi[x] / sqrt_pi[y] * chain.kernel()(x, y);
    }
    // enforce exact symmetry of the conjugated matrix before rotating
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            double m = 0.5 * (a(x, y) + a(y, x));
            a(x, y) = a(y, x) = m;
        }

    auto off_frobenius = [&]() {
        double s = 0.0;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (x != y) s += a(x, y) * a(x, y);
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; sweep < 100; ++sweep) {
        if (off_frobenius() < 1e-12) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    if (off_frobenius() >= 1e-12 && sweep == 100)
        throw std::runtime_error("symmetric_eigendecomposition: Jacobi did not converge, residual " +
                                 std::to_string(off_frobenius()));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto first_nonzero = [&](std::size_t col) {
        for (std::size_t x = 0; x < n; ++x)
            if (std::fabs(v(x, col)) > 1e-9) return x;
        return n;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (a(i, i) != a(j, j)) return a(i, i) > a(j, j);
        return first_nonzero(i) < first_nonzero(j);
    });

    EigenSystem es{{}, {}, chain.stationary()};
    es.eigenvalues.reserve(n);
    es.vectors.reserve(n);
    for (std::size_t idx : order) {
        es.eigenvalues.push_back(a(idx, idx));
        std::vector<double> f(n);
        double sign = 1.0;
        std::size_t fz = first_nonzero(idx);
        if (fz < n && v(fz, idx) < 0) sign = -1.0;
        for (std::size_t x = 0; x < n; ++x) f[x] = sign * v(x, idx) / sqrt_pi[x];
        es.vectors.push_back(std::move(f));
    }
    return es;
}

namespace detail {
inline void require_valid_index_set(const EigenSystem& es, const std::vector<std::size_t>& I) {
    for (std::size_t i : I) {
        if (i == 0)
            throw std::invalid_argument("index set must exclude the stationary eigenvalue (index 0)");
        if (i >= es.size()) throw std::out_of_range("index set entry out of range");
    }
}
}  // namespace detail

// Index sets use 0-based positions into the descending spectrum; position 0
// (the stationary eigenvalue) is never admissible.
inline std::vector<std::size_t> full_index_set(std::size_t n) {
    std::vector<std::size_t> I(n > 0 ? n - 1 : 0);
    std::iota(I.begin(), I.end(), 1);
    return I;
}

inline std::vector<std::size_t> low_index_set(std::size_t n, std::size_t m) {
    std::vector<std::size_t> I;
    for (std::size_t i = 1; i < n && i <= m; ++i) I.push_back(i);
    return I;
}

// (1/2) sum_y pi(y) | sum_{i in I} f_i(x) f_i(y) lambda_i^t |
inline double main_term(const EigenSystem& es, std::size_t x, long t,
                        const std::vector<std::size_t>& I) {
    detail::require_valid_index_set(es, I);
    if (x >= es.pi.size()) throw std::out_of_range("main_term: state index out of range");
    const std::size_t n = es.pi.size();
    double acc = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
        double inner = 0.0;
        for (std::size_t i : I)
            inner += es.vectors[i][x] * es.vectors[i][y] * std::pow(es.eigenvalues[i], double(t));
        acc += es.pi[y] * std::fabs(inner);
    }
    return 0.5 * acc;
}

// (1/2) sum_{i not in I, i >= 1} |f_i(x)| |lambda_i|^t
inline double error_term(const EigenSystem& es, std::size_t x, long t,
                         const std::vector<std::size_t>& I) {
    detail::require_valid_index_set(es, I);
    if (x >= es.pi.size()) throw std::out_of_range("error_term: state index out of range");
    std::vector<bool> in(es.size(), false);
    for (std::size_t i : I) in[i] = true;
    double acc = 0.0;
    for (std::size_t i = 1; i < es.size(); ++i)
        if (!in[i])
            acc += std::fabs(es.vectors[i][x]) * std::pow(std::fabs(es.eigenvalues[i]), double(t));
    return 0.5 * acc;
}

struct Interval {
    double lo;
    double hi;
    bool contains(double v, double slack = 0.0) const { return v >= lo - slack && v <= hi + slack; }
};

inline Interval lemma1_sandwich(const EigenSystem& es, std::size_t x, long t,
                                const std::vector<std::size_t>& I) {
    double mt = main_term(es, x, t, I);
    double et = error_term(es, x, t, I);
    return {mt - et, mt + et};
}

struct ApproxPair {
    double main;
    double error;
};

struct TransitivityDiagnostic {
    bool uniform_pi = false;
    bool tv_constant_over_starts = false;  // checked at t in {1,2,3} within 1e-9
    double max_spread = 0.0;
};

inline TransitivityDiagnostic weak_transitivity_check(const Chain<double>& chain) {
    TransitivityDiagnostic d;
    const std::size_t n = chain.size();
    d.uniform_pi = true;
    for (std::size_t x = 0; x < n; ++x)
        if (std::fabs(chain.stationary()[x] - 1.0 / double(n)) > 1e-12) d.uniform_pi = false;
    for (long t = 1; t <= 3; ++t) {
        double lo = 2.0, hi = -1.0;
        for (std::size_t x = 0; x < n; ++x) {
            double tv = to_double(tv_distance(evolve(chain, x, t), chain.stationary()));
            lo = std::min(lo, tv);
            hi = std::max(hi, tv);
        }
        d.max_spread = std::max(d.max_spread, hi - lo);
    }
    d.tv_constant_over_starts = d.max_spread <= 1e-9;
    return d;
}

// Transitive chains: main = (1/2)|Omega|^{-2} sum_{x,y} |sum_{i in I} ...|,
// error = (1/2) sum_{i not in I} |lambda_i|^t. Requires uniform pi.
inline ApproxPair transitive_tv_approx(const EigenSystem& es, long t,
                                       const std::vector<std::size_t>& I) {
    detail::require_valid_index_set(es, I);
    const std::size_t n = es.pi.size();
    for (std::size_t x = 0; x < n; ++x)
        if (std::fabs(es.pi[x] - 1.0 / double(n)) > 1e-12)
            throw std::invalid_argument("transitive_tv_approx: stationary distribution not uniform");
    std::vector<bool> in(es.size(), false);
    for (std::size_t i : I) in[i] = true;
    double main = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            double inner = 0.0;
            for (std::size_t i : I)
                inner += es.vectors[i][x] * es.vectors[i][y] * std::pow(es.eigenvalues[i], double(t));
            main += std::fabs(inner);
        }
    main *= 0.5 / (double(n) * double(n));
    double err = 0.0;
    for (std::size_t i = 1; i < es.size(); ++i)
        if (!in[i]) err += std::pow(std::fabs(es.eigenvalues[i]), double(t));
    return {main, 0.5 * err};
}

// Typical TV: main = (1/2) sum_{x,y} pi(x)pi(y)|...|, same error term.
inline ApproxPair typical_tv_approx(const EigenSystem& es, long t,
                                    const std::vector<std::size_t>& I) {
    detail::require_valid_index_set(es, I);
    const std::size_t n = es.pi.size();
    std::vector<bool> in(es.size(), false);
    for (std::size_t i : I) in[i] = true;
    double main = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            double inner = 0.0;
            for (std::size_t i : I)
                inner += es.vectors[i][x] * es.vectors[i][y] * std::pow(es.eigenvalues[i], double(t));
            main += es.pi[x] * es.pi[y] * std::fabs(inner);
        }
    main *= 0.5;
    double err = 0.0;
    for (std::size_t i = 1; i < es.size(); ++i)
        if (!in[i]) err += std::pow(std::fabs(es.eigenvalues[i]), double(t));
    return {main, 0.5 * err};
}

}  // namespace mixprof
