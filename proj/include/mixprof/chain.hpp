#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mixprof/distribution.hpp"
#include "mixprof/numeric.hpp"

namespace mixprof {

inline constexpr std::size_t kMaxDenseStates = 20000;

template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

// Row-stochastic kernel with its stationary distribution. The reversible
// flag is a certificate supplied by the constructor and can be re-checked
// against detailed balance with check_reversible.
template <class T>
class Chain {
  public:
    Chain(Matrix<T> kernel, Distribution<T> stationary, bool reversible = false)
        : kernel_(std::move(kernel)), stationary_(std::move(stationary)), reversible_(reversible) {
        validate();
    }

    std::size_t size() const { return kernel_.rows(); }
    const Matrix<T>& kernel() const { return kernel_; }
    const Distribution<T>& stationary() const { return stationary_; }
    bool reversible_flag() const { return reversible_; }

  private:
    void validate() const {
        if (kernel_.rows() != kernel_.cols())
            throw std::invalid_argument("Chain: kernel not square");
        if (kernel_.rows() != stationary_.size())
            throw std::invalid_argument("Chain: stationary dimension mismatch");
        if (kernel_.rows() > kMaxDenseStates)
            throw std::length_error("Chain: state space exceeds dense cap of 20000");
        for (std::size_t x = 0; x < kernel_.rows(); ++x) {
            T row_sum(0);
            for (std::size_t y = 0; y < kernel_.cols(); ++y) {
                if (kernel_(x, y) < T(0)) throw std::invalid_argument("Chain: negative kernel entry");
                row_sum += kernel_(x, y);
            }
            if constexpr (scalar_traits<T>::exact) {
                if (row_sum != T(1)) throw std::invalid_argument("Chain: kernel row not stochastic");
            } else {
                if (scalar_traits<T>::abs(row_sum - T(1)) > 1e-12)
                    throw std::invalid_argument("Chain: kernel row not stochastic within 1e-12");
            }
        }
        // stationarity: pi P = pi, within 1e-10 in float mode, exact in rational mode
        for (std::size_t y = 0; y < size(); ++y) {
            T acc(0);
            for (std::size_t x = 0; x < size(); ++x) acc += stationary_[x] * kernel_(x, y);
            T diff = scalar_traits<T>::abs(acc - stationary_[y]);
            if constexpr (scalar_traits<T>::exact) {
                if (diff != T(0)) throw std::invalid_argument("Chain: stationary not invariant");
            } else {
                if (diff > 1e-10)
                    throw std::invalid_argument("Chain: stationary not invariant within 1e-10");
            }
        }
    }

    Matrix<T> kernel_;
    Distribution<T> stationary_;
    bool reversible_;
};

// Row `start` of kernel^t, by t successive vector-matrix products.
template <class T>
Distribution<T> evolve(const Chain<T>& chain, std::size_t start, long t) {
    if (start >= chain.size()) throw std::out_of_range("evolve: invalid start index");
    if (t < 0) throw std::invalid_argument("evolve: negative time");
    const std::size_t n = chain.size();
    std::vector<T> v(n, T(0)), w(n);
    v[start] = T(1);
    for (long s = 0; s < t; ++s) {
        for (std::size_t y = 0; y < n; ++y) w[y] = T(0);
        for (std::size_t x = 0; x < n; ++x) {
            if (v[x] == T(0)) continue;
            for (std::size_t y = 0; y < n; ++y) w[y] += v[x] * chain.kernel()(x, y);
        }
        v.swap(w);
    }
    return Distribution<T>(std::move(v));
}

template <class T>
struct TvProfileRow {
    long t;
    T exact_tv;
};

template <class T>
struct TvProfile {
    std::vector<TvProfileRow<T>> rows;
    // Diagnostic only (reversible aperiodic chains should be nonincreasing
    // up to 1e-12); never an error.
    bool monotonicity_warning = false;
};

template <class T>
TvProfile<T> tv_profile_exact(const Chain<T>& chain, std::size_t start, const std::vector<long>& times) {
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] < times[i - 1])
            throw std::invalid_argument("tv_profile_exact: times must be nondecreasing");
    TvProfile<T> out;
    std::optional<T> prev;
    for (long t : times) {
        T tv = tv_distance(evolve(chain, start, t), chain.stationary());
        if (chain.reversible_flag() && prev && tv > *prev + T(scalar_traits<T>::from_ratio(1, 1000000000000L)))
            out.monotonicity_warning = true;
        prev = tv;
        out.rows.push_back({t, tv});
    }
    return out;
}

template <class T>
struct ReversibilityReport {
    bool reversible;
    double max_violation;
};

// max_{x,y} |pi(x)P(x,y) - pi(y)P(y,x)| against tol.
template <class T>
ReversibilityReport<T> check_reversible(const Chain<T>& chain, double tol) {
    double worst = 0.0;
    for (std::size_t x = 0; x < chain.size(); ++x)
        for (std::size_t y = x + 1; y < chain.size(); ++y) {
            T lhs = chain.stationary()[x] * chain.kernel()(x, y);
            T rhs = chain.stationary()[y] * chain.kernel()(y, x);
            double v = to_double(scalar_traits<T>::abs(lhs - rhs));
            if (v > worst) worst = v;
        }
    return {worst <= tol, worst};
}

// Power-iteration fallback for ad-hoc chains without a closed-form
// stationary law. Tolerance 1e-13 on the L1 increment, at most 1e6 rounds.
inline Distribution<double> stationary_power_iteration(const Matrix<double>& kernel) {
    const std::size_t n = kernel.rows();
    std::vector<double> v(n, 1.0 / double(n)), w(n);
    for (long it = 0; it < 1000000; ++it) {
        for (std::size_t y = 0; y < n; ++y) w[y] = 0.0;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) w[y] += v[x] * kernel(x, y);
        double delta = 0.0, mass = 0.0;
        for (std::size_t y = 0; y < n; ++y) mass += w[y];
        for (std::size_t y = 0; y < n; ++y) {
            w[y] /= mass;
            delta += std::fabs(w[y] - v[y]);
        }
        v.swap(w);
        if (delta <= 1e-13) return Distribution<double>(std::move(v));
    }
    throw std::runtime_error("stationary_power_iteration: no convergence within 1e6 iterations");
}

}  // namespace mixprof
