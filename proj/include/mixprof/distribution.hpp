#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "mixprof/numeric.hpp"

namespace mixprof {

// Dense probability vector over an indexed finite state space.
// Entries are nonnegative and sum to 1: within 1e-12 in float mode,
// exactly in rational mode.
template <class T>
class Distribution {
  public:
    explicit Distribution(std::vector<T> probs) : p_(std::move(probs)) { validate(); }

    static Distribution point_mass(std::size_t n, std::size_t at) {
        std::vector<T> p(n, T(0));
        p.at(at) = T(1);
        return Distribution(std::move(p));
    }

    static Distribution uniform(std::size_t n) {
        std::vector<T> p(n, scalar_traits<T>::from_ratio(1, static_cast<long>(n)));
        return Distribution(std::move(p));
    }

    std::size_t size() const { return p_.size(); }
    const T& operator[](std::size_t i) const { return p_[i]; }
    const std::vector<T>& probs() const { return p_; }

  private:
    void validate() const {
        if (p_.empty()) throw std::invalid_argument("Distribution: empty probability vector");
        T sum(0);
        for (const T& x : p_) {
            if (x < T(0)) throw std::invalid_argument("Distribution: negative entry");
            sum += x;
        }
        if constexpr (scalar_traits<T>::exact) {
            if (sum != T(1)) throw std::invalid_argument("Distribution: mass does not sum to 1");
        } else {
            if (scalar_traits<T>::abs(sum - T(1)) > 1e-12)
                throw std::invalid_argument("Distribution: mass does not sum to 1 within 1e-12");
        }
    }

    std::vector<T> p_;
};

template <class T>
T tv_distance(const Distribution<T>& p, const Distribution<T>& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("tv_distance: dimension mismatch");
    T acc(0);
    for (std::size_t y = 0; y < p.size(); ++y) acc += scalar_traits<T>::abs(p[y] - q[y]);
    return acc / T(2);
}

}  // namespace mixprof
