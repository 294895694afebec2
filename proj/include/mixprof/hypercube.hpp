#pragma once

#include <vector>

#include "mixprof/chain.hpp"
#include "mixprof/numeric.hpp"
#include "mixprof/profile_point.hpp"

namespace mixprof {

// Lazy simple random walk on {0,1}^n: hold with probability 1/2, otherwise
// flip a uniform coordinate. Exact TV from uniform is computed by grouping
// states and Fourier labels by Hamming weight:
//
//   d_TV(t) = (1/2) 2^{-n} sum_r binom(n,r) | sum_{j>=1} c_{r,j} (1-j/n)^t |,
//
// where c_{r,j} is the z^j coefficient of (1-z)^r (1+z)^{n-r}. The
// coefficient table is carried in exact integers (the r -> r+1 update is a
// divide-by-(1+z), multiply-by-(1-z) pass, all integer adds); only the final
// weighting is floating, in GMP floats sized from the term magnitudes. For
// small n the weighting is exact rational as well.
double hypercube_exact_tv(long n, long t);
std::vector<double> hypercube_exact_tv_batch(long n, const std::vector<long>& ts);

// Fully exact value (common denominator 2^n n^t); n and t capped to keep the
// integers sane.
Rat hypercube_exact_tv_rational(long n, long t);

long hypercube_schedule(long n, double c);

// The appendix pipeline computes TV exactly (no spectral truncation), so the
// profile rows carry main_term = exact_tv and error_term = 0.
ProfilePoint hypercube_profile_point(long n, double c);
std::vector<ProfilePoint> hypercube_profile_points(long n, const std::vector<double>& cs);

// 2^n-state kernel for brute-force oracles.
template <class T>
Chain<T> hypercube_chain(long n);

}  // namespace mixprof
