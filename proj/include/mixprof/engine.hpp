#pragma once

#include <vector>

#include "mixprof/numeric.hpp"

namespace mixprof {

// Weighted Krawtchouk spectral sums
//
//   S(t, U) = sum_l w_l | sum_{i=1}^{U} a^i binom(n,i) K_i(l) lambda_i^t |,
//   w_l = binom(n,l) a^l / (a+1)^n,
//
// evaluated for a batch of (t, M) pairs; each request yields the full sum
// (U = n) and the restricted sum (U = M). Sums of this shape carry massive
// cancellation (individual terms can exceed 1e200 while S stays below 2), so
// the evaluation runs in GMP floats with precision scaled from a prescan of
// term magnitudes. K_i values come from the three-term degree recurrence.
//
// Callers: exact TV / main terms of the Gibbs sampler (lambda_i the product
// eigenvalues) and of the multi-urn diffusion (lambda_i = 1 - i/n, a = m).
class KrawtchoukSpectralEngine {
  public:
    struct Request {
        long t;
        long m;  // restriction cutoff: restricted sum over i in {1..m}
    };
    struct Result {
        double full_sum;
        double restricted_sum;
    };

    KrawtchoukSpectralEngine(long n, Rat alpha, std::vector<Rat> eigenvalues);

    std::vector<Result> evaluate(const std::vector<Request>& requests) const;
    Result evaluate_one(long t, long m) const;

    long n() const { return n_; }

  private:
    long n_;
    Rat alpha_;
    std::vector<Rat> eigenvalues_;     // lambda_0 = 1, ..., lambda_n
    std::vector<double> log2_lambda_;  // -inf where lambda = 0
};

}  // namespace mixprof
