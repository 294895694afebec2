#pragma once

#include <vector>

#include "mixprof/chain.hpp"
#include "mixprof/numeric.hpp"
#include "mixprof/profile_point.hpp"
#include "mixprof/special.hpp"
#include "mixprof/spectral.hpp"

namespace mixprof {

// Two-component Gibbs sampler: prior Bin(n1, p), noise Bin(n2, p); a step
// draws theta from the hypergeometric posterior given x, then epsilon from
// the noise law, and outputs theta + epsilon. State space {0, ..., n1+n2};
// the invariant law is Bin(n1+n2, p).
struct GibbsModel {
    long n1;
    long n2;
    Rat p;

    GibbsModel(long n1_, long n2_, Rat p_) : n1(n1_), n2(n2_), p(std::move(p_)) {
        if (n1 < 1 || n2 < 1) throw std::invalid_argument("GibbsModel: n1, n2 must be >= 1");
        if (!(p > 0 && p < 1)) throw std::domain_error("GibbsModel: p outside (0,1)");
    }

    long n() const { return n1 + n2; }
    Rat alpha() const { return p / (Rat(1) - p); }
};

// Posterior H(theta | x) = binom(n1,theta) binom(n2,x-theta) / binom(n,x).
Rat gibbs_posterior_exact(const GibbsModel& model, long theta, long x);

template <class T>
Chain<T> gibbs_kernel(const GibbsModel& model);

// lambda_i = prod_{j<i} (n1-j)/(n-j) for i = 0..n (zero for i >= n1+1).
std::vector<Rat> gibbs_eigenvalues_exact(const GibbsModel& model);

// Closed-form eigensystem: f_i(x) = alpha^{i/2} binom(n,i)^{1/2} K_i(x).
// No numeric diagonalisation is involved.
EigenSystem gibbs_eigensystem(const GibbsModel& model);

// t = round((log(alpha n)/2 + c) / log(1/(1 - n2/n))); throws when the
// rounded schedule is not a positive integer.
long gibbs_mixing_schedule(const GibbsModel& model, double c);

// The c that the integer schedule actually realises:
// lambda_1^t = (alpha n)^{-1/2} e^{-c_eff}.
double gibbs_effective_c(const GibbsModel& model, long t);

struct GibbsErrorTerms {
    double et;        // sum_{i>M} |f_i(0)| lambda_i^t
    double et_prime;  // sum_{i>M} |f_i(0)| lambda_1^{it}  (>= et)
};
GibbsErrorTerms gibbs_error_term(const GibbsModel& model, long t, long M);

// MT = sum_x m(x) |sum_{i=1}^{M} f_i(0) f_i(x) lambda_i^t|  (no half).
double gibbs_main_term(const GibbsModel& model, long t, long M);

// Exact TV from 0 at time t through the full spectral sum (cost O(n^2)).
double gibbs_exact_tv(const GibbsModel& model, long t);

// MT' = 2 d_TV(Bin(n, p_{e^{-c}}), Bin(n, p_0)), p_x = p (1 - x/sqrt(alpha n)).
double gibbs_adjusted_main_term(const GibbsModel& model, double c);

// Same quantity through the truncated spectral series (cross-check route).
double gibbs_adjusted_main_term_series(const GibbsModel& model, double c);

std::vector<ProfilePoint> gibbs_profile_points(const GibbsModel& model,
                                               const std::vector<double>& cs, double epsilon = 1e-3);
ProfilePoint gibbs_profile_point(const GibbsModel& model, double c, double epsilon = 1e-3);

struct GibbsDiagnostics {
    double min_p_one_minus_p_times_n;  // hypothesis scale of the limit theorem
    double alpha_times_n;              // centering scale of the schedule
};
GibbsDiagnostics gibbs_diagnostics(const GibbsModel& model);

}  // namespace mixprof
