#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixprof/numeric.hpp"

namespace mixprof {

// xoshiro256++ with splitmix64 seeding; uniform integers by rejection, so
// runs are reproducible bit-for-bit across platforms. The algorithm
// identifier below is recorded in simulation output headers.
inline constexpr const char* kRngAlgorithm = "xoshiro256++/splitmix64";

class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next();
    // uniform integer in [0, bound), modulo-bias-free
    std::uint64_t below(std::uint64_t bound);
    double uniform01();  // 53-bit mantissa in [0,1)

  private:
    std::uint64_t s_[4];
};

struct SimConfig {
    std::uint64_t seed = 0;
    long trajectories = 1;
};

struct Histogram {
    std::vector<long> counts;
    long total = 0;
};

// Fixed-point histogram of the k-cycle walk after t steps.
Histogram simulate_kcycle_fixed_points(long n, long k, long t, const SimConfig& config);

// Distance-from-start histogram of the urn chain after t steps.
Histogram simulate_ehrenfest_occupancy(long n, long m, long t, const SimConfig& config);

// State histogram of the Gibbs sampler after t steps from 0.
Histogram simulate_gibbs(long n1, long n2, double p, long t, const SimConfig& config);

// Upper regularised incomplete gamma Q(a, x).
double gamma_q(double a, double x);

struct ChiSquareResult {
    double statistic;
    long dof;
    double p_value;
    bool pass;  // p_value >= significance
};

// Pearson test of counts against expected masses; cells with expectation
// below 5 are pooled from the tails inward.
ChiSquareResult chi_square_gate(const Histogram& hist, const std::vector<double>& expected_mass,
                                double significance = 1e-3);

}  // namespace mixprof
