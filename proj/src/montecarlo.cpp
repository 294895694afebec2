#include "mixprof/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mixprof/special.hpp"

namespace mixprof {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t sm = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t Xoshiro256pp::next() {
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t Xoshiro256pp::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Xoshiro256pp::below: zero bound");
    std::uint64_t min = (-bound) % bound;
    for (;;) {
        std::uint64_t r = next();
        if (r >= min) return r % bound;
    }
}

double Xoshiro256pp::uniform01() { return double(next() >> 11) * 0x1.0p-53; }

Histogram simulate_kcycle_fixed_points(long n, long k, long t, const SimConfig& config) {
    if (n > 10000) throw std::length_error("simulate_kcycle_fixed_points: n capped at 1e4");
    if (k < 2 || k > n) throw std::out_of_range("simulate_kcycle_fixed_points: k outside 2..n");
    if (config.trajectories < 1)
        throw std::invalid_argument("simulate_kcycle_fixed_points: trajectories must be >= 1");
    Histogram hist;
    hist.counts.assign(n + 1, 0);
    std::vector<long> perm(n), pool(n), picked(k), images(k);
    for (long traj = 0; traj < config.trajectories; ++traj) {
        Xoshiro256pp rng(config.seed, static_cast<std::uint64_t>(traj));
        std::iota(perm.begin(), perm.end(), 0L);
        std::iota(pool.begin(), pool.end(), 0L);
        for (long step = 0; step < t; ++step) {
            // partial Fisher-Yates; the pool may stay permuted between steps
            // since any ordering draws the k positions uniformly
            for (long j = 0; j < k; ++j) {
                long idx = j + static_cast<long>(rng.below(static_cast<std::uint64_t>(n - j)));
                std::swap(pool[j], pool[idx]);
                picked[j] = pool[j];
            }
            // right-multiplication by the cycle (a_0 a_1 ... a_{k-1}):
            // new sigma(a_j) = sigma(a_{j+1 mod k})
            for (long j = 0; j < k; ++j) images[j] = perm[picked[(j + 1) % k]];
            for (long j = 0; j < k; ++j) perm[picked[j]] = images[j];
        }
        long fixed = 0;
        for (long i = 0; i < n; ++i)
            if (perm[i] == i) ++fixed;
        ++hist.counts[fixed];
        ++hist.total;
    }
    return hist;
}

Histogram simulate_ehrenfest_occupancy(long n, long m, long t, const SimConfig& config) {
    if (config.trajectories < 1)
        throw std::invalid_argument("simulate_ehrenfest_occupancy: trajectories must be >= 1");
    double steps = double(n) * double(config.trajectories);
    if (steps > 1e9)
        throw std::length_error("simulate_ehrenfest_occupancy: elementary step budget exceeded");
    Histogram hist;
    hist.counts.assign(n + 1, 0);
    std::vector<long> urn(n);
    for (long traj = 0; traj < config.trajectories; ++traj) {
        Xoshiro256pp rng(config.seed, static_cast<std::uint64_t>(traj));
        std::fill(urn.begin(), urn.end(), 0L);
        long displaced = 0;
        for (long step = 0; step < t; ++step) {
            long ball = static_cast<long>(rng.below(static_cast<std::uint64_t>(n)));
            long target = static_cast<long>(rng.below(static_cast<std::uint64_t>(m + 1)));
            if (urn[ball] == 0 && target != 0) ++displaced;
            if (urn[ball] != 0 && target == 0) --displaced;
            urn[ball] = target;
        }
        ++hist.counts[displaced];
        ++hist.total;
    }
    return hist;
}

Histogram simulate_gibbs(long n1, long n2, double p, long t, const SimConfig& config) {
    if (config.trajectories < 1)
        throw std::invalid_argument("simulate_gibbs: trajectories must be >= 1");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("simulate_gibbs: p outside (0,1)");
    const long n = n1 + n2;
    // per-state posterior CDF tables (hypergeometric: p cancels) and the noise CDF
    std::vector<std::vector<double>> post_cdf(n + 1);
    for (long x = 0; x <= n; ++x) {
        post_cdf[x].resize(n1 + 1);
        double acc = 0.0;
        for (long theta = 0; theta <= n1; ++theta) {
            acc += Rat(Rat(binomial_big(n1, theta) * binomial_big(n2, x - theta)) /
                       Rat(binomial_big(n, x)))
                       .get_d();
            post_cdf[x][theta] = acc;
        }
    }
    std::vector<double> noise_cdf(n2 + 1);
    {
        double acc = 0.0;
        for (long e = 0; e <= n2; ++e) {
            acc += std::exp(log_binomial_pmf(n2, p, e));
            noise_cdf[e] = acc;
        }
    }
    auto sample_cdf = [](const std::vector<double>& cdf, double u) {
        return static_cast<long>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    };
    Histogram hist;
    hist.counts.assign(n + 1, 0);
    for (long traj = 0; traj < config.trajectories; ++traj) {
        Xoshiro256pp rng(config.seed, static_cast<std::uint64_t>(traj));
        long x = 0;
        for (long step = 0; step < t; ++step) {
            long theta = sample_cdf(post_cdf[x], rng.uniform01());
            long eps = sample_cdf(noise_cdf, rng.uniform01());
            x = theta + eps;
        }
        ++hist.counts[x];
        ++hist.total;
    }
    return hist;
}

namespace {

double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::domain_error("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

ChiSquareResult chi_square_gate(const Histogram& hist, const std::vector<double>& expected_mass,
                                double significance) {
    if (hist.counts.size() != expected_mass.size())
        throw std::invalid_argument("chi_square_gate: dimension mismatch");
    const double total = double(hist.total);
    // pool adjacent cells until each expected count reaches 5
    auto expected_at = [&](std::size_t i) { return expected_mass[i] * total; };
    std::vector<double> obs, exp;
    double pooled_obs = 0.0, pooled_exp = 0.0;
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        if (expected_at(i) < 5.0) {
            pooled_obs += double(hist.counts[i]);
            pooled_exp += expected_at(i);
            if (pooled_exp >= 5.0) {
                obs.push_back(pooled_obs);
                exp.push_back(pooled_exp);
                pooled_obs = pooled_exp = 0.0;
            }
        } else {
            obs.push_back(double(hist.counts[i]));
            exp.push_back(expected_at(i));
        }
    }
    if (pooled_exp > 0.0) {
        if (!exp.empty()) {
            obs.back() += pooled_obs;
            exp.back() += pooled_exp;
        } else {
            obs.push_back(pooled_obs);
            exp.push_back(pooled_exp);
        }
    }
    ChiSquareResult res{0.0, 0, 1.0, true};
    if (exp.size() < 2) return res;  // degenerate: nothing to test
    for (std::size_t i = 0; i < exp.size(); ++i) {
        double diff = obs[i] - exp[i];
        res.statistic += diff * diff / exp[i];
    }
    res.dof = static_cast<long>(exp.size()) - 1;
    res.p_value = gamma_q(0.5 * double(res.dof), 0.5 * res.statistic);
    res.pass = res.p_value >= significance;
    return res;
}

}  // namespace mixprof
