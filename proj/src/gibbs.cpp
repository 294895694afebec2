#include "mixprof/gibbs.hpp"

#include <algorithm>
#include <cmath>

#include "mixprof/engine.hpp"

namespace mixprof {

Rat gibbs_posterior_exact(const GibbsModel& model, long theta, long x) {
    if (x < 0 || x > model.n()) throw std::out_of_range("gibbs_posterior_exact: x outside 0..n");
    if (theta < 0 || theta > model.n1) return Rat(0);
    return Rat(binomial_big(model.n1, theta) * binomial_big(model.n2, x - theta)) /
           Rat(binomial_big(model.n(), x));
}

template <>
Chain<Rat> gibbs_kernel<Rat>(const GibbsModel& model) {
    const long n = model.n();
    if (static_cast<std::size_t>(n) + 1 > kMaxDenseStates)
        throw std::length_error("gibbs_kernel: state space exceeds dense cap");
    const Rat q = Rat(1) - model.p;
    std::vector<Rat> noise(model.n2 + 1);
    for (long e = 0; e <= model.n2; ++e)
        noise[e] = Rat(binomial_big(model.n2, e)) * pow_rat(model.p, e) *
                   pow_rat(q, static_cast<unsigned long>(model.n2 - e));
    Matrix<Rat> kernel(n + 1, n + 1, Rat(0));
    for (long x = 0; x <= n; ++x)
        for (long theta = std::max(0L, x - model.n2); theta <= std::min<long>(model.n1, x); ++theta) {
            Rat h = gibbs_posterior_exact(model, theta, x);
            for (long e = 0; e <= model.n2; ++e) kernel(x, theta + e) += h * noise[e];
        }
    std::vector<Rat> station(n + 1);
    for (long x = 0; x <= n; ++x)
        station[x] = Rat(binomial_big(n, x)) * pow_rat(model.p, x) *
                     pow_rat(q, static_cast<unsigned long>(n - x));
    return Chain<Rat>(std::move(kernel), Distribution<Rat>(std::move(station)), true);
}

template <>
Chain<double> gibbs_kernel<double>(const GibbsModel& model) {
    const long n = model.n();
    if (static_cast<std::size_t>(n) + 1 > kMaxDenseStates)
        throw std::length_error("gibbs_kernel: state space exceeds dense cap");
    const double pd = to_double(model.p);
    // log-domain assembly keeps binomials for n in the thousands in range
    std::vector<double> log_noise(model.n2 + 1);
    for (long e = 0; e <= model.n2; ++e) log_noise[e] = log_binomial_pmf(model.n2, pd, e);
    Matrix<double> kernel(n + 1, n + 1, 0.0);
    for (long x = 0; x <= n; ++x) {
        for (long theta = std::max(0L, x - model.n2); theta <= std::min<long>(model.n1, x); ++theta) {
            double log_h = log_binomial(model.n1, theta) + log_binomial(model.n2, x - theta) -
                           log_binomial(n, x);
            double h = std::exp(log_h);
            for (long e = 0; e <= model.n2; ++e)
                kernel(x, theta + e) += h * std::exp(log_noise[e]);
        }
        // renormalise the row against accumulated rounding
        double row = 0.0;
        for (long y = 0; y <= n; ++y) row += kernel(x, y);
        for (long y = 0; y <= n; ++y) kernel(x, y) /= row;
    }
    std::vector<double> station(n + 1);
    for (long x = 0; x <= n; ++x) station[x] = std::exp(log_binomial_pmf(n, pd, x));
    double mass = 0.0;
    for (double s : station) mass += s;
    for (double& s : station) s /= mass;
    return Chain<double>(std::move(kernel), Distribution<double>(std::move(station)), true);
}

std::vector<Rat> gibbs_eigenvalues_exact(const GibbsModel& model) {
    const long n = model.n();
    std::vector<Rat> lambda(n + 1);
    lambda[0] = 1;
    for (long i = 0; i < n; ++i)
        lambda[i + 1] = i < model.n1 ? Rat(lambda[i] * frac(model.n1 - i, n - i)) : Rat(0);
    return lambda;
}

EigenSystem gibbs_eigensystem(const GibbsModel& model) {
    const long n = model.n();
    if (n > 2000) throw std::length_error("gibbs_eigensystem: materialised system capped at n = 2000");
    KrawtchoukParams kp(n, model.alpha());
    auto lambda = gibbs_eigenvalues_exact(model);
    const double alpha_d = to_double(model.alpha());
    EigenSystem es{{}, {}, Distribution<double>(std::vector<double>(1, 1.0))};
    es.eigenvalues.resize(n + 1);
    es.vectors.resize(n + 1);
    for (long i = 0; i <= n; ++i) {
        es.eigenvalues[i] = to_double(lambda[i]);
        double scale = std::exp(0.5 * (double(i) * std::log(alpha_d) + log_binomial(n, i)));
        std::vector<double> f(n + 1);
        for (long x = 0; x <= n; ++x) f[x] = scale * krawtchouk(kp, i, x);
        es.vectors[i] = std::move(f);
    }
    const double pd = to_double(model.p);
    std::vector<double> station(n + 1);
    for (long x = 0; x <= n; ++x) station[x] = std::exp(log_binomial_pmf(n, pd, x));
    double mass = 0.0;
    for (double s : station) mass += s;
    for (double& s : station) s /= mass;
    es.pi = Distribution<double>(std::move(station));
    return es;
}

long gibbs_mixing_schedule(const GibbsModel& model, double c) {
    const double alpha_n = to_double(model.alpha()) * double(model.n());
    const double lambda1 = double(model.n1) / double(model.n());
    const double raw = (0.5 * std::log(alpha_n) + c) / (-std::log(lambda1));
    long t = std::llround(raw);
    if (t < 1) throw std::domain_error("gibbs_mixing_schedule: schedule not a positive integer");
    return t;
}

double gibbs_effective_c(const GibbsModel& model, long t) {
    const double lambda1 = double(model.n1) / double(model.n());
    const double alpha_n = to_double(model.alpha()) * double(model.n());
    return -(double(t) * std::log(lambda1) + 0.5 * std::log(alpha_n));
}

GibbsErrorTerms gibbs_error_term(const GibbsModel& model, long t, long M) {
    if (M < 1) throw std::invalid_argument("gibbs_error_term: M must be >= 1");
    const long n = model.n();
    const double log_alpha = std::log(to_double(model.alpha()));
    const double log_lambda1 = std::log(double(model.n1) / double(n));
    GibbsErrorTerms out{0.0, 0.0};
    double log_lambda_i = 0.0;
    for (long i = 1; i <= n; ++i) {
        bool lambda_zero = i > model.n1;
        if (!lambda_zero) log_lambda_i += std::log(double(model.n1 - (i - 1)) / double(n - (i - 1)));
        if (i <= M) continue;
        double log_f0 = 0.5 * (double(i) * log_alpha + log_binomial(n, i));
        if (!lambda_zero)
            out.et += std::exp(log_f0 + double(t) * log_lambda_i);
        else if (t == 0)
            out.et += std::exp(log_f0);  // lambda^0 = 1 even on the null part
        out.et_prime += std::exp(log_f0 + double(i) * double(t) * log_lambda1);
    }
    return out;
}

double gibbs_main_term(const GibbsModel& model, long t, long M) {
    KrawtchoukSpectralEngine engine(model.n(), model.alpha(), gibbs_eigenvalues_exact(model));
    return engine.evaluate_one(t, std::min<long>(M, model.n())).restricted_sum;
}

double gibbs_exact_tv(const GibbsModel& model, long t) {
    KrawtchoukSpectralEngine engine(model.n(), model.alpha(), gibbs_eigenvalues_exact(model));
    return 0.5 * engine.evaluate_one(t, model.n()).full_sum;
}

double gibbs_adjusted_main_term(const GibbsModel& model, double c) {
    const long n = model.n();
    const double alpha_d = to_double(model.alpha());
    const double p0 = alpha_d / (alpha_d + 1.0);
    const double pz = p0 * (1.0 - std::exp(-c) / std::sqrt(alpha_d * double(n)));
    if (!(pz > 0.0 && pz < 1.0))
        throw std::domain_error("gibbs_adjusted_main_term: shifted parameter outside (0,1)");
    return 2.0 * tv_binomials(n, pz, p0);
}

double gibbs_adjusted_main_term_series(const GibbsModel& model, double c) {
    // sum_x m(x) |sum_{i>=1} binom(n,i) K_i(x) (alpha z)^i| with
    // z = e^{-c}/sqrt(alpha n). The engine's inner terms already carry
    // alpha^i binom(n,i) K_i, so feeding eigenvalues mu_i = z^i at t = 1
    // produces exactly the series.
    const long n = model.n();
    const Rat alpha = model.alpha();
    const double alpha_d = to_double(alpha);
    const double z = std::exp(-c) / std::sqrt(alpha_d * double(n));
    // engine wants rationals: z is rounded to a dyadic rational; the series
    // is continuous in z and the perturbation sits far below every
    // comparison tolerance used downstream
    mpf_class zf(z, 512);
    mpq_class zq;
    mpq_set_f(zq.get_mpq_t(), zf.get_mpf_t());
    std::vector<Rat> mu(n + 1);
    mu[0] = 1;
    for (long i = 1; i <= n; ++i) mu[i] = Rat(mu[i - 1] * Rat(zq));
    KrawtchoukSpectralEngine engine(n, alpha, std::move(mu));
    return engine.evaluate_one(1, n).full_sum;
}

std::vector<ProfilePoint> gibbs_profile_points(const GibbsModel& model,
                                               const std::vector<double>& cs, double epsilon) {
    KrawtchoukSpectralEngine engine(model.n(), model.alpha(), gibbs_eigenvalues_exact(model));
    std::vector<KrawtchoukSpectralEngine::Request> reqs;
    std::vector<long> Ms;
    for (double c : cs) {
        long t = gibbs_mixing_schedule(model, c);
        long M = std::min<long>(truncation_index(c, epsilon), model.n());
        reqs.push_back({t, M});
        Ms.push_back(M);
    }
    auto results = engine.evaluate(reqs);
    std::vector<ProfilePoint> out;
    for (std::size_t idx = 0; idx < cs.size(); ++idx) {
        ProfilePoint pt;
        pt.c = cs[idx];
        pt.t = reqs[idx].t;
        pt.exact_tv = 0.5 * results[idx].full_sum;
        pt.main_term = 0.5 * results[idx].restricted_sum;
        pt.error_term = 0.5 * gibbs_error_term(model, reqs[idx].t, Ms[idx]).et;
        pt.limit_value = gaussian_profile(cs[idx]);
        out.push_back(pt);
    }
    return out;
}

ProfilePoint gibbs_profile_point(const GibbsModel& model, double c, double epsilon) {
    return gibbs_profile_points(model, {c}, epsilon)[0];
}

GibbsDiagnostics gibbs_diagnostics(const GibbsModel& model) {
    const double pd = to_double(model.p);
    return {std::min(pd, 1.0 - pd) * double(model.n()),
            to_double(model.alpha()) * double(model.n())};
}

}  // namespace mixprof
