#include "mixprof/hypercube.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mixprof/special.hpp"

namespace mixprof {

namespace {

// In-place update of the coefficient row: c <- c * (1-z)/(1+z).
// Division first (exact while r < n), then the (1-z) factor; integer adds only.
void advance_coefficients(std::vector<BigInt>& c) {
    const std::size_t len = c.size();
    std::vector<BigInt> d(len);
    d[0] = c[0];
    for (std::size_t j = 1; j < len; ++j) d[j] = c[j] - d[j - 1];
    c[0] = d[0];
    for (std::size_t j = 1; j < len; ++j) c[j] = d[j] - d[j - 1];
}

}  // namespace

std::vector<double> hypercube_exact_tv_batch(long n, const std::vector<long>& ts) {
    if (n < 1) throw std::invalid_argument("hypercube_exact_tv: n must be >= 1");
    for (long t : ts)
        if (t < 0) throw std::invalid_argument("hypercube_exact_tv: negative time");

    // Precision: cover the largest |c_{r,j} (1-j/n)^t| = binom-scale peak plus
    // the result accuracy; coefficients stay below binom(n, n/2) <= 2^n.
    double peak = double(n);
    for (long t : ts)
        for (long j = 1; j < n; ++j) {
            double b = log_binomial(n, j) / std::log(2.0) +
                       double(t) * std::log2(double(n - j) / double(n));
            peak = std::max(peak, b);
        }
    const mp_bitcnt_t bits =
        static_cast<mp_bitcnt_t>(std::min(1 << 20, std::max(192, int(peak) + 192)));

    // weights[q][j] = (1 - j/n)^{t_q}
    std::vector<std::vector<mpf_class>> weights(ts.size());
    std::vector<long> jcut(ts.size(), n);
    for (std::size_t q = 0; q < ts.size(); ++q) {
        weights[q].assign(n + 1, mpf_class(0, bits));
        for (long j = 1; j <= n; ++j) {
            mpf_class base(0, bits);
            mpf_set_si(base.get_mpf_t(), n - j);
            mpf_div_ui(base.get_mpf_t(), base.get_mpf_t(), static_cast<unsigned long>(n));
            mpf_pow_ui(weights[q][j].get_mpf_t(), base.get_mpf_t(),
                       static_cast<unsigned long>(ts[q]));
        }
        // positions beyond which |c_{r,j} w_j| cannot reach 2^-120
        long cut = 1;
        for (long j = 1; j <= n; ++j) {
            double b = log_binomial(n, j) / std::log(2.0) +
                       (j == n ? -std::numeric_limits<double>::infinity()
                               : double(ts[q]) * std::log2(double(n - j) / double(n)));
            if (ts[q] == 0) b = log_binomial(n, j) / std::log(2.0);
            if (b >= -120.0) cut = j;
        }
        jcut[q] = cut;
    }

    std::vector<BigInt> coeff(n + 1);
    for (long j = 0; j <= n; ++j) coeff[j] = binomial_big(n, j);  // r = 0: (1+z)^n

    std::vector<mpf_class> acc(ts.size(), mpf_class(0, bits));
    mpf_class inner(0, bits), term(0, bits), cf(0, bits), wrow(0, bits);

    for (long r = 0; r <= n; ++r) {
        if (r > 0) advance_coefficients(coeff);
        for (std::size_t q = 0; q < ts.size(); ++q) {
            mpf_set_d(inner.get_mpf_t(), 0.0);
            for (long j = 1; j <= jcut[q]; ++j) {
                if (coeff[j] == 0) continue;
                mpf_set_z(cf.get_mpf_t(), coeff[j].get_mpz_t());
                mpf_mul(term.get_mpf_t(), cf.get_mpf_t(), weights[q][j].get_mpf_t());
                mpf_add(inner.get_mpf_t(), inner.get_mpf_t(), term.get_mpf_t());
            }
            mpf_abs(inner.get_mpf_t(), inner.get_mpf_t());
            mpf_set_z(wrow.get_mpf_t(), binomial_big(n, r).get_mpz_t());
            mpf_mul(term.get_mpf_t(), wrow.get_mpf_t(), inner.get_mpf_t());
            mpf_add(acc[q].get_mpf_t(), acc[q].get_mpf_t(), term.get_mpf_t());
        }
    }

    std::vector<double> out(ts.size());
    mpf_class two_n(0, bits);
    mpf_set_ui(two_n.get_mpf_t(), 1);
    mpf_mul_2exp(two_n.get_mpf_t(), two_n.get_mpf_t(), static_cast<mp_bitcnt_t>(n));
    for (std::size_t q = 0; q < ts.size(); ++q) {
        mpf_div(acc[q].get_mpf_t(), acc[q].get_mpf_t(), two_n.get_mpf_t());
        out[q] = 0.5 * acc[q].get_d();
    }
    return out;
}

double hypercube_exact_tv(long n, long t) { return hypercube_exact_tv_batch(n, {t})[0]; }

Rat hypercube_exact_tv_rational(long n, long t) {
    if (n < 1 || n > 128) throw std::length_error("hypercube_exact_tv_rational: n capped at 128");
    if (t < 0 || t > 4000) throw std::length_error("hypercube_exact_tv_rational: t capped at 4000");
    std::vector<BigInt> coeff(n + 1);
    for (long j = 0; j <= n; ++j) coeff[j] = binomial_big(n, j);
    std::vector<BigInt> wt(n + 1);  // (n-j)^t
    for (long j = 1; j <= n; ++j)
        mpz_ui_pow_ui(wt[j].get_mpz_t(), static_cast<unsigned long>(n - j),
                      static_cast<unsigned long>(t));
    BigInt acc(0);
    for (long r = 0; r <= n; ++r) {
        if (r > 0) advance_coefficients(coeff);
        BigInt inner(0);
        for (long j = 1; j <= n; ++j) inner += coeff[j] * wt[j];
        acc += binomial_big(n, r) * abs(inner);
    }
    BigInt denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(t));
    denom *= factorial_big(2);  // times 2 for the half
    BigInt two_n(1);
    mpz_mul_2exp(two_n.get_mpz_t(), two_n.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
    return Rat(acc) / Rat(two_n * denom);
}

long hypercube_schedule(long n, double c) {
    double raw = 0.5 * double(n) * std::log(double(n)) + c * double(n);
    long t = std::llround(raw);
    if (t < 1) throw std::domain_error("hypercube_schedule: schedule not a positive integer");
    return t;
}

std::vector<ProfilePoint> hypercube_profile_points(long n, const std::vector<double>& cs) {
    std::vector<long> ts;
    for (double c : cs) ts.push_back(hypercube_schedule(n, c));
    auto tvs = hypercube_exact_tv_batch(n, ts);
    std::vector<ProfilePoint> out;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        ProfilePoint pt;
        pt.c = cs[i];
        pt.t = ts[i];
        pt.exact_tv = tvs[i];
        pt.main_term = tvs[i];  // the pipeline is exact: no truncation
        pt.error_term = 0.0;
        pt.limit_value = gaussian_profile(cs[i]);
        out.push_back(pt);
    }
    return out;
}

ProfilePoint hypercube_profile_point(long n, double c) {
    return hypercube_profile_points(n, {c})[0];
}

template <class T>
Chain<T> hypercube_chain(long n) {
    if (n < 1 || n > 14) throw std::length_error("hypercube_chain: oracle kernel capped at n = 14");
    const long states = 1L << n;
    Matrix<T> kernel(states, states, T(0));
    T hold = scalar_traits<T>::from_ratio(1, 2);
    T flip = scalar_traits<T>::from_ratio(1, 2 * n);
    for (long x = 0; x < states; ++x) {
        kernel(x, x) += hold;
        for (long i = 0; i < n; ++i) kernel(x, x ^ (1L << i)) += flip;
    }
    std::vector<T> station(states, scalar_traits<T>::from_ratio(1, states));
    return Chain<T>(std::move(kernel), Distribution<T>(std::move(station)), true);
}

template Chain<double> hypercube_chain<double>(long);
template Chain<Rat> hypercube_chain<Rat>(long);

}  // namespace mixprof
