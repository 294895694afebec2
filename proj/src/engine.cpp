#include "mixprof/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mixprof {

namespace {

double log2_of_rat(const Rat& q) {
    if (q == 0) return -std::numeric_limits<double>::infinity();
    long exp_num = 0, exp_den = 0;
    double mant_num = mpz_get_d_2exp(&exp_num, q.get_num_mpz_t());
    double mant_den = mpz_get_d_2exp(&exp_den, q.get_den_mpz_t());
    return std::log2(std::fabs(mant_num)) - std::log2(std::fabs(mant_den)) +
           double(exp_num - exp_den);
}

}  // namespace

KrawtchoukSpectralEngine::KrawtchoukSpectralEngine(long n, Rat alpha, std::vector<Rat> eigenvalues)
    : n_(n), alpha_(std::move(alpha)), eigenvalues_(std::move(eigenvalues)) {
    if (n_ < 1) throw std::invalid_argument("engine: n must be >= 1");
    if (alpha_ <= 0) throw std::invalid_argument("engine: alpha must be positive");
    if (eigenvalues_.size() != static_cast<std::size_t>(n_ + 1))
        throw std::invalid_argument("engine: need eigenvalues for i = 0..n");
    if (eigenvalues_[0] != 1) throw std::invalid_argument("engine: lambda_0 must be 1");
    log2_lambda_.resize(eigenvalues_.size());
    for (std::size_t i = 0; i < eigenvalues_.size(); ++i)
        log2_lambda_[i] = log2_of_rat(abs(eigenvalues_[i]));
}

KrawtchoukSpectralEngine::Result KrawtchoukSpectralEngine::evaluate_one(long t, long m) const {
    return evaluate({Request{t, m}})[0];
}

std::vector<KrawtchoukSpectralEngine::Result> KrawtchoukSpectralEngine::evaluate(
    const std::vector<Request>& requests) const {
    const long n = n_;
    const double log2_alpha = log2_of_rat(alpha_);

    // Prescan in doubles: per request find a truncation index (terms whose a
    // priori bound falls below 2^-140 cannot move the result at double
    // output accuracy, since sum_l w_l = 1 and |K_i| <= max(1, alpha^-i))
    // and the peak term magnitude, which sets the working precision.
    double peak_log2 = 0.0;
    std::vector<long> imax(requests.size());
    long imax_all = 1;
    for (std::size_t rq = 0; rq < requests.size(); ++rq) {
        const long t = requests[rq].t;
        if (t < 0) throw std::invalid_argument("engine: negative time");
        if (requests[rq].m < 0 || requests[rq].m > n)
            throw std::invalid_argument("engine: restriction cutoff outside 0..n");
        long keep = std::max<long>(1, std::min<long>(requests[rq].m, n));
        for (long i = 1; i <= n; ++i) {
            double lg;
            if (log2_lambda_[i] == -std::numeric_limits<double>::infinity()) {
                if (t > 0) {
                    // eigenvalues are supplied nonincreasing in magnitude for
                    // both families; once zero the tail stays zero
                    break;
                }
                lg = 0.0;
            } else {
                lg = double(t) * log2_lambda_[i];
            }
            double bound = log_binomial(n, i) / std::log(2.0) + double(i) * log2_alpha + lg +
                           double(i) * std::max(0.0, -log2_alpha);
            if (bound >= -140.0) {
                keep = std::max(keep, i);
                peak_log2 = std::max(peak_log2, bound);
            }
        }
        imax[rq] = keep;
        imax_all = std::max(imax_all, keep);
    }

    const mp_bitcnt_t bits =
        static_cast<mp_bitcnt_t>(std::min(1 << 20, std::max(192, int(peak_log2) + 192)));

    auto make = [&](double v = 0.0) { return mpf_class(v, bits); };
    auto from_rat = [&](const Rat& q) {
        mpf_class f(0, bits);
        mpf_set_q(f.get_mpf_t(), q.get_mpq_t());
        return f;
    };

    // Recurrence coefficients:
    // K_{i+1} = ((A_i - l*(a+1)) K_i - i K_{i-1}) / (a(n-i)), A_i = a(n-i)+i.
    std::vector<mpf_class> A(imax_all), Dinv(imax_all), Ci(imax_all);
    for (long i = 0; i < imax_all; ++i) {
        Rat an_i = alpha_ * Rat(n - i);
        A[i] = from_rat(an_i + Rat(i));
        mpf_class d = from_rat(an_i);
        Dinv[i] = make(1.0);
        mpf_div(Dinv[i].get_mpf_t(), Dinv[i].get_mpf_t(), d.get_mpf_t());
        Ci[i] = make(double(i));
    }
    mpf_class alpha_plus_one = from_rat(alpha_ + 1);

    // g[rq][i] = a^i binom(n,i) lambda_i^t
    std::vector<std::vector<mpf_class>> g(requests.size());
    for (std::size_t rq = 0; rq < requests.size(); ++rq) {
        g[rq].assign(static_cast<std::size_t>(imax[rq]) + 1, make());
        Rat apow(1);
        for (long i = 1; i <= imax[rq]; ++i) {
            apow *= alpha_;
            if (eigenvalues_[i] == 0 && requests[rq].t > 0) continue;  // g stays 0
            mpf_class lam = from_rat(eigenvalues_[i]);
            mpf_class lam_t = make();
            mpf_pow_ui(lam_t.get_mpf_t(), lam.get_mpf_t(),
                       static_cast<unsigned long>(requests[rq].t));
            mpf_class coef = from_rat(apow * Rat(binomial_big(n, i)));
            g[rq][i] = coef * lam_t;
        }
    }

    // w_0 = (a+1)^-n; w_{l+1} = w_l * a (n-l) / (l+1)
    mpf_class w = make(1.0);
    {
        mpf_class denom = make();
        mpf_pow_ui(denom.get_mpf_t(), alpha_plus_one.get_mpf_t(), static_cast<unsigned long>(n));
        mpf_div(w.get_mpf_t(), w.get_mpf_t(), denom.get_mpf_t());
    }
    mpf_class alpha_f = from_rat(alpha_);

    std::vector<mpf_class> acc_full(requests.size(), make()), acc_main(requests.size(), make());
    std::vector<mpf_class> inner_full(requests.size(), make()), inner_main(requests.size(), make());

    mpf_class k_prev = make(), k_cur = make(), k_next = make();
    mpf_class lB = make(), tmp = make(), tmp2 = make();

    for (long l = 0; l <= n; ++l) {
        mpf_set_d(k_prev.get_mpf_t(), 0.0);  // K_{-1}
        mpf_set_d(k_cur.get_mpf_t(), 1.0);   // K_0
        mpf_set_si(lB.get_mpf_t(), l);
        mpf_mul(lB.get_mpf_t(), lB.get_mpf_t(), alpha_plus_one.get_mpf_t());
        for (std::size_t rq = 0; rq < requests.size(); ++rq) {
            mpf_set_d(inner_full[rq].get_mpf_t(), 0.0);
            mpf_set_d(inner_main[rq].get_mpf_t(), 0.0);
        }
        for (long i = 1; i <= imax_all; ++i) {
            // advance K_{i-1}, K_i -> K_{i+1} is produced at loop end; here
            // produce K_i from (K_{i-2}, K_{i-1}) stored in (k_prev, k_cur)
            mpf_sub(tmp.get_mpf_t(), A[i - 1].get_mpf_t(), lB.get_mpf_t());
            mpf_mul(tmp.get_mpf_t(), tmp.get_mpf_t(), k_cur.get_mpf_t());
            if (i >= 2) {
                mpf_mul(tmp2.get_mpf_t(), Ci[i - 1].get_mpf_t(), k_prev.get_mpf_t());
                mpf_sub(tmp.get_mpf_t(), tmp.get_mpf_t(), tmp2.get_mpf_t());
            }
            mpf_mul(k_next.get_mpf_t(), tmp.get_mpf_t(), Dinv[i - 1].get_mpf_t());
            mpf_swap(k_prev.get_mpf_t(), k_cur.get_mpf_t());
            mpf_swap(k_cur.get_mpf_t(), k_next.get_mpf_t());
            // k_cur now holds K_i(l)
            for (std::size_t rq = 0; rq < requests.size(); ++rq) {
                if (i > imax[rq]) continue;
                if (mpf_sgn(g[rq][i].get_mpf_t()) == 0) continue;
                mpf_mul(tmp2.get_mpf_t(), g[rq][i].get_mpf_t(), k_cur.get_mpf_t());
                mpf_add(inner_full[rq].get_mpf_t(), inner_full[rq].get_mpf_t(), tmp2.get_mpf_t());
                if (i <= requests[rq].m)
                    mpf_add(inner_main[rq].get_mpf_t(), inner_main[rq].get_mpf_t(),
                            tmp2.get_mpf_t());
            }
        }
        for (std::size_t rq = 0; rq < requests.size(); ++rq) {
            mpf_abs(tmp.get_mpf_t(), inner_full[rq].get_mpf_t());
            mpf_mul(tmp.get_mpf_t(), tmp.get_mpf_t(), w.get_mpf_t());
            mpf_add(acc_full[rq].get_mpf_t(), acc_full[rq].get_mpf_t(), tmp.get_mpf_t());
            mpf_abs(tmp.get_mpf_t(), inner_main[rq].get_mpf_t());
            mpf_mul(tmp.get_mpf_t(), tmp.get_mpf_t(), w.get_mpf_t());
            mpf_add(acc_main[rq].get_mpf_t(), acc_main[rq].get_mpf_t(), tmp.get_mpf_t());
        }
        if (l < n) {
            mpf_set_si(tmp.get_mpf_t(), n - l);
            mpf_mul(tmp.get_mpf_t(), tmp.get_mpf_t(), alpha_f.get_mpf_t());
            mpf_mul(w.get_mpf_t(), w.get_mpf_t(), tmp.get_mpf_t());
            mpf_set_si(tmp.get_mpf_t(), l + 1);
            mpf_div(w.get_mpf_t(), w.get_mpf_t(), tmp.get_mpf_t());
        }
    }

    std::vector<Result> out(requests.size());
    for (std::size_t rq = 0; rq < requests.size(); ++rq)
        out[rq] = {acc_full[rq].get_d(), acc_main[rq].get_d()};
    return out;
}

}  // namespace mixprof
