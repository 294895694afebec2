#include "mixprof/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mixprof/chain.hpp"
#include "mixprof/gelfand.hpp"
#include "mixprof/hypercube.hpp"
#include "mixprof/montecarlo.hpp"
#include "mixprof/special.hpp"
#include "mixprof/spectral.hpp"
#include "mixprof/symmetric.hpp"

namespace mixprof {

namespace {

// Random walk on a weighted graph with positive self-loops: reversible,
// irreducible and aperiodic by construction.
Chain<double> random_reversible_chain(Xoshiro256pp& rng, std::size_t states) {
    Matrix<double> w(states, states);
    for (std::size_t x = 0; x < states; ++x) {
        w(x, x) = 0.2 + rng.uniform01();
        for (std::size_t y = x + 1; y < states; ++y) w(x, y) = w(y, x) = 0.05 + rng.uniform01();
    }
    std::vector<double> strength(states, 0.0);
    double total = 0.0;
    for (std::size_t x = 0; x < states; ++x)
        for (std::size_t y = 0; y < states; ++y) {
            strength[x] += w(x, y);
            total += w(x, y);
        }
    Matrix<double> kernel(states, states);
    std::vector<double> pi(states);
    for (std::size_t x = 0; x < states; ++x) {
        pi[x] = strength[x] / total;
        for (std::size_t y = 0; y < states; ++y) kernel(x, y) = w(x, y) / strength[x];
    }
    return Chain<double>(std::move(kernel), Distribution<double>(std::move(pi)), true);
}

Chain<double> lazy_cycle_chain(std::size_t states) {
    Matrix<double> kernel(states, states, 0.0);
    for (std::size_t x = 0; x < states; ++x) {
        kernel(x, x) += 0.5;
        kernel(x, (x + 1) % states) += 0.25;
        kernel(x, (x + states - 1) % states) += 0.25;
    }
    return Chain<double>(std::move(kernel), Distribution<double>::uniform(states), true);
}

std::vector<std::size_t> random_index_set(Xoshiro256pp& rng, std::size_t n) {
    std::vector<std::size_t> I;
    for (std::size_t i = 1; i < n; ++i)
        if (rng.uniform01() < 0.5) I.push_back(i);
    return I;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::vector<CheckResult> verify_lemma1(std::uint64_t seed, int chains) {
    std::vector<CheckResult> out;
    Xoshiro256pp rng(seed);
    int sandwich_failures = 0, residual_failures = 0;
    double worst_excess = 0.0, worst_residual = 0.0;
    for (int rep = 0; rep < chains; ++rep) {
        std::size_t states = 3 + rng.below(10);  // up to 12
        Chain<double> chain = random_reversible_chain(rng, states);
        EigenSystem es = symmetric_eigendecomposition(chain);
        // eigen-residual: max entry of (P f_i - lambda_i f_i)
        for (std::size_t i = 0; i < es.size(); ++i)
            for (std::size_t x = 0; x < states; ++x) {
                double acc = 0.0;
                for (std::size_t y = 0; y < states; ++y)
                    acc += chain.kernel()(x, y) * es.vectors[i][y];
                double res = std::fabs(acc - es.eigenvalues[i] * es.vectors[i][x]);
                worst_residual = std::max(worst_residual, res);
                if (res > 1e-8) ++residual_failures;
            }
        std::size_t x = rng.below(states);
        long t = static_cast<long>(rng.below(51));
        auto I = random_index_set(rng, states);
        double tv = to_double(tv_distance(evolve(chain, x, t), chain.stationary()));
        double mt = main_term(es, x, t, I);
        double et = error_term(es, x, t, I);
        double excess = std::fabs(tv - mt) - et;
        worst_excess = std::max(worst_excess, excess);
        if (excess > 1e-9) ++sandwich_failures;
    }
    out.push_back({"lemma1.sandwich." + std::to_string(chains) + "chains", sandwich_failures == 0,
                   "worst |tv-MT|-ET = " + format_double(worst_excess)});
    out.push_back({"lemma1.eigen_residual", residual_failures == 0,
                   "worst residual = " + format_double(worst_residual)});
    return out;
}

std::vector<CheckResult> verify_corollaries(std::uint64_t seed) {
    std::vector<CheckResult> out;
    Xoshiro256pp rng(seed);
    int typical_failures = 0;
    double worst = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t states = 3 + rng.below(8);
        Chain<double> chain = random_reversible_chain(rng, states);
        EigenSystem es = symmetric_eigendecomposition(chain);
        long t = static_cast<long>(rng.below(30));
        auto I = random_index_set(rng, states);
        double dtyp = 0.0;
        for (std::size_t x = 0; x < states; ++x)
            dtyp += chain.stationary()[x] *
                    to_double(tv_distance(evolve(chain, x, t), chain.stationary()));
        auto pair = typical_tv_approx(es, t, I);
        double excess = std::fabs(dtyp - pair.main) - pair.error;
        worst = std::max(worst, excess);
        if (excess > 1e-9) ++typical_failures;
    }
    out.push_back({"corollary.typical.50chains", typical_failures == 0,
                   "worst |dtyp-MT|-ET = " + format_double(worst)});

    int transitive_failures = 0;
    double worst_trans = 0.0;
    for (std::size_t states = 3; states <= 8; ++states) {
        Chain<double> chain = lazy_cycle_chain(states);
        EigenSystem es = symmetric_eigendecomposition(chain);
        for (long t : {0L, 1L, 3L, 7L, 15L}) {
            auto I = random_index_set(rng, states);
            double tv = to_double(tv_distance(evolve(chain, 0, t), chain.stationary()));
            auto pair = transitive_tv_approx(es, t, I);
            double excess = std::fabs(tv - pair.main) - pair.error;
            worst_trans = std::max(worst_trans, excess);
            if (excess > 1e-9) ++transitive_failures;
        }
    }
    for (long n : {2L, 3L}) {
        Chain<double> chain = hypercube_chain<double>(n);
        EigenSystem es = symmetric_eigendecomposition(chain);
        for (long t : {0L, 1L, 2L, 5L, 9L}) {
            auto I = random_index_set(rng, chain.size());
            double tv = to_double(tv_distance(evolve(chain, 0, t), chain.stationary()));
            auto pair = transitive_tv_approx(es, t, I);
            double excess = std::fabs(tv - pair.main) - pair.error;
            worst_trans = std::max(worst_trans, excess);
            if (excess > 1e-9) ++transitive_failures;
        }
    }
    out.push_back({"corollary.transitive.cycles_hypercubes", transitive_failures == 0,
                   "worst excess = " + format_double(worst_trans)});
    return out;
}

std::vector<CheckResult> verify_krawtchouk() {
    std::vector<CheckResult> out;
    const std::vector<Rat> alphas{Rat(1), Rat(2), Rat(1, 3)};
    bool all_zero = true;
    std::string witness = "all residuals exactly zero";
    for (const Rat& alpha : alphas) {
        for (long n = 1; n <= 20; ++n) {
            KrawtchoukParams kp(n, alpha);
            std::vector<std::vector<Rat>> table(n + 1, std::vector<Rat>(n + 1));
            for (long i = 0; i <= n; ++i)
                for (long x = 0; x <= n; ++x) table[i][x] = krawtchouk_exact(kp, i, x);
            for (long i = 0; i <= n && all_zero; ++i)
                for (long j = i; j <= n; ++j) {
                    Rat lhs(0), apow(1);
                    for (long x = 0; x <= n; ++x) {
                        lhs += table[i][x] * table[j][x] * apow * Rat(binomial_big(n, x));
                        apow *= alpha;
                    }
                    Rat rhs = i == j ? Rat(pow_rat(alpha + 1, n) /
                                           (pow_rat(alpha, i) * Rat(binomial_big(n, i))))
                                     : Rat(0);
                    if (lhs != rhs) {
                        all_zero = false;
                        witness = "violated at n=" + std::to_string(n) + " i=" + std::to_string(i) +
                                  " j=" + std::to_string(j);
                        break;
                    }
                }
        }
    }
    out.push_back({"krawtchouk.orthogonality.exact.n<=20", all_zero, witness});
    return out;
}

std::vector<CheckResult> verify_characters() {
    std::vector<CheckResult> out;

    bool dims_ok = true;
    for (long n = 1; n <= 12 && dims_ok; ++n) {
        BigInt acc(0);
        for (const Partition& p : partitions(n)) {
            BigInt d = hook_dimension(p);
            acc += d * d;
        }
        dims_ok = acc == factorial_big(n);
    }
    out.push_back({"characters.dimension_sum_squares.n<=12", dims_ok, "sum d^2 = n!"});

    bool orth_ok = true;
    for (long n = 1; n <= 10 && orth_ok; ++n) {
        auto table = CharacterTable::get(n);
        const std::size_t count = table->labels().size();
        for (std::size_t c1 = 0; c1 < count && orth_ok; ++c1)
            for (std::size_t c2 = c1; c2 < count; ++c2) {
                BigInt acc(0);
                for (std::size_t l = 0; l < count; ++l)
                    acc += table->chi(l, c1) * table->chi(l, c2);
                BigInt expected(0);
                if (c1 == c2) {
                    expected = factorial_big(n);
                    mpz_divexact(expected.get_mpz_t(), expected.get_mpz_t(),
                                 table->class_sizes()[c1].get_mpz_t());
                }
                if (acc != expected) {
                    orth_ok = false;
                    break;
                }
            }
    }
    out.push_back({"characters.column_orthogonality.n<=10", orth_ok, "exact"});

    BigInt chi21 = mn_character(Partition({2, 1}), Partition({3}));
    out.push_back({"characters.chi_(2,1)_on_3cycle", chi21 == -1, "value " + chi21.get_str()});

    // (1/r!) sum over lambda_1 = n-r of d_{lambda*} chi_lambda(sigma)
    // equals T_r(Fix sigma) whenever sigma has a cycle longer than r.
    bool tr_ok = true;
    std::string tr_detail = "identity exact for all n <= 10, r <= 4";
    for (long n = 2; n <= 10 && tr_ok; ++n) {
        auto table = CharacterTable::get(n);
        for (long r = 1; r <= std::min(4L, n - 1) && tr_ok; ++r) {
            for (std::size_t c = 0; c < table->labels().size(); ++c) {
                const Partition& cls = table->labels()[c];
                if (cls.part(1) <= r) continue;  // needs a cycle longer than r
                long fixed = 0;
                for (long p : cls.parts())
                    if (p == 1) ++fixed;
                Rat lhs(0);
                for (std::size_t l = 0; l < table->labels().size(); ++l) {
                    const Partition& lambda = table->labels()[l];
                    if (lambda.part(1) != n - r) continue;
                    lhs += Rat(hook_dimension(lambda.without_first_row())) *
                           Rat(table->chi(l, c));
                }
                lhs /= Rat(factorial_big(r));
                if (lhs != t_r_polynomial(r, fixed)) {
                    tr_ok = false;
                    tr_detail = "violated at n=" + std::to_string(n) + " r=" + std::to_string(r);
                    break;
                }
            }
        }
    }
    out.push_back({"characters.t_r_identity.n<=10.r<=4", tr_ok, tr_detail});

    bool frob_ok = true;
    for (long n = 1; n <= 14 && frob_ok; ++n)
        for (const Partition& lambda : partitions(n)) {
            FrobeniusCoords fc = frobenius_coords(lambda);
            long r = n - lambda.part(1);
            if (!fc.a.empty() && fc.a[0] != n - r - 1) frob_ok = false;
            for (std::size_t i = 1; i < fc.a.size(); ++i)
                if (fc.a[i] > r) frob_ok = false;
            for (long b : fc.b)
                if (b > r) frob_ok = false;
            if (!frob_ok) break;
        }
    out.push_back({"characters.frobenius_identities.n<=14", frob_ok,
                   "a_1 = n-r-1 and max{a_2..,b_..} <= r"});
    return out;
}

std::vector<CheckResult> verify_gelfand() {
    std::vector<CheckResult> out;

    bool invariants_ok = true;
    for (long n : {3L, 4L, 8L, 12L})
        for (long m = 1; m <= 4; ++m) {
            auto s = ehrenfest_structure<Rat>(n, m);
            auto v = validate_spherical_structure(s);
            if (v.max_normalization_residual != 0 || v.max_orthogonality_residual != 0 ||
                v.dimension_sum_residual != 0)
                invariants_ok = false;
        }
    out.push_back({"gelfand.structure_invariants.exact", invariants_ok,
                   "normalisation, orthogonality, dimension count"});

    bool inversion_ok = true;
    for (auto [n, m] : std::vector<std::pair<long, long>>{{3, 1}, {3, 2}, {4, 1}, {4, 2}}) {
        auto s = ehrenfest_structure<Rat>(n, m);
        auto mu = ehrenfest_step_law<Rat>(n, m);
        auto coeffs = spherical_fourier_transform(mu, s);
        Chain<Rat> chain = ehrenfest_chain<Rat>(n, m);
        for (long t = 0; t <= 5 && inversion_ok; ++t) {
            auto point_prob = fourier_inversion(s, coeffs, t);
            Distribution<Rat> evolved = evolve(chain, 0, t);
            std::vector<Rat> orbit_mass(n + 1, Rat(0));
            for (std::size_t x = 0; x < chain.size(); ++x) {
                long v = static_cast<long>(x), dist = 0;
                for (long i = 0; i < n; ++i) {
                    if (v % (m + 1) != 0) ++dist;
                    v /= (m + 1);
                }
                orbit_mass[dist] += evolved[x];
            }
            for (long l = 0; l <= n; ++l)
                if (orbit_mass[l] != point_prob[l] * Rat(s.orbit_sizes[l])) inversion_ok = false;
        }
    }
    out.push_back({"gelfand.inversion_vs_bruteforce.exact", inversion_ok,
                   "(n,m) in {(3,1),(3,2),(4,1),(4,2)}, t <= 5"});

    bool transform_ok = true;
    for (long n = 1; n <= 12 && transform_ok; ++n)
        for (long m = 1; m <= 4; ++m) {
            auto s = ehrenfest_structure<Rat>(n, m);
            auto coeffs = spherical_fourier_transform(ehrenfest_step_law<Rat>(n, m), s);
            for (long i = 0; i <= n; ++i)
                if (coeffs[i] != frac(n - i, n)) transform_ok = false;
        }
    out.push_back({"gelfand.step_transform_is_1-i/n.exact", transform_ok, "n <= 12, m <= 4"});

    bool sandwich_ok = true;
    double worst = 0.0;
    {
        auto s = ehrenfest_structure<double>(4, 2);
        auto coeffs = spherical_fourier_transform(ehrenfest_step_law<double>(4, 2), s);
        for (long t = 0; t <= 8; ++t) {
            double tv = hom_exact_tv(s, coeffs, t);
            for (const auto& I : std::vector<std::vector<long>>{
                     {}, {1}, {1, 2}, {2, 3}, {1, 2, 3}, {1, 2, 3, 4}}) {
                double mt = hom_main_term(s, coeffs, t, I);
                double et = hom_error_term(s, coeffs, t, I);
                double excess = std::fabs(tv - mt) - et;
                worst = std::max(worst, excess);
                if (excess > 1e-9) sandwich_ok = false;
            }
        }
    }
    out.push_back({"gelfand.lemma_sandwich.(4,2)", sandwich_ok,
                   "worst excess = " + format_double(worst)});
    return out;
}

std::vector<CheckResult> verify_binomial_clt() {
    std::vector<CheckResult> out;
    bool gaps_ok = true;
    std::string detail;
    for (double y : {0.5, 1.0, 2.0}) {
        double gap = binomial_clt_gap(1000000, 1.0, y);
        detail += "y=" + format_double(y) + ": " + format_double(gap) + "  ";
        if (gap > 0.01) gaps_ok = false;
    }
    out.push_back({"binomial_clt.gap_at_n=1e6", gaps_ok, detail});

    bool trend_ok = true;
    double prev = 1e9;
    for (long n = 1000; n <= 1000000; n *= 2) {
        double gap = binomial_clt_gap(n, 1.0, 2.0);
        if (gap > prev + 2e-3) trend_ok = false;
        prev = gap;
    }
    out.push_back({"binomial_clt.gap_nonincreasing_1e3_to_1e6", trend_ok, "y = 2, within 2e-3"});
    return out;
}

std::vector<CheckResult> run_verification_suite(const std::string& suite) {
    std::vector<CheckResult> out;
    auto append = [&](std::vector<CheckResult> rows) {
        for (auto& r : rows) out.push_back(std::move(r));
    };
    if (suite == "lemma1" || suite == "all") {
        append(verify_lemma1());
        append(verify_corollaries(11));
    }
    if (suite == "krawtchouk" || suite == "all") append(verify_krawtchouk());
    if (suite == "characters" || suite == "all") append(verify_characters());
    if (suite == "gelfand" || suite == "all") append(verify_gelfand());
    if (suite == "binomial-clt" || suite == "all") append(verify_binomial_clt());
    if (out.empty()) throw std::invalid_argument("unknown verification suite: " + suite);
    return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace mixprof
