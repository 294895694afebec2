#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "mixprof/special.hpp"
#include "mixprof/symmetric.hpp"

#include "oracles.hpp"

using namespace mixprof;

TEST_CASE("partitions: counts, order, bounds") {
    auto p4 = partitions(4);
    CHECK(p4.size() == 5);
    CHECK(p4.front().parts() == std::vector<long>{1, 1, 1, 1});
    CHECK(p4.back().parts() == std::vector<long>{4});
    CHECK(std::is_sorted(p4.begin(), p4.end()));

    CHECK(partitions(1).size() == 1);
    CHECK(partitions(10).size() == 42);

    // pentagonal-number recurrence oracle
    auto counts = oracles::partition_counts(24);
    for (long n = 1; n <= 24; ++n)
        CHECK(BigInt(long(partitions(n).size())) == counts[n]);

    CHECK_THROWS_AS(partitions(41), std::length_error);
    CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
}

TEST_CASE("hook dimensions: single row, (2,1), SYT enumeration, squares sum") {
    CHECK(hook_dimension(Partition({7})) == 1);
    CHECK(hook_dimension(Partition({2, 1})) == 2);
    for (long n = 1; n <= 9; ++n)
        for (const Partition& p : partitions(n))
            CHECK(hook_dimension(p) == oracles::syt_count(p.parts()));
    for (long n = 1; n <= 12; ++n) {
        BigInt acc(0);
        for (const Partition& p : partitions(n)) {
            BigInt d = hook_dimension(p);
            acc += d * d;
        }
        CHECK(acc == factorial_big(n));
    }
}

TEST_CASE("cycle types: class sizes by enumeration, parity") {
    for (int n = 2; n <= 7; ++n) {
        std::map<std::vector<long>, long> count;
        std::map<std::vector<long>, long> even_count;
        oracles::for_each_permutation(n, [&](const std::vector<int>& perm) {
            auto type = oracles::cycle_type_of(perm);
            ++count[type];
            if (oracles::permutation_even(perm)) ++even_count[type];
        });
        for (const Partition& p : partitions(n)) {
            CycleType ct(p);
            CHECK(ct.class_size == BigInt(count[p.parts()]));
            bool even_class = even_count[p.parts()] > 0;
            CHECK((ct.parity() == 1) == even_class);
        }
    }
}

TEST_CASE("characters: identity column is the dimension; trivial and sign rows") {
    for (long n = 2; n <= 8; ++n) {
        std::vector<long> ones(n, 1);
        Partition id_class(ones);
        for (const Partition& lambda : partitions(n))
            CHECK(mn_character(lambda, id_class) == hook_dimension(lambda));
        for (const Partition& rho : partitions(n)) {
            CHECK(mn_character(Partition({n}), rho) == 1);
            CycleType ct(rho);
            CHECK(mn_character(Partition(ones), rho) == ct.parity());
        }
    }
}

TEST_CASE("characters match the brute-force tabloid tables (S_3..S_6)") {
    for (int n = 3; n <= 6; ++n) {
        auto brute = oracles::brute_character_table(n);
        auto table = CharacterTable::get(n);
        for (const auto& [shape, values] : brute.chi) {
            std::size_t l = table->index_of(Partition(shape));
            for (std::size_t c = 0; c < brute.classes.size(); ++c) {
                std::size_t tc = table->index_of(Partition(brute.classes[c]));
                CHECK(Rat(table->chi(l, tc)) == values[c]);
            }
        }
    }
    CHECK(mn_character(Partition({2, 1}), Partition({3})) == -1);
}

TEST_CASE("character ratios: trivial, sign, (n-1,1)") {
    for (long n : {5L, 8L, 10L}) {
        for (long k = 2; k <= 4; ++k) {
            CHECK(character_ratio_exact(Partition({n}), k) == Rat(1));
            std::vector<long> ones(n, 1);
            Rat sign = character_ratio_exact(Partition(ones), k);
            CHECK(sign == (k % 2 == 1 ? Rat(1) : Rat(-1)));
            CHECK(character_ratio_exact(Partition({n - 1, 1}), k) == frac(n - k - 1, n - 1));
        }
    }
}

TEST_CASE("frobenius coordinates") {
    Partition lambda({5, 3, 3, 1});  // conjugate (4,3,3,1,1)
    auto fc = frobenius_coords(lambda);
    CHECK(fc.m() == 3);
    CHECK(fc.a == std::vector<long>{4, 1, 0});
    CHECK(fc.b == std::vector<long>{3, 1, 0});
    long n = lambda.n(), r = n - lambda.part(1);
    CHECK(fc.a[0] == n - r - 1);
    for (std::size_t i = 1; i < fc.a.size(); ++i) CHECK(fc.a[i] <= r);
    for (long b : fc.b) CHECK(b <= r);
}

TEST_CASE("hough ratio: exactness for r < k, error report, hypothesis handling") {
    // r < k: the product is the exact ratio and the reported error is 0
    for (long n : {20L, 40L}) {
        Partition lambda({n - 1, 1});
        auto h = character_ratio_hough(lambda, 3, false);
        CHECK(h.error_bound == 0.0);
        CHECK(h.value == doctest::Approx(double(n - 4) / double(n - 1)).epsilon(1e-14));
    }
    // hypothesis enforcement
    Partition tight({10, 4});  // r = 4, k = 2: r+k+1 = 7 >= 14/3
    CHECK_THROWS_AS(character_ratio_hough(tight, 2, true), std::invalid_argument);
    auto relaxed = character_ratio_hough(tight, 2, false);
    CHECK_FALSE(relaxed.hypothesis_ok);
    // requires a long first row
    std::vector<long> ones(6, 1);
    CHECK_THROWS_AS(character_ratio_hough(Partition(ones), 2, false), std::invalid_argument);

    // against the exact ratio at n = 14: the product always lands within the
    // theorem's own additive error report, and within 10k/n^2 relative for
    // r <= 3 (at r = 4, k = 2 the additive term dominates at this scale;
    // the acceptance suite reports that boundary case separately)
    for (long k : {2L, 3L}) {
        for (const Partition& lambda : partitions(14)) {
            long r = 14 - lambda.part(1);
            if (r < 1 || r > 4) continue;
            if (lambda.conjugate().part(1) > lambda.part(1)) continue;
            double exact = character_ratio_exact(lambda, k).get_d();
            auto h = character_ratio_hough(lambda, k, false);
            CHECK(std::fabs(h.value - exact) <= h.error_bound + 1e-12);
            if (r <= 3)
                CHECK(std::fabs(h.value / exact - 1.0) <= 10.0 * double(k) / (14.0 * 14.0));
            if (r < k) CHECK(h.error_bound == 0.0);
        }
    }
}

TEST_CASE("T_r polynomial: closed small values and the character identity") {
    for (long z = 0; z <= 10; ++z) CHECK(t_r_polynomial(1, z) == Rat(z - 1));
    CHECK(t_r_polynomial(2, 0) == Rat(1, 2));
    CHECK_THROWS_AS(t_r_polynomial(0, 1), std::invalid_argument);

    // (1/r!) sum_{lambda_1 = n-r} d_{lambda*} chi_lambda(sigma) = T_r(Fix sigma)
    // for sigma with a cycle longer than r
    for (long n = 2; n <= 10; ++n) {
        auto table = CharacterTable::get(n);
        for (long r = 1; r <= std::min(4L, n - 1); ++r) {
            for (std::size_t c = 0; c < table->labels().size(); ++c) {
                const Partition& cls = table->labels()[c];
                if (cls.part(1) <= r) continue;
                long fixed = 0;
                for (long part : cls.parts())
                    if (part == 1) ++fixed;
                Rat lhs(0);
                for (std::size_t l = 0; l < table->labels().size(); ++l) {
                    if (table->labels()[l].part(1) != n - r) continue;
                    lhs += Rat(hook_dimension(table->labels()[l].without_first_row())) *
                           Rat(table->chi(l, c));
                }
                lhs /= Rat(factorial_big(r));
                CHECK(lhs == t_r_polynomial(r, fixed));
            }
        }
    }
}

TEST_CASE("f_c and the truncated T_r series") {
    CHECK(f_c_function(0.0, 0) == doctest::Approx(std::exp(-1.0) - 1.0).epsilon(1e-14));
    for (double c : {0.0, 1.0, 2.0}) {
        double e = std::exp(-c);
        CHECK(f_c_function(c, 0) == doctest::Approx(std::exp(-e) - 1.0).epsilon(1e-13));
        for (long m = 0; m <= 10; ++m) {
            double series = 0.0;
            for (long r = 1; r <= 60; ++r)
                series += std::pow(e, double(r)) * t_r_polynomial(r, m).get_d();
            CHECK(std::fabs(series - f_c_function(c, m)) <= 1e-8);
        }
    }
}

TEST_CASE("fixed point counts against full enumeration (n <= 8)") {
    for (int n = 1; n <= 8; ++n) {
        std::vector<long> all(n + 1, 0), even(n + 1, 0);
        oracles::for_each_permutation(n, [&](const std::vector<int>& perm) {
            long fixed = 0;
            for (int i = 0; i < n; ++i)
                if (perm[i] == i) ++fixed;
            ++all[fixed];
            if (oracles::permutation_even(perm)) ++even[fixed];
        });
        for (long r = 0; r <= n; ++r) {
            auto counts = fixed_point_counts(n, r);
            CHECK(counts.all == BigInt(all[r]));
            CHECK(counts.even == BigInt(even[r]));
        }
    }
    // identity cases
    CHECK(fixed_point_counts(9, 9).all == 1);
    CHECK(fixed_point_counts(9, 8).all == 0);
    CHECK(fixed_point_counts(3, 1).all == 3);
    // derangement formula m! sum (-1)^l / l! for m <= 12
    for (long m = 0; m <= 12; ++m) {
        Rat expect(0);
        for (long l = 0; l <= m; ++l) {
            Rat term = Rat(factorial_big(m)) / Rat(factorial_big(l));
            expect += (l % 2 == 0) ? term : -term;
        }
        CHECK(Rat(fixed_point_counts(m, 0).all) == expect);
    }
}

TEST_CASE("half-parity claim fails at the boundary (documented paper defect)") {
    // transpositions (n-2 fixed points) are all odd, so the even count is 0,
    // not half of binom(n,2); only the n - r -> infinity regime restores the half
    auto counts = fixed_point_counts(5, 3);
    CHECK(counts.all == 10);
    CHECK(counts.even == 0);
}

TEST_CASE("k-cycle distribution: t = 0, t = 1, and the S_7 convolution oracle") {
    auto d0 = kcycle_distribution(6, 2, 0);
    for (std::size_t c = 0; c < d0.table->labels().size(); ++c) {
        bool is_id = d0.table->labels()[c].part(1) == 1;
        CHECK(d0.values[c] == (is_id ? Rat(1) : Rat(0)));
    }
    auto d1 = kcycle_distribution(6, 3, 1);
    std::size_t kclass = d1.table->k_cycle_class(3);
    for (std::size_t c = 0; c < d1.values.size(); ++c) {
        if (c == kclass)
            CHECK(d1.values[c] == Rat(1) / Rat(d1.table->class_sizes()[c]));
        else
            CHECK(d1.values[c] == Rat(0));
    }

    // brute-force group-algebra convolution over S_7
    const int n = 7;
    std::vector<std::vector<int>> perms;
    oracles::for_each_permutation(n, [&](const std::vector<int>& p) { perms.push_back(p); });
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = int(i);

    for (long k : {2L, 3L}) {
        std::vector<int> cycle_ids;
        for (std::size_t i = 0; i < perms.size(); ++i) {
            auto type = oracles::cycle_type_of(perms[i]);
            if (type[0] == k && (type.size() == 1 || type[1] == 1)) cycle_ids.push_back(int(i));
        }
        std::vector<BigInt> weight(perms.size(), BigInt(0));
        weight[index[std::vector<int>{0, 1, 2, 3, 4, 5, 6}]] = 1;
        for (long t = 1; t <= 6; ++t) {
            std::vector<BigInt> next(perms.size(), BigInt(0));
            for (std::size_t i = 0; i < perms.size(); ++i) {
                if (weight[i] == 0) continue;
                for (int cid : cycle_ids) {
                    // right multiplication: (sigma tau)(x) = sigma(tau(x))
                    std::vector<int> prod(n);
                    for (int x = 0; x < n; ++x) prod[x] = perms[i][perms[cid][x]];
                    next[index[prod]] += weight[i];
                }
            }
            weight.swap(next);
            auto dist = kcycle_distribution(n, k, t);
            BigInt denom = pow_rat(Rat(long(cycle_ids.size())), static_cast<unsigned long>(t))
                               .get_num();
            for (std::size_t i = 0; i < perms.size(); ++i) {
                auto type = oracles::cycle_type_of(perms[i]);
                std::size_t c = dist.table->index_of(Partition(type));
                CHECK(dist.values[c] == Rat(weight[i]) / Rat(denom));
            }
        }
    }
}

TEST_CASE("k-cycle exact TV: start, convergence, monotonicity") {
    CHECK(kcycle_exact_tv(6, 2, 0) == Rat(1) - Rat(2) / Rat(factorial_big(6)));
    CHECK(kcycle_exact_tv(6, 3, 0) == Rat(1) - Rat(2) / Rat(factorial_big(6)));

    Rat prev(2);
    for (long t = 0; t <= 30; ++t) {
        Rat tv = kcycle_exact_tv(7, 2, t);
        CHECK(tv <= prev);
        prev = tv;
    }
    CHECK(kcycle_exact_tv(7, 3, 60).get_d() <= 1e-6);
}

TEST_CASE("k-cycle sandwich: |exact - MT_M| <= ET_M, exactly") {
    for (long k : {2L, 3L}) {
        for (long t : {1L, 3L, 6L, 10L, 20L}) {
            Rat tv = kcycle_exact_tv(10, k, t);
            for (long M : {2L, 4L, 6L}) {
                Rat mt = kcycle_main_term(10, k, t, M);
                auto et = kcycle_error_term(10, k, t, M);
                REQUIRE(et.certified);
                CHECK(abs(tv - mt) <= et.exact_value);
            }
        }
    }
    // M > n empties the error sum
    auto empty = kcycle_error_term(8, 2, 5, 9);
    CHECK(empty.exact_value == Rat(0));
    // M = 1 empties the main term (P_n(1) = {})
    CHECK(kcycle_main_term(8, 2, 5, 1) == Rat(0));
}

TEST_CASE("dimension-sum bound feeding the error analysis (n <= 14, r <= 6)") {
    for (long n : {8L, 11L, 14L}) {
        for (long r = 1; r <= 6; ++r) {
            BigInt sum = dimension_sum_at(n, r);
            // compare sum^2 r^r <= n^{2r} 4^r in integers
            BigInt lhs = sum * sum;
            BigInt rr;
            mpz_ui_pow_ui(rr.get_mpz_t(), static_cast<unsigned long>(r),
                          static_cast<unsigned long>(r));
            lhs *= rr;
            BigInt rhs;
            mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(n),
                          static_cast<unsigned long>(2 * r));
            BigInt four_r;
            mpz_ui_pow_ui(four_r.get_mpz_t(), 4, static_cast<unsigned long>(r));
            rhs *= four_r;
            CHECK(lhs <= rhs);
            // consistency with direct enumeration over partitions
            BigInt direct(0);
            for (const Partition& lambda : partitions(n))
                if (lambda.part(1) == n - r) direct += hook_dimension(lambda);
            CHECK(sum == direct);
        }
    }
}

TEST_CASE("exact character cap") {
    std::vector<long> ones(15, 1);
    CHECK_THROWS_AS(mn_character(Partition({15}), Partition(ones)), std::length_error);
}

TEST_CASE("error term decreasing in M at the n = 12 schedule") {
    long t = kcycle_schedule(12, 2, 0.0);
    Rat prev(-1);
    for (long M = 2; M <= 6; ++M) {
        auto et = kcycle_error_term(12, 2, t, M);
        REQUIRE(et.certified);
        if (M > 2) CHECK(et.exact_value <= prev);
        prev = et.exact_value;
    }
    // the main term approaches the limit profile already at n = 12: the
    // exact pipeline puts the gap at 0.1316, frozen here as a regression
    // bound
    Rat mt = kcycle_main_term(12, 2, t, 6);
    CHECK(std::fabs(mt.get_d() - poisson_profile(0.0)) <= 0.14);
}

TEST_CASE("error-term surrogate path above the exact cap") {
    long t = kcycle_schedule(20, 3, 0.0);
    double prev = 1e300;
    for (long M : {2L, 4L, 6L}) {
        auto et = kcycle_error_term(20, 3, t, M);
        CHECK_FALSE(et.certified);
        CHECK(et.value >= 0.0);
        CHECK(et.value <= prev + 1e-15);
        prev = et.value;
    }
    CHECK_THROWS_AS(kcycle_error_term(41, 2, 5, 2), std::length_error);
}

TEST_CASE("k-cycle schedule and profile point") {
    CHECK(kcycle_schedule(14, 2, 0.0) == std::llround(7.0 * std::log(14.0)));
    CHECK_THROWS_AS(kcycle_schedule(14, 2, -10.0), std::domain_error);
    // schedules scale like 1/k
    double ratio = double(kcycle_schedule(14, 3, 0.0)) / double(kcycle_schedule(14, 2, 0.0));
    CHECK(std::fabs(ratio - 2.0 / 3.0) <= 0.05);

    auto pt = kcycle_profile_point(10, 2, 0.0, 5);
    CHECK(std::fabs(pt.exact_tv - pt.main_term) <= pt.error_term + 1e-15);
    CHECK(pt.limit_value == doctest::Approx(poisson_profile(0.0)));
}

TEST_CASE("short-row bound reports") {
    // n = 12, k = 2: all applicable lambda obey the k-small bound
    for (const Partition& lambda : partitions(12)) {
        if (lambda.conjugate().part(1) > lambda.part(1)) continue;
        if (12 - lambda.part(1) < 4) continue;
        auto rep = short_row_bound_check(lambda, 2, 12);
        if (rep.applicable) CHECK(rep.holds);
    }
    // sign-like shapes are outside the domain
    std::vector<long> ones(12, 1);
    auto rep = short_row_bound_check(Partition(ones), 2, 12);
    CHECK_FALSE(rep.applicable);
    // smoke: (7,7) at n = 14 produces a report without error
    auto rep77 = short_row_bound_check(Partition({7, 7}), 2, 14);
    CHECK(rep77.applicable);
}
