#include "doctest.h"

#include <cmath>

#include "mixprof/engine.hpp"
#include "mixprof/hypercube.hpp"
#include "mixprof/special.hpp"

#include "oracles.hpp"

using namespace mixprof;

TEST_CASE("n = 1: exact half at t = 0, exactly mixed from t = 1") {
    CHECK(hypercube_exact_tv(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(hypercube_exact_tv_rational(1, 0) == Rat(1, 2));
    for (long t = 1; t <= 5; ++t) CHECK(hypercube_exact_tv_rational(1, t) == Rat(0));
}

TEST_CASE("weight-grouped TV equals brute force for n <= 10, t <= 60") {
    for (long n : {2L, 5L, 8L, 10L}) {
        auto chain = hypercube_chain<double>(n);
        std::vector<long> ts;
        for (long t = 0; t <= 60; t += (n <= 5 ? 1 : 3)) ts.push_back(t);
        auto grouped = hypercube_exact_tv_batch(n, ts);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            double brute =
                to_double(tv_distance(evolve(chain, 0, ts[i]), chain.stationary()));
            CHECK(std::fabs(grouped[i] - brute) <= 1e-10);
        }
    }
}

TEST_CASE("rational and float paths agree") {
    for (long n : {3L, 6L, 12L})
        for (long t : {0L, 1L, 4L, 9L, 30L})
            CHECK(std::fabs(hypercube_exact_tv(n, t) -
                            hypercube_exact_tv_rational(n, t).get_d()) <= 1e-13);
}

TEST_CASE("TV nonincreasing in t (n = 64, t <= 640)") {
    std::vector<long> ts;
    for (long t = 0; t <= 640; t += 8) ts.push_back(t);
    auto tvs = hypercube_exact_tv_batch(64, ts);
    for (std::size_t i = 1; i < tvs.size(); ++i) CHECK(tvs[i] <= tvs[i - 1] + 1e-12);
}

TEST_CASE("independent agreement with the m = 1 urn pipeline (n <= 64)") {
    for (long n : {8L, 33L, 64L}) {
        std::vector<Rat> mu(n + 1);
        for (long i = 0; i <= n; ++i) mu[i] = frac(n - i, n);
        KrawtchoukSpectralEngine engine(n, Rat(1), std::move(mu));
        std::vector<long> ts{0, 1, n / 2, 2 * n, 10 * n};
        auto cube = hypercube_exact_tv_batch(n, ts);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            double urn = 0.5 * engine.evaluate_one(ts[i], n).full_sum;
            CHECK(std::fabs(cube[i] - urn) <= 1e-10);
        }
    }
}

TEST_CASE("schedule and profile rows") {
    CHECK(hypercube_schedule(256, 0.0) == std::llround(128.0 * std::log(256.0)));
    CHECK_THROWS_AS(hypercube_schedule(4, -10.0), std::domain_error);

    auto pts = hypercube_profile_points(256, {-1.0, 0.0, 1.0});
    CHECK(pts[0].exact_tv > pts[1].exact_tv);
    CHECK(pts[1].exact_tv > pts[2].exact_tv);
    for (const auto& pt : pts) {
        CHECK(pt.main_term == pt.exact_tv);
        CHECK(pt.error_term == 0.0);
        CHECK(pt.limit_value == doctest::Approx(gaussian_profile(pt.c)));
        CHECK(pt.exact_tv >= 0.0);
        CHECK(pt.exact_tv <= 1.0);
    }
}
