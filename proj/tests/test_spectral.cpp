#include "doctest.h"

#include <cmath>

#include "mixprof/hypercube.hpp"
#include "mixprof/montecarlo.hpp"
#include "mixprof/spectral.hpp"

#include "oracles.hpp"

using namespace mixprof;

namespace {

Chain<double> two_state_chain(double a, double b) {
    Matrix<double> kernel(2, 2);
    kernel(0, 0) = 1 - a;
    kernel(0, 1) = a;
    kernel(1, 0) = b;
    kernel(1, 1) = 1 - b;
    std::vector<double> pi{b / (a + b), a / (a + b)};
    return Chain<double>(std::move(kernel), Distribution<double>(std::move(pi)), true);
}

}  // namespace

TEST_CASE("eigendecomposition: identity chain and 2x2 closed form") {
    Matrix<double> eye(4, 4);
    for (int i = 0; i < 4; ++i) eye(i, i) = 1.0;
    Chain<double> frozen(std::move(eye), Distribution<double>::uniform(4), true);
    auto es = symmetric_eigendecomposition(frozen);
    for (double lambda : es.eigenvalues) CHECK(lambda == doctest::Approx(1.0).epsilon(1e-12));

    auto chain = two_state_chain(0.3, 0.2);
    auto es2 = symmetric_eigendecomposition(chain);
    CHECK(es2.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(es2.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("eigendecomposition rejects non-reversible input") {
    Matrix<double> rot(3, 3);
    rot(0, 1) = rot(1, 2) = rot(2, 0) = 1.0;
    Chain<double> cycle(std::move(rot), Distribution<double>::uniform(3), false);
    CHECK_THROWS_AS(symmetric_eigendecomposition(cycle), std::invalid_argument);
}

TEST_CASE("pi-orthonormality, kernel consistency, eigenvalue range") {
    Xoshiro256pp rng(21);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 3 + rng.below(8);
        auto chain = oracles::random_reversible_chain(rng, n);
        auto es = symmetric_eigendecomposition(chain);
        CHECK(es.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
        for (std::size_t x = 0; x < n; ++x)
            CHECK(es.vectors[0][x] == doctest::Approx(1.0).epsilon(1e-8));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(es.eigenvalues[i] > -1.0);
            CHECK(es.eigenvalues[i] < 1.0 + 1e-12);
            if (i > 0) CHECK(es.eigenvalues[i] <= es.eigenvalues[i - 1] + 1e-12);
            for (std::size_t j = i; j < n; ++j) {
                double acc = 0.0;
                for (std::size_t x = 0; x < n; ++x)
                    acc += chain.stationary()[x] * es.vectors[i][x] * es.vectors[j][x];
                CHECK(std::fabs(acc - (i == j ? 1.0 : 0.0)) <= 1e-9);
            }
            for (std::size_t x = 0; x < n; ++x) {
                double acc = 0.0;
                for (std::size_t y = 0; y < n; ++y)
                    acc += chain.kernel()(x, y) * es.vectors[i][y];
                CHECK(std::fabs(acc - es.eigenvalues[i] * es.vectors[i][x]) <= 1e-9);
            }
        }
    }
}

TEST_CASE("deterministic output: sign convention and tie-breaking") {
    auto chain = hypercube_chain<double>(3);  // highly degenerate spectrum
    auto es1 = symmetric_eigendecomposition(chain);
    auto es2 = symmetric_eigendecomposition(chain);
    for (std::size_t i = 0; i < es1.size(); ++i) {
        CHECK(es1.eigenvalues[i] == es2.eigenvalues[i]);
        for (std::size_t x = 0; x < chain.size(); ++x)
            CHECK(es1.vectors[i][x] == es2.vectors[i][x]);
        // first nonzero entry positive
        for (std::size_t x = 0; x < chain.size(); ++x) {
            if (std::fabs(es1.vectors[i][x]) > 1e-9) {
                CHECK(es1.vectors[i][x] > 0.0);
                break;
            }
        }
    }
}

TEST_CASE("main/error term edge cases") {
    auto chain = two_state_chain(0.3, 0.2);
    auto es = symmetric_eigendecomposition(chain);

    CHECK(main_term(es, 0, 3, {}) == 0.0);
    CHECK_THROWS_AS(main_term(es, 0, 3, {0}), std::invalid_argument);
    CHECK(error_term(es, 0, 3, {1}) == 0.0);

    // full I reproduces exact TV; empty I error is the 2x2 closed form
    for (long t : {0L, 1L, 4L, 9L}) {
        double tv = to_double(tv_distance(evolve(chain, 0, t), chain.stationary()));
        CHECK(main_term(es, 0, t, {1}) == doctest::Approx(tv).epsilon(1e-10));
        double expected = 0.5 * std::fabs(es.vectors[1][0]) * std::pow(0.5, double(t));
        CHECK(error_term(es, 0, t, {}) == doctest::Approx(expected).epsilon(1e-10));
    }
    // t = 0, empty I: half the l1 mass of the column at x
    double direct = 0.0;
    for (std::size_t i = 1; i < es.size(); ++i) direct += std::fabs(es.vectors[i][0]);
    CHECK(error_term(es, 0, 0, {}) == doctest::Approx(0.5 * direct));
}

TEST_CASE("lemma1 sandwich on random chains, random I") {
    Xoshiro256pp rng(12);
    for (int rep = 0; rep < 120; ++rep) {
        std::size_t n = 3 + rng.below(6);
        auto chain = oracles::random_reversible_chain(rng, n);
        auto es = symmetric_eigendecomposition(chain);
        std::size_t x = rng.below(n);
        long t = static_cast<long>(rng.below(25));
        std::vector<std::size_t> I;
        for (std::size_t i = 1; i < n; ++i)
            if (rng.uniform01() < 0.5) I.push_back(i);
        double tv = to_double(tv_distance(evolve(chain, x, t), chain.stationary()));
        auto band = lemma1_sandwich(es, x, t, I);
        CHECK(band.contains(tv, 1e-9));
    }
}

TEST_CASE("error term is monotone in the index set") {
    Xoshiro256pp rng(13);
    auto chain = oracles::random_reversible_chain(rng, 7);
    auto es = symmetric_eigendecomposition(chain);
    for (long t : {0L, 2L, 6L}) {
        double prev = error_term(es, 0, t, {});
        std::vector<std::size_t> I;
        for (std::size_t i = 1; i < 7; ++i) {
            I.push_back(i);
            double cur = error_term(es, 0, t, I);
            CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
        CHECK(prev == 0.0);
    }
}

TEST_CASE("transitive approximation on the 3-hypercube") {
    auto chain = hypercube_chain<double>(3);
    auto es = symmetric_eigendecomposition(chain);
    auto full = full_index_set(chain.size());
    for (long t : {0L, 1L, 2L, 5L}) {
        double tv = to_double(tv_distance(evolve(chain, 0, t), chain.stationary()));
        auto pair = transitive_tv_approx(es, t, full);
        CHECK(pair.main == doctest::Approx(tv).epsilon(1e-9));
        CHECK(pair.error == 0.0);
    }
    // empty I at t=0: error = (N-1)/2
    auto pair0 = transitive_tv_approx(es, 0, {});
    CHECK(pair0.main == 0.0);
    CHECK(pair0.error == doctest::Approx((double(chain.size()) - 1.0) / 2.0));

    auto diag = weak_transitivity_check(chain);
    CHECK(diag.uniform_pi);
    CHECK(diag.tv_constant_over_starts);
}

TEST_CASE("transitive approximation requires uniform pi") {
    auto chain = two_state_chain(0.3, 0.2);
    auto es = symmetric_eigendecomposition(chain);
    CHECK_THROWS_AS(transitive_tv_approx(es, 1, {1}), std::invalid_argument);
}

TEST_CASE("typical TV: 2x2 closed form and sandwich") {
    double a = 0.3, b = 0.2;
    auto chain = two_state_chain(a, b);
    auto es = symmetric_eigendecomposition(chain);
    double pi0 = b / (a + b), pi1 = a / (a + b);
    for (long t : {0L, 1L, 3L, 8L}) {
        double dtyp = 0.0;
        for (std::size_t x = 0; x < 2; ++x)
            dtyp += chain.stationary()[x] *
                    to_double(tv_distance(evolve(chain, x, t), chain.stationary()));
        double closed = 2.0 * pi0 * pi1 * std::pow(std::fabs(1 - a - b), double(t));
        CHECK(dtyp == doctest::Approx(closed).epsilon(1e-12));
        auto pair = typical_tv_approx(es, t, {1});
        CHECK(pair.main == doctest::Approx(dtyp).epsilon(1e-10));
        auto empty = typical_tv_approx(es, t, {});
        CHECK(empty.main == 0.0);
        CHECK(std::fabs(dtyp - empty.main) <= empty.error + 1e-12);
    }
}
