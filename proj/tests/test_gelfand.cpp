#include "doctest.h"

#include <cmath>

#include "mixprof/gelfand.hpp"
#include "mixprof/hypercube.hpp"

#include "oracles.hpp"

using namespace mixprof;

namespace {

// distance of full-state index x from the all-zeros configuration
long state_distance(long x, long n, long m) {
    long d = 0;
    for (long i = 0; i < n; ++i) {
        if (x % (m + 1) != 0) ++d;
        x /= (m + 1);
    }
    return d;
}

}  // namespace

TEST_CASE("urn structure: dimensions, orbit sizes, exact invariants") {
    for (long n : {3L, 6L, 12L})
        for (long m : {1L, 2L, 4L}) {
            auto s = ehrenfest_structure<Rat>(n, m);
            CHECK(s.dimensions[0] == 1);
            CHECK(s.dimensions[1] == BigInt(m * n));
            for (long l = 0; l <= n; ++l) CHECK(s.phi[0][l] == Rat(1));
            auto v = validate_spherical_structure(s);
            CHECK(v.max_normalization_residual == Rat(0));
            CHECK(v.max_orthogonality_residual == Rat(0));
            CHECK(v.dimension_sum_residual == Rat(0));
        }
}

TEST_CASE("spherical fourier transform: point mass, uniform, urn step law") {
    auto s = ehrenfest_structure<Rat>(8, 3);
    std::vector<Rat> delta0(9, Rat(0));
    delta0[0] = 1;
    auto coeffs = spherical_fourier_transform(delta0, s);
    for (long i = 0; i <= 8; ++i) CHECK(coeffs[i] == Rat(1));

    std::vector<Rat> unif(9);
    for (long l = 0; l <= 8; ++l) unif[l] = Rat(s.orbit_sizes[l]) / Rat(s.space_size);
    auto ucoeffs = spherical_fourier_transform(unif, s);
    CHECK(ucoeffs[0] == Rat(1));
    for (long i = 1; i <= 8; ++i) CHECK(ucoeffs[i] == Rat(0));

    for (long n = 1; n <= 12; ++n)
        for (long m = 1; m <= 4; ++m) {
            auto sr = ehrenfest_structure<Rat>(n, m);
            auto c = spherical_fourier_transform(ehrenfest_step_law<Rat>(n, m), sr);
            for (long i = 0; i <= n; ++i) CHECK(c[i] == frac(n - i, n));
        }
}

TEST_CASE("fourier inversion: delta at t=0, uniform coefficients, oracle equality") {
    auto s = ehrenfest_structure<Rat>(5, 2);
    auto coeffs = spherical_fourier_transform(ehrenfest_step_law<Rat>(5, 2), s);
    auto at0 = fourier_inversion(s, coeffs, 0);
    CHECK(at0[0] == Rat(1));
    for (long l = 1; l <= 5; ++l) CHECK(at0[l] == Rat(0));

    std::vector<Rat> dead(6, Rat(0));
    dead[0] = 1;  // mu~ = (1, 0, ..., 0) reproduces the uniform law
    for (long l = 0; l <= 5; ++l) {
        auto u = fourier_inversion(s, dead, 1);
        CHECK(u[l] == Rat(1) / Rat(s.space_size));
    }

    for (auto [n, m] : std::vector<std::pair<long, long>>{{3, 1}, {3, 2}, {4, 1}, {4, 2}}) {
        auto sr = ehrenfest_structure<Rat>(n, m);
        auto c = spherical_fourier_transform(ehrenfest_step_law<Rat>(n, m), sr);
        auto chain = ehrenfest_chain<Rat>(n, m);
        for (long t = 0; t <= 6; ++t) {
            auto point = fourier_inversion(sr, c, t);
            auto evolved = evolve(chain, 0, t);
            std::vector<Rat> orbit_mass(n + 1, Rat(0));
            for (std::size_t x = 0; x < chain.size(); ++x)
                orbit_mass[state_distance(long(x), n, m)] += evolved[x];
            for (long l = 0; l <= n; ++l)
                CHECK(orbit_mass[l] == point[l] * Rat(sr.orbit_sizes[l]));
        }
    }
}

TEST_CASE("inversion flags inconsistent coefficients") {
    auto s = ehrenfest_structure<Rat>(4, 1);
    std::vector<Rat> bogus(5, Rat(0));
    bogus[0] = 1;
    bogus[1] = -2;  // no genuine step law has |mu~| > 1
    CHECK_THROWS_AS(fourier_inversion(s, bogus, 1), std::runtime_error);
}

TEST_CASE("hom exact TV: start value, uniform step, full-state oracle") {
    auto s = ehrenfest_structure<Rat>(4, 2);
    auto coeffs = spherical_fourier_transform(ehrenfest_step_law<Rat>(4, 2), s);
    CHECK(hom_exact_tv(s, coeffs, 0) == Rat(1) - Rat(1) / Rat(s.space_size));

    std::vector<Rat> dead(5, Rat(0));
    dead[0] = 1;
    CHECK(hom_exact_tv(s, dead, 3) == Rat(0));

    auto chain = ehrenfest_chain<Rat>(4, 2);
    for (long t = 1; t <= 8; ++t) {
        Rat brute = tv_distance(evolve(chain, 0, t), chain.stationary());
        CHECK(hom_exact_tv(s, coeffs, t) == brute);
    }
}

TEST_CASE("hom main/error: full I collapses, empty I vanishes, sandwich holds") {
    auto s = ehrenfest_structure<double>(4, 2);
    auto coeffs = spherical_fourier_transform(ehrenfest_step_law<double>(4, 2), s);
    std::vector<long> full{1, 2, 3, 4};
    for (long t = 0; t <= 8; ++t) {
        double tv = hom_exact_tv(s, coeffs, t);
        CHECK(hom_main_term(s, coeffs, t, full) == doctest::Approx(tv).epsilon(1e-12));
        CHECK(hom_error_term(s, coeffs, t, full) == 0.0);
        CHECK(hom_main_term(s, coeffs, t, {}) == 0.0);
        for (const auto& I : std::vector<std::vector<long>>{{1}, {1, 2}, {2, 4}, {1, 2, 3}}) {
            double mt = hom_main_term(s, coeffs, t, I);
            double et = hom_error_term(s, coeffs, t, I);
            CHECK(std::fabs(tv - mt) <= et + 1e-9);
        }
    }
    CHECK_THROWS_AS(hom_main_term(s, coeffs, 1, std::vector<long>{0}), std::invalid_argument);
}

TEST_CASE("urn chain: row structure and stationarity") {
    auto chain = ehrenfest_chain<Rat>(1, 1);
    CHECK(chain.kernel()(0, 0) == Rat(1, 2));
    CHECK(chain.kernel()(0, 1) == Rat(1, 2));
    CHECK(chain.kernel()(1, 0) == Rat(1, 2));
    CHECK(check_reversible(chain, 0.0).reversible);

    auto big = ehrenfest_chain<Rat>(3, 2);  // 27 states, uniform stationary law
    for (std::size_t x = 0; x < big.size(); ++x)
        CHECK(big.stationary()[x] == Rat(1, 27));
    CHECK_THROWS_AS(ehrenfest_chain<double>(20, 2), std::length_error);
}

TEST_CASE("m = 1 kernel coincides with the lazy hypercube kernel") {
    for (long n : {2L, 3L, 4L}) {
        auto urn = ehrenfest_chain<Rat>(n, 1);
        auto cube = hypercube_chain<Rat>(n);
        REQUIRE(urn.size() == cube.size());
        for (std::size_t x = 0; x < urn.size(); ++x)
            for (std::size_t y = 0; y < urn.size(); ++y)
                CHECK(urn.kernel()(x, y) == cube.kernel()(x, y));
    }
}

TEST_CASE("analytic profile points agree with rational pipeline at small n") {
    long n = 24, m = 2;
    auto s = ehrenfest_structure<Rat>(n, m);
    auto coeffs = spherical_fourier_transform(ehrenfest_step_law<Rat>(n, m), s);
    auto pts = ehrenfest_profile_points(n, m, {-0.5, 0.0, 0.5});
    for (const auto& pt : pts) {
        Rat exact = hom_exact_tv(s, coeffs, pt.t);
        CHECK(pt.exact_tv == doctest::Approx(exact.get_d()).epsilon(1e-10));
        CHECK(std::fabs(pt.exact_tv - pt.main_term) <= pt.error_term + 1e-9);
        CHECK(pt.limit_value == doctest::Approx(gaussian_profile(pt.c)));
    }
    CHECK_THROWS_AS(ehrenfest_schedule(10, 1, -40.0), std::domain_error);
}
