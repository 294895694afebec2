#pragma once

#include <vector>

#include "mixprof/chain.hpp"
#include "mixprof/numeric.hpp"
#include "mixprof/profile_point.hpp"
#include "mixprof/special.hpp"

namespace mixprof {

// Orbit-indexed spherical data of a Gelfand pair acting distance-transitively
// from the base point: orbit sizes w_l, irrep dimensions d_i and the table
// phi[i][l] of spherical function values. The group itself is never
// materialised; the structure is validated through its orthogonality and
// dimension-count invariants instead.
template <class T>
struct SphericalStructure {
    long n = 0;  // orbits are indexed 0..n
    std::vector<BigInt> orbit_sizes;
    BigInt space_size;
    std::vector<BigInt> dimensions;
    std::vector<std::vector<T>> phi;  // phi[i][l]
};

// (m+1)-urn structure on n balls: w_l = m^l binom(n,l), d_i = m^i binom(n,i),
// phi_i(l) = K_i(l; m/(m+1), n).
template <class T>
SphericalStructure<T> ehrenfest_structure(long n, long m);

// Residual report of the defining invariants; all residuals are exactly zero
// in rational mode.
template <class T>
struct SphericalValidation {
    T max_normalization_residual;   // phi_0(l) - 1 and phi_i(0) - 1
    T max_orthogonality_residual;   // sum_l w_l phi_i phi_j - delta_ij |X|/d_i
    T dimension_sum_residual;       // sum_i d_i - |X|
};
template <class T>
SphericalValidation<T> validate_spherical_structure(const SphericalStructure<T>& s);

// mu is given as mass per orbit; returns mu~(i) = sum_l mu_l phi_i(l).
template <class T>
std::vector<T> spherical_fourier_transform(const std::vector<T>& mu_orbit_mass,
                                           const SphericalStructure<T>& s);

// Per-orbit point probability |X|^{-1} (1 + sum_{i>=1} d_i phi_i(l) mu~(i)^t).
// Orbit masses (scaled by w_l) must sum to 1 and stay nonnegative.
template <class T>
std::vector<T> fourier_inversion(const SphericalStructure<T>& s, const std::vector<T>& coeffs,
                                 long t);

// (1/2) sum_l w_l |X|^{-1} |sum_{i>=1} d_i phi_i(l) mu~(i)^t|
template <class T>
T hom_exact_tv(const SphericalStructure<T>& s, const std::vector<T>& coeffs, long t);

// Restricted main term (half convention) over I subset of {1..n}.
template <class T>
T hom_main_term(const SphericalStructure<T>& s, const std::vector<T>& coeffs, long t,
                const std::vector<long>& I);

// (1/2) sum_{i not in I} sqrt(d_i) |mu~(i)|^t; float-valued (square roots).
template <class T>
double hom_error_term(const SphericalStructure<T>& s, const std::vector<T>& coeffs, long t,
                      const std::vector<long>& I);

// Step law of the urn chain over orbits: mass 1/(m+1) at distance 0 and
// m/(m+1) at distance 1.
template <class T>
std::vector<T> ehrenfest_step_law(long n, long m);

// Full-state-space kernel on (m+1)^n configurations (oracle use only):
// R(x,x) = 1/(m+1), R(x,y) = 1/(n(m+1)) at distance one.
template <class T>
Chain<T> ehrenfest_chain(long n, long m);

long ehrenfest_schedule(long n, long m, double c);

// Analytic-mode profile row: exact TV through the spectral engine at cost
// O(n^2), restriction cutoff from the e^{-ci}/sqrt(i!) tail recipe.
ProfilePoint ehrenfest_profile_point(long n, long m, double c, double epsilon = 1e-3);
std::vector<ProfilePoint> ehrenfest_profile_points(long n, long m, const std::vector<double>& cs,
                                                   double epsilon = 1e-3);

}  // namespace mixprof
