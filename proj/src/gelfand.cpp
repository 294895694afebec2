#include "mixprof/gelfand.hpp"

#include <cmath>
#include <stdexcept>

#include "mixprof/engine.hpp"

namespace mixprof {

namespace {

template <class T>
T pow_scalar(const T& base, long t);

template <>
double pow_scalar<double>(const double& base, long t) { return std::pow(base, double(t)); }

template <>
Rat pow_scalar<Rat>(const Rat& base, long t) { return pow_rat(base, static_cast<unsigned long>(t)); }

template <class T>
T scalar_from_rat(const Rat& q);

template <>
double scalar_from_rat<double>(const Rat& q) { return q.get_d(); }

template <>
Rat scalar_from_rat<Rat>(const Rat& q) { return q; }

}  // namespace

template <class T>
SphericalStructure<T> ehrenfest_structure(long n, long m) {
    if (n < 1 || m < 1) throw std::invalid_argument("ehrenfest_structure: n, m must be >= 1");
    SphericalStructure<T> s;
    s.n = n;
    s.orbit_sizes.resize(n + 1);
    s.dimensions.resize(n + 1);
    BigInt mpow(1);
    s.space_size = 0;
    for (long l = 0; l <= n; ++l) {
        s.orbit_sizes[l] = mpow * binomial_big(n, l);
        s.dimensions[l] = s.orbit_sizes[l];
        s.space_size += s.orbit_sizes[l];
        mpow *= m;
    }
    KrawtchoukParams kp(n, Rat(m));
    s.phi.assign(n + 1, std::vector<T>(n + 1));
    for (long i = 0; i <= n; ++i)
        for (long l = 0; l <= n; ++l) s.phi[i][l] = scalar_from_rat<T>(krawtchouk_exact(kp, i, l));
    return s;
}

template SphericalStructure<double> ehrenfest_structure<double>(long, long);
template SphericalStructure<Rat> ehrenfest_structure<Rat>(long, long);

template <class T>
SphericalValidation<T> validate_spherical_structure(const SphericalStructure<T>& s) {
    SphericalValidation<T> v{T(0), T(0), T(0)};
    auto bump = [](T& worst, const T& value) {
        T a = scalar_traits<T>::abs(value);
        if (a > worst) worst = a;
    };
    for (long l = 0; l <= s.n; ++l) bump(v.max_normalization_residual, s.phi[0][l] - T(1));
    for (long i = 0; i <= s.n; ++i) bump(v.max_normalization_residual, s.phi[i][0] - T(1));
    T size = scalar_from_rat<T>(Rat(s.space_size));
    for (long i = 0; i <= s.n; ++i)
        for (long j = i; j <= s.n; ++j) {
            T acc(0);
            for (long l = 0; l <= s.n; ++l)
                acc += scalar_from_rat<T>(Rat(s.orbit_sizes[l])) * s.phi[i][l] * s.phi[j][l];
            if (i == j) acc -= size / scalar_from_rat<T>(Rat(s.dimensions[i]));
            bump(v.max_orthogonality_residual, acc);
        }
    T dimsum(0);
    for (long i = 0; i <= s.n; ++i) dimsum += scalar_from_rat<T>(Rat(s.dimensions[i]));
    v.dimension_sum_residual = dimsum - size;
    return v;
}

template SphericalValidation<double> validate_spherical_structure<double>(
    const SphericalStructure<double>&);
template SphericalValidation<Rat> validate_spherical_structure<Rat>(const SphericalStructure<Rat>&);

template <class T>
std::vector<T> spherical_fourier_transform(const std::vector<T>& mu_orbit_mass,
                                           const SphericalStructure<T>& s) {
    if (mu_orbit_mass.size() != static_cast<std::size_t>(s.n + 1))
        throw std::invalid_argument("spherical_fourier_transform: orbit-mass dimension mismatch");
    std::vector<T> coeffs(s.n + 1, T(0));
    for (long i = 0; i <= s.n; ++i)
        for (long l = 0; l <= s.n; ++l) coeffs[i] += mu_orbit_mass[l] * s.phi[i][l];
    return coeffs;
}

template std::vector<double> spherical_fourier_transform<double>(const std::vector<double>&,
                                                                 const SphericalStructure<double>&);
template std::vector<Rat> spherical_fourier_transform<Rat>(const std::vector<Rat>&,
                                                           const SphericalStructure<Rat>&);

template <class T>
std::vector<T> fourier_inversion(const SphericalStructure<T>& s, const std::vector<T>& coeffs,
                                 long t) {
    if (coeffs.size() != static_cast<std::size_t>(s.n + 1))
        throw std::invalid_argument("fourier_inversion: coefficient dimension mismatch");
    std::vector<T> point_prob(s.n + 1);
    T inv_size = T(1) / scalar_from_rat<T>(Rat(s.space_size));
    T total(0);
    for (long l = 0; l <= s.n; ++l) {
        T acc(1);
        for (long i = 1; i <= s.n; ++i)
            acc += scalar_from_rat<T>(Rat(s.dimensions[i])) * s.phi[i][l] *
                   pow_scalar<T>(coeffs[i], t);
        point_prob[l] = inv_size * acc;
        if constexpr (scalar_traits<T>::exact) {
            if (point_prob[l] < T(0))
                throw std::runtime_error("fourier_inversion: negative probability");
        } else {
            if (point_prob[l] < -1e-10)
                throw std::runtime_error("fourier_inversion: negative probability beyond 1e-10");
        }
        total += scalar_from_rat<T>(Rat(s.orbit_sizes[l])) * point_prob[l];
    }
    T residual = scalar_traits<T>::abs(total - T(1));
    if constexpr (scalar_traits<T>::exact) {
        if (residual != T(0)) throw std::runtime_error("fourier_inversion: mass not conserved");
    } else {
        if (residual > 1e-10)
            throw std::runtime_error("fourier_inversion: mass not conserved within 1e-10");
    }
    return point_prob;
}

template std::vector<double> fourier_inversion<double>(const SphericalStructure<double>&,
                                                       const std::vector<double>&, long);
template std::vector<Rat> fourier_inversion<Rat>(const SphericalStructure<Rat>&,
                                                 const std::vector<Rat>&, long);

template <class T>
T hom_exact_tv(const SphericalStructure<T>& s, const std::vector<T>& coeffs, long t) {
    T inv_size = T(1) / scalar_from_rat<T>(Rat(s.space_size));
    T acc(0);
    for (long l = 0; l <= s.n; ++l) {
        T inner(0);
        for (long i = 1; i <= s.n; ++i)
            inner += scalar_from_rat<T>(Rat(s.dimensions[i])) * s.phi[i][l] *
                     pow_scalar<T>(coeffs[i], t);
        acc += scalar_from_rat<T>(Rat(s.orbit_sizes[l])) * scalar_traits<T>::abs(inner);
    }
    return acc * inv_size / T(2);
}

template double hom_exact_tv<double>(const SphericalStructure<double>&, const std::vector<double>&,
                                     long);
template Rat hom_exact_tv<Rat>(const SphericalStructure<Rat>&, const std::vector<Rat>&, long);

namespace {
void check_orbit_index_set(long n, const std::vector<long>& I) {
    for (long i : I)
        if (i < 1 || i > n)
            throw std::invalid_argument("spherical index set must lie inside {1..n}");
}
}  // namespace

template <class T>
T hom_main_term(const SphericalStructure<T>& s, const std::vector<T>& coeffs, long t,
                const std::vector<long>& I) {
    check_orbit_index_set(s.n, I);
    T inv_size = T(1) / scalar_from_rat<T>(Rat(s.space_size));
    T acc(0);
    for (long l = 0; l <= s.n; ++l) {
        T inner(0);
        for (long i : I)
            inner += scalar_from_rat<T>(Rat(s.dimensions[i])) * s.phi[i][l] *
                     pow_scalar<T>(coeffs[i], t);
        acc += scalar_from_rat<T>(Rat(s.orbit_sizes[l])) * scalar_traits<T>::abs(inner);
    }
    return acc * inv_size / T(2);
}

template double hom_main_term<double>(const SphericalStructure<double>&, const std::vector<double>&,
                                      long, const std::vector<long>&);
template Rat hom_main_term<Rat>(const SphericalStructure<Rat>&, const std::vector<Rat>&, long,
                                const std::vector<long>&);

template <class T>
double hom_error_term(const SphericalStructure<T>& s, const std::vector<T>& coeffs, long t,
                      const std::vector<long>& I) {
    check_orbit_index_set(s.n, I);
    std::vector<bool> in(s.n + 1, false);
    for (long i : I) in[i] = true;
    double acc = 0.0;
    for (long i = 1; i <= s.n; ++i) {
        if (in[i]) continue;
        long ex = 0;
        double mant = mpz_get_d_2exp(&ex, s.dimensions[i].get_mpz_t());
        double log_sqrt_d = 0.5 * (std::log(mant) + double(ex) * std::log(2.0));
        double mu_abs = std::fabs(to_double(coeffs[i]));
        if (mu_abs == 0.0) {
            if (t == 0) acc += std::exp(log_sqrt_d);
            continue;
        }
        acc += std::exp(log_sqrt_d + double(t) * std::log(mu_abs));
    }
    return 0.5 * acc;
}

template double hom_error_term<double>(const SphericalStructure<double>&,
                                       const std::vector<double>&, long, const std::vector<long>&);
template double hom_error_term<Rat>(const SphericalStructure<Rat>&, const std::vector<Rat>&, long,
                                    const std::vector<long>&);

template <class T>
std::vector<T> ehrenfest_step_law(long n, long m) {
    std::vector<T> mu(n + 1, T(0));
    mu[0] = scalar_from_rat<T>(frac(1, m + 1));
    mu[1] = scalar_from_rat<T>(frac(m, m + 1));
    return mu;
}

template std::vector<double> ehrenfest_step_law<double>(long, long);
template std::vector<Rat> ehrenfest_step_law<Rat>(long, long);

template <class T>
Chain<T> ehrenfest_chain(long n, long m) {
    double states_d = std::pow(double(m + 1), double(n));
    if (states_d > 2e4) throw std::length_error("ehrenfest_chain: state space exceeds 20000");
    long states = 1;
    for (long i = 0; i < n; ++i) states *= (m + 1);
    Matrix<T> kernel(states, states, T(0));
    T hold = scalar_from_rat<T>(frac(1, m + 1));
    T move = scalar_from_rat<T>(frac(1, static_cast<long>(n) * (m + 1)));
    std::vector<long> digits(n);
    for (long x = 0; x < states; ++x) {
        long v = x;
        for (long i = 0; i < n; ++i) {
            digits[i] = v % (m + 1);
            v /= (m + 1);
        }
        kernel(x, x) += hold;
        long place = 1;
        for (long i = 0; i < n; ++i) {
            for (long u = 0; u <= m; ++u) {
                if (u == digits[i]) continue;
                long y = x + (u - digits[i]) * place;
                kernel(x, y) += move;
            }
            place *= (m + 1);
        }
    }
    std::vector<T> station(states, scalar_from_rat<T>(frac(1, states)));
    return Chain<T>(std::move(kernel), Distribution<T>(std::move(station)), true);
}

template Chain<double> ehrenfest_chain<double>(long, long);
template Chain<Rat> ehrenfest_chain<Rat>(long, long);

long ehrenfest_schedule(long n, long m, double c) {
    double raw = 0.5 * double(n) * std::log(double(n) * double(m)) + c * double(n);
    long t = std::llround(raw);
    if (t < 1) throw std::domain_error("ehrenfest_schedule: schedule not a positive integer");
    return t;
}

std::vector<ProfilePoint> ehrenfest_profile_points(long n, long m, const std::vector<double>& cs,
                                                   double epsilon) {
    std::vector<Rat> mu(n + 1);
    for (long i = 0; i <= n; ++i) mu[i] = frac(n - i, n);
    KrawtchoukSpectralEngine engine(n, Rat(m), std::move(mu));
    std::vector<KrawtchoukSpectralEngine::Request> reqs;
    for (double c : cs)
        reqs.push_back({ehrenfest_schedule(n, m, c), std::min<long>(truncation_index(c, epsilon), n)});
    auto results = engine.evaluate(reqs);

    std::vector<ProfilePoint> out;
    const double log_m = std::log(double(m));
    for (std::size_t idx = 0; idx < cs.size(); ++idx) {
        ProfilePoint pt;
        pt.c = cs[idx];
        pt.t = reqs[idx].t;
        pt.exact_tv = 0.5 * results[idx].full_sum;
        pt.main_term = 0.5 * results[idx].restricted_sum;
        double et = 0.0;
        for (long i = reqs[idx].m + 1; i <= n; ++i) {
            if (i == n && pt.t > 0) break;  // mu~(n) = 0
            double log_mu = i == n ? 0.0 : double(pt.t) * std::log(double(n - i) / double(n));
            et += std::exp(0.5 * (double(i) * log_m + log_binomial(n, i)) + log_mu);
        }
        pt.error_term = 0.5 * et;
        pt.limit_value = gaussian_profile(cs[idx]);
        out.push_back(pt);
    }
    return out;
}

ProfilePoint ehrenfest_profile_point(long n, long m, double c, double epsilon) {
    return ehrenfest_profile_points(n, m, {c}, epsilon)[0];
}

}  // namespace mixprof
