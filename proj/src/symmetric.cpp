#include "mixprof/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "mixprof/special.hpp"

namespace mixprof {

Partition Partition::conjugate() const {
    if (parts_.empty()) return Partition();
    std::vector<long> conj(parts_[0], 0);
    for (long p : parts_)
        for (long j = 0; j < p; ++j) ++conj[j];
    return Partition(std::move(conj));
}

std::vector<Partition> partitions(long n) {
    if (n < 0) throw std::invalid_argument("partitions: negative n");
    if (n > kMaxPartitionN) throw std::length_error("partitions: n exceeds cap of 40");
    std::vector<Partition> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<long> cur;
    // descending-part compositions, emitted in lex order of the sequences
    auto rec = [&](auto&& self, long remaining, long max_part) -> void {
        if (remaining == 0) {
            std::vector<long> parts = cur;
            out.emplace_back(std::move(parts));
            return;
        }
        for (long p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    std::sort(out.begin(), out.end());
    return out;
}

BigInt hook_dimension(const Partition& lambda) {
    const long n = lambda.n();
    if (n > kMaxPartitionN) throw std::length_error("hook_dimension: n exceeds cap of 40");
    if (n == 0) return BigInt(1);
    Partition conj = lambda.conjugate();
    BigInt hooks(1);
    for (long i = 1; i <= lambda.rows(); ++i)
        for (long j = 1; j <= lambda.part(i); ++j)
            hooks *= BigInt(lambda.part(i) - j + conj.part(j) - i + 1);
    BigInt dim = factorial_big(n);
    mpz_divexact(dim.get_mpz_t(), dim.get_mpz_t(), hooks.get_mpz_t());
    return dim;
}

CycleType::CycleType(Partition t) : type(std::move(t)) {
    const long n = type.n();
    std::map<long, long> mult;
    for (long p : type.parts()) ++mult[p];
    BigInt denom(1);
    for (auto [j, m] : mult) {
        BigInt jp;
        mpz_ui_pow_ui(jp.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(m));
        denom *= jp * factorial_big(m);
    }
    class_size = factorial_big(n);
    mpz_divexact(class_size.get_mpz_t(), class_size.get_mpz_t(), denom.get_mpz_t());
}

int CycleType::parity() const {
    long transpositions = type.n() - type.rows();
    return transpositions % 2 == 0 ? 1 : -1;
}

namespace {

// chi via beta-sets: remove a border strip of size s by lowering one beta
// number; the sign is (-1)^{#beta numbers jumped over}.
struct MnEvaluator {
    std::map<std::vector<long>, BigInt> memo;

    BigInt eval(const std::vector<long>& shape, const std::vector<long>& parts, std::size_t idx) {
        if (idx == parts.size()) return BigInt(1);  // shape must be empty by size bookkeeping
        std::vector<long> key = shape;
        key.push_back(-1);
        key.insert(key.end(), parts.begin() + static_cast<long>(idx), parts.end());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        const long s = parts[idx];
        const long rows = static_cast<long>(shape.size());
        std::vector<long> beta(rows);
        for (long j = 0; j < rows; ++j) beta[j] = shape[j] + (rows - 1 - j);
        BigInt acc(0);
        for (long j = 0; j < rows; ++j) {
            long target = beta[j] - s;
            if (target < 0) continue;
            bool occupied = false;
            long jumped = 0;
            for (long l = 0; l < rows; ++l) {
                if (l == j) continue;
                if (beta[l] == target) {
                    occupied = true;
                    break;
                }
                if (beta[l] > target && beta[l] < beta[j]) ++jumped;
            }
            if (occupied) continue;
            std::vector<long> nb = beta;
            nb[j] = target;
            std::sort(nb.begin(), nb.end(), std::greater<long>());
            std::vector<long> nshape;
            const long m = static_cast<long>(nb.size());
            for (long l = 0; l < m; ++l) {
                long part = nb[l] - (m - 1 - l);
                if (part > 0) nshape.push_back(part);
            }
            BigInt sub = eval(nshape, parts, idx + 1);
            if (jumped % 2 == 0)
                acc += sub;
            else
                acc -= sub;
        }
        memo.emplace(std::move(key), acc);
        return acc;
    }
};

}  // namespace

BigInt mn_character(const Partition& lambda, const Partition& rho) {
    if (lambda.n() != rho.n()) throw std::invalid_argument("mn_character: |lambda| != |rho|");
    if (lambda.n() > kMaxExactCharacterN)
        throw std::length_error("mn_character: exact characters capped at n = 14");
    std::vector<long> parts = rho.parts();  // already sorted descending
    MnEvaluator ev;
    return ev.eval(lambda.parts(), parts, 0);
}

CharacterTable::CharacterTable(long n) : n_(n) {
    labels_ = partitions(n);
    const std::size_t count = labels_.size();
    class_sizes_.resize(count);
    dims_.resize(count);
    parities_.resize(count);
    for (std::size_t c = 0; c < count; ++c) {
        CycleType ct(labels_[c]);
        class_sizes_[c] = ct.class_size;
        parities_[c] = ct.parity();
    }
    table_.assign(count, std::vector<BigInt>(count));
    MnEvaluator ev;  // shared memo across the whole table
    for (std::size_t l = 0; l < count; ++l) {
        for (std::size_t c = 0; c < count; ++c)
            table_[l][c] = ev.eval(labels_[l].parts(), labels_[c].parts(), 0);
        dims_[l] = hook_dimension(labels_[l]);
    }
}

std::shared_ptr<const CharacterTable> CharacterTable::get(long n) {
    if (n < 1 || n > kMaxExactCharacterN)
        throw std::length_error("CharacterTable: n must be in 1..14");
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const CharacterTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto table = std::shared_ptr<const CharacterTable>(new CharacterTable(n));
    cache.emplace(n, table);
    return table;
}

std::size_t CharacterTable::index_of(const Partition& p) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), p);
    if (it == labels_.end() || !(*it == p))
        throw std::out_of_range("CharacterTable: unknown partition");
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t CharacterTable::k_cycle_class(long k) const {
    if (k < 1 || k > n_) throw std::out_of_range("CharacterTable: k outside 1..n");
    std::vector<long> parts{k};
    parts.insert(parts.end(), static_cast<std::size_t>(n_ - k), 1L);
    return index_of(Partition(std::move(parts)));
}

Rat character_ratio_exact(const Partition& lambda, long k) {
    const long n = lambda.n();
    if (k < 1 || k > n) throw std::out_of_range("character_ratio_exact: k outside 1..n");
    std::vector<long> parts{k};
    parts.insert(parts.end(), static_cast<std::size_t>(n - k), 1L);
    BigInt chi = mn_character(lambda, Partition(std::move(parts)));
    return Rat(chi) / Rat(hook_dimension(lambda));
}

FrobeniusCoords frobenius_coords(const Partition& lambda) {
    Partition conj = lambda.conjugate();
    FrobeniusCoords fc;
    for (long i = 1; i <= lambda.rows() && lambda.part(i) >= i; ++i) {
        fc.a.push_back(lambda.part(i) - i);
        fc.b.push_back(conj.part(i) - i);
    }
    return fc;
}

namespace {

Rat falling_factorial(long z, long k) {
    Rat acc(1);
    for (long j = 0; j < k; ++j) acc *= Rat(z - j);
    return acc;
}

}  // namespace

HoughRatio character_ratio_hough(const Partition& lambda, long k, bool enforce_hypothesis) {
    const long n = lambda.n();
    const long r = n - lambda.part(1);
    Partition conj = lambda.conjugate();
    if (conj.part(1) > lambda.part(1))
        throw std::invalid_argument("character_ratio_hough: requires lambda_1 >= lambda'_1");
    if (k < 2 || k > n) throw std::out_of_range("character_ratio_hough: k outside 2..n");
    const bool hyp = double(r + k + 1) < double(n) / 3.0;
    if (enforce_hypothesis && !hyp)
        throw std::invalid_argument("character_ratio_hough: hypothesis r + k + 1 < n/3 violated");

    FrobeniusCoords fc = frobenius_coords(lambda);
    const long m = fc.m();
    Rat p0 = falling_factorial(n - r - 1, k) / falling_factorial(n, k);
    Rat p1(1);
    for (long i = 2; i <= m; ++i) {
        long denom = n - (1 + r + lambda.part(i) - i);
        if (denom == 0) throw std::runtime_error("character_ratio_hough: degenerate P1 factor");
        p1 *= frac(denom - k, denom);
    }
    Rat p2_inv(1);
    for (long i = 1; i <= m; ++i) {
        long denom = n - (r - conj.part(i) + i);
        if (denom == 0 || denom == k)
            throw std::runtime_error("character_ratio_hough: degenerate P2 factor");
        p2_inv *= frac(denom - k, denom);
    }
    Rat value = p0 * p1 / p2_inv;

    HoughRatio out;
    out.value = to_double(value);
    out.hypothesis_ok = hyp;
    out.error_bound =
        r < k ? 0.0
              : std::exp(double(k) * std::log(double(k + r + 1)) + 1.0 -
                         double(k) * std::log(double(n - k)));
    return out;
}

Rat t_r_polynomial(long r, long z) {
    if (r < 1) throw std::invalid_argument("t_r_polynomial: r must be >= 1");
    if (z < 0) throw std::invalid_argument("t_r_polynomial: z must be a nonnegative integer");
    Rat acc(0);
    for (long i = 0; i <= r; ++i) {
        BigInt b = binomial_big(z, r - i);
        if (b == 0) continue;
        Rat term = Rat(b) / Rat(factorial_big(i));
        if (i % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

double f_c_function(double c, long m) {
    if (m < 0) throw std::invalid_argument("f_c_function: m must be >= 0");
    double e = std::exp(-c);
    return std::exp(-e) * std::pow(1.0 + e, double(m)) - 1.0;
}

FixedPointCounts fixed_point_counts(long n, long r) {
    if (n < 0 || n > kMaxPartitionN) throw std::length_error("fixed_point_counts: n outside 0..40");
    if (r < 0 || r > n) throw std::out_of_range("fixed_point_counts: r outside 0..n");
    const long m = n - r;
    // derangement count D_m = m! sum (-1)^l / l!
    BigInt derangements(0);
    for (long l = 0; l <= m; ++l) {
        BigInt term = factorial_big(m);
        mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), factorial_big(l).get_mpz_t());
        if (l % 2 == 0)
            derangements += term;
        else
            derangements -= term;
    }
    // even derangements: (D_m + (-1)^m (1 - m)) / 2; the textbook half-count
    // needs the boundary corrections |A_0| = |A_1| = 1 of inclusion-exclusion
    BigInt even_der = derangements + BigInt((m % 2 == 0 ? 1 : -1) * (1 - m));
    mpz_divexact_ui(even_der.get_mpz_t(), even_der.get_mpz_t(), 2);
    BigInt choose = binomial_big(n, r);
    return {choose * derangements, choose * even_der};
}

namespace {

std::vector<Rat> kcycle_ratios_pow(const CharacterTable& table, long k, long t) {
    const std::size_t kclass = table.k_cycle_class(k);
    std::vector<Rat> s_pow(table.labels().size());
    for (std::size_t l = 0; l < table.labels().size(); ++l) {
        Rat s = Rat(table.chi(l, kclass)) / Rat(table.dimensions()[l]);
        s_pow[l] = pow_rat(s, static_cast<unsigned long>(t));
    }
    return s_pow;
}

}  // namespace

int kcycle_target_parity(long k, long t) {
    // step parity (-1)^{k-1}; after t steps the walk sits on that parity^t
    long sign = ((k - 1) % 2 == 0) ? 1 : -1;
    return (sign == 1 || t % 2 == 0) ? 1 : -1;
}

ClassDistribution kcycle_distribution(long n, long k, long t) {
    if (n > kMaxExactCharacterN) throw std::length_error("kcycle_distribution: n capped at 14");
    if (k < 2 || k > n) throw std::out_of_range("kcycle_distribution: k outside 2..n");
    if (t < 0) throw std::invalid_argument("kcycle_distribution: negative time");
    auto table = CharacterTable::get(n);
    const std::size_t count = table->labels().size();
    auto s_pow = kcycle_ratios_pow(*table, k, t);
    const Rat inv_group = Rat(1) / Rat(factorial_big(n));

    ClassDistribution dist{n, table, std::vector<Rat>(count)};
    for (std::size_t c = 0; c < count; ++c) {
        Rat acc(0);
        for (std::size_t l = 0; l < count; ++l)
            acc += Rat(table->dimensions()[l]) * s_pow[l] * Rat(table->chi(l, c));
        dist.values[c] = acc * inv_group;
        if (dist.values[c] < 0)
            throw std::runtime_error("kcycle_distribution: negative class mass");
    }
    Rat total(0);
    for (std::size_t c = 0; c < count; ++c)
        total += Rat(table->class_sizes()[c]) * dist.values[c];
    if (total != 1) throw std::runtime_error("kcycle_distribution: mass does not sum to 1");
    return dist;
}

Rat kcycle_exact_tv(long n, long k, long t) {
    ClassDistribution dist = kcycle_distribution(n, k, t);
    const auto& table = *dist.table;
    const int parity = kcycle_target_parity(k, t);
    const Rat target = Rat(2) / Rat(factorial_big(n));
    Rat acc(0);
    for (std::size_t c = 0; c < table.labels().size(); ++c) {
        Rat target_mass = table.parities()[c] == parity ? target : Rat(0);
        acc += Rat(table.class_sizes()[c]) * abs(dist.values[c] - target_mass);
    }
    return acc / 2;
}

KcycleErrorTerm kcycle_error_term(long n, long k, long t, long M) {
    if (M < 1) throw std::invalid_argument("kcycle_error_term: M must be >= 1");
    if (k < 2 || k > n) throw std::out_of_range("kcycle_error_term: k outside 2..n");
    // The sum runs over all lambda with lambda_1 <= n - M except the sign
    // partition: the parity-class target absorbs the sign irrep exactly
    // (Unif on the parity class has Fourier weight on trivial and sign
    // only), so it never contributes to the deviation.
    KcycleErrorTerm out{0.0, false, Rat(0)};
    if (n <= kMaxExactCharacterN) {
        auto table = CharacterTable::get(n);
        std::size_t kclass = table->k_cycle_class(k);
        Rat acc(0);
        for (std::size_t l = 0; l < table->labels().size(); ++l) {
            const Partition& lambda = table->labels()[l];
            if (lambda.part(1) > n - M) continue;
            if (lambda.part(1) == 1) continue;  // sign partition (1^n)
            Rat s = abs(Rat(table->chi(l, kclass)) / Rat(table->dimensions()[l]));
            acc += Rat(table->dimensions()[l]) * pow_rat(s, static_cast<unsigned long>(t));
        }
        out.exact_value = acc;
        out.value = to_double(acc);
        out.certified = true;
        return out;
    }
    // surrogate path: asymptotic bounds in place of exact ratios; the result
    // is an estimate, flagged uncertified. Conjugate shapes reduce to their
    // transpose through |s_{lambda'}| = |s_lambda|.
    if (n > kMaxPartitionN) throw std::length_error("kcycle_error_term: n capped at 40");
    double acc = 0.0;
    const double log_n = std::log(double(n));
    for (const Partition& orig : partitions(n)) {
        if (orig.part(1) > n - M) continue;
        if (orig.part(1) == 1) continue;  // sign partition
        Partition conj = orig.conjugate();
        const Partition& lambda = conj.part(1) > orig.part(1) ? conj : orig;
        const long r = n - lambda.part(1);
        double log_s_abs;
        if (double(r + k + 1) < double(n) / 3.0) {
            HoughRatio h = character_ratio_hough(lambda, k, true);
            log_s_abs = std::log(std::fabs(h.value) + h.error_bound);
        } else if (double(r) >= double(n) / 3.0) {
            log_s_abs = double(k) > 6.0 * log_n ? -0.6 * double(k)
                                                : -0.6 * double(r) * double(k) / double(n);
        } else {
            // gap between the two regimes: long-first-row estimate
            log_s_abs = -double(r) * double(k) / double(n) +
                        std::log1p(10.0 * double(k) / (double(n) * double(n)));
        }
        double log_dim;
        {
            BigInt d = hook_dimension(orig);
            long ex = 0;
            double mant = mpz_get_d_2exp(&ex, d.get_mpz_t());
            log_dim = std::log(mant) + double(ex) * std::log(2.0);
        }
        acc += std::exp(log_dim + double(t) * log_s_abs);
    }
    out.value = acc;
    return out;
}

Rat kcycle_main_term(long n, long k, long t, long M) {
    if (M < 1 || M > n) throw std::invalid_argument("kcycle_main_term: M outside 1..n");
    if (n > kMaxExactCharacterN) throw std::length_error("kcycle_main_term: n capped at 14");
    auto table = CharacterTable::get(n);
    const std::size_t count = table->labels().size();
    auto s_pow = kcycle_ratios_pow(*table, k, t);
    const int parity = kcycle_target_parity(k, t);

    Rat acc(0);
    for (std::size_t c = 0; c < count; ++c) {
        if (table->parities()[c] != parity) continue;
        Rat inner(0);
        for (std::size_t l = 0; l < count; ++l) {
            const long lambda1 = table->labels()[l].part(1);
            if (!(lambda1 > n - M && lambda1 < n)) continue;
            inner += Rat(table->dimensions()[l]) * s_pow[l] * Rat(table->chi(l, c));
        }
        acc += Rat(table->class_sizes()[c]) * abs(inner);
    }
    return acc / Rat(factorial_big(n));
}

long kcycle_schedule(long n, long k, double c) {
    double raw = double(n) / double(k) * (std::log(double(n)) + c);
    long t = std::llround(raw);
    if (t < 1) throw std::domain_error("kcycle_schedule: schedule not a positive integer");
    return t;
}

ProfilePoint kcycle_profile_point(long n, long k, double c, long M) {
    ProfilePoint pt;
    pt.c = c;
    pt.t = kcycle_schedule(n, k, c);
    pt.exact_tv = to_double(kcycle_exact_tv(n, k, pt.t));
    pt.main_term = to_double(kcycle_main_term(n, k, pt.t, M));
    pt.error_term = kcycle_error_term(n, k, pt.t, M).value;
    pt.limit_value = poisson_profile(c);
    return pt;
}

ShortRowReport short_row_bound_check(const Partition& lambda, long k, long n) {
    ShortRowReport rep{false, "", 0.0, 0.0, false};
    if (lambda.n() != n) throw std::invalid_argument("short_row_bound_check: |lambda| != n");
    Partition conj = lambda.conjugate();
    if (conj.part(1) > lambda.part(1)) {
        rep.branch = "inapplicable: lambda'_1 > lambda_1";
        return rep;
    }
    const long r = n - lambda.part(1);
    const double log_n = std::log(double(n));
    rep.ratio_abs = std::fabs(to_double(character_ratio_exact(lambda, k)));
    if (double(k) >= 6.0 * log_n) {
        const double a1 = double(lambda.part(1) - 1);
        if (a1 > std::exp(-0.68) * double(n)) {
            rep.branch = "inapplicable: a_1 > e^{-0.68} n";
            return rep;
        }
        rep.applicable = true;
        rep.branch = "k-large";
        rep.bound = std::exp(-(0.5 + 0.1) * double(k));
    } else {
        if (!(3 * r >= n)) {
            rep.branch = "inapplicable: r < n/3";
            return rep;
        }
        rep.applicable = true;
        rep.branch = "k-small";
        rep.bound = std::exp(-(0.5 + 0.1) * double(r) * double(k) / double(n));
    }
    rep.holds = rep.ratio_abs <= rep.bound;
    return rep;
}

BigInt dimension_sum_at(long n, long r) {
    BigInt acc(0);
    for (const Partition& rest : partitions(r)) {
        if (rest.part(1) > n - r) continue;  // first row n-r must stay the longest
        std::vector<long> parts{n - r};
        parts.insert(parts.end(), rest.parts().begin(), rest.parts().end());
        acc += hook_dimension(Partition(std::move(parts)));
    }
    return acc;
}

}  // namespace mixprof
