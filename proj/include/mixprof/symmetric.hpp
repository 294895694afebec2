#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixprof/numeric.hpp"
#include "mixprof/profile_point.hpp"

namespace mixprof {

inline constexpr long kMaxPartitionN = 40;
inline constexpr long kMaxExactCharacterN = 14;

// Weakly decreasing positive parts; labels an irrep of S_n.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<long> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1) throw std::invalid_argument("Partition: parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("Partition: parts must be weakly decreasing");
        }
    }

    const std::vector<long>& parts() const { return parts_; }
    long n() const {
        long s = 0;
        for (long p : parts_) s += p;
        return s;
    }
    long rows() const { return static_cast<long>(parts_.size()); }
    long part(long i) const {  // 1-based, 0 beyond the last row
        return (i >= 1 && i <= rows()) ? parts_[i - 1] : 0;
    }
    Partition conjugate() const;
    // lambda with the first row removed
    Partition without_first_row() const {
        return parts_.empty() ? Partition()
                              : Partition(std::vector<long>(parts_.begin() + 1, parts_.end()));
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

  private:
    std::vector<long> parts_;
};

// All partitions of n in lexicographic order of their part sequences.
std::vector<Partition> partitions(long n);

// d_lambda = n! / prod(hooks).
BigInt hook_dimension(const Partition& lambda);

// Conjugacy-class label: cycle type with its class size n!/prod(j^m_j m_j!).
struct CycleType {
    Partition type;
    BigInt class_size;

    explicit CycleType(Partition t);
    // +1 for even classes, -1 for odd: (-1)^(n - #cycles)
    int parity() const;
};

// Character values chi_lambda(rho) by border-strip recursion over beta-sets,
// cycle parts consumed in decreasing order, memoised on (shape, remaining
// suffix). Valid for |lambda| = |rho| <= 14.
BigInt mn_character(const Partition& lambda, const Partition& rho);

// Full table for S_n (n <= 14), cached per n. Rows are partitions(n) used
// both as irrep labels and as class labels.
class CharacterTable {
  public:
    static std::shared_ptr<const CharacterTable> get(long n);

    long n() const { return n_; }
    const std::vector<Partition>& labels() const { return labels_; }
    const std::vector<BigInt>& class_sizes() const { return class_sizes_; }
    const std::vector<BigInt>& dimensions() const { return dims_; }
    const std::vector<int>& parities() const { return parities_; }
    const BigInt& chi(std::size_t lambda_idx, std::size_t class_idx) const {
        return table_[lambda_idx][class_idx];
    }
    std::size_t index_of(const Partition& p) const;
    std::size_t k_cycle_class(long k) const;

  private:
    explicit CharacterTable(long n);
    long n_;
    std::vector<Partition> labels_;
    std::vector<BigInt> class_sizes_;
    std::vector<BigInt> dims_;
    std::vector<int> parities_;
    std::vector<std::vector<BigInt>> table_;
};

// chi_lambda(k-cycle class) / d_lambda, exact.
Rat character_ratio_exact(const Partition& lambda, long k);

// Frobenius coordinates in the integral convention a_i = lambda_i - i,
// b_i = lambda'_i - i for the m diagonal boxes, so that a_1 = n - r - 1
// and max{a_2, ..., b_1, ...} <= r hold exactly.
struct FrobeniusCoords {
    std::vector<long> a;
    std::vector<long> b;
    long m() const { return static_cast<long>(a.size()); }
};
FrobeniusCoords frobenius_coords(const Partition& lambda);

struct HoughRatio {
    double value;         // P0 * P1 * P2
    double error_bound;   // 0 when r < k, else exp(k log(k+r+1) + 1 - k log(n-k))
    bool hypothesis_ok;   // r + k + 1 < n/3
};
// Product-formula character ratio for long-first-row partitions. The stated
// hypothesis r + k + 1 < n/3 is enforced by default; passing
// enforce_hypothesis = false evaluates the product anyway and reports
// hypothesis_ok = false (the desk-scale cross-checks run in that regime).
HoughRatio character_ratio_hough(const Partition& lambda, long k, bool enforce_hypothesis = true);

// T_r(z) = sum_{i=0}^{r} binom(z, r-i) (-1)^i / i!.
Rat t_r_polynomial(long r, long z);

// f_c(m) = exp(-e^{-c}) (1+e^{-c})^m - 1.
double f_c_function(double c, long m);

struct FixedPointCounts {
    BigInt all;   // permutations of S_n with exactly r fixed points
    BigInt even;  // the alternating-group count
};
FixedPointCounts fixed_point_counts(long n, long r);

// Class function over the conjugacy classes of S_n.
struct ClassDistribution {
    long n;
    std::shared_ptr<const CharacterTable> table;
    std::vector<Rat> values;  // per class, per-element mass
};

// mu^{*t} of the k-cycle walk: (1/n!) sum_lambda d_lambda s_lambda(k)^t
// chi_lambda(.), exact; nonnegativity and normalisation are asserted.
ClassDistribution kcycle_distribution(long n, long k, long t);

// TV from Unif on the parity class prescribed by (k, t).
Rat kcycle_exact_tv(long n, long k, long t);

int kcycle_target_parity(long k, long t);

struct KcycleErrorTerm {
    double value;
    bool certified;   // true when computed exactly (n <= 14)
    Rat exact_value;  // set only when certified
};
// ET_M over lambda with lambda_1 <= n - M restricted to lambda_1 >= lambda'_1.
KcycleErrorTerm kcycle_error_term(long n, long k, long t, long M);

// MT_M = (1/n!) sum_{sigma in A_{n;k,t}} |sum_{lambda in P_n(M)} ...| with
// P_n(M) = {lambda : n - M < lambda_1 < n}, exact.
Rat kcycle_main_term(long n, long k, long t, long M);

long kcycle_schedule(long n, long k, double c);

ProfilePoint kcycle_profile_point(long n, long k, double c, long M);

struct ShortRowReport {
    bool applicable;      // lambda_1 >= lambda'_1 and one branch's hypothesis holds
    std::string branch;   // "k-large", "k-small", or reason for inapplicability
    double bound;
    double ratio_abs;     // |s_lambda(k)|
    bool holds;
};
ShortRowReport short_row_bound_check(const Partition& lambda, long k, long n);

// sum over lambda_1 = n - r of d_lambda, for the dimension-sum bound checks.
BigInt dimension_sum_at(long n, long r);

}  // namespace mixprof
