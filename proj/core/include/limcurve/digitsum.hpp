#pragma once

#include <cstdint>
#include <vector>

#include "limcurve/rational.hpp"
#include "limcurve/report.hpp"

namespace limcurve {

enum class Regime {
  contracting,  // |q| > 1/2, so |a| < 1
  boundary,     // |q| = 1/2
  expanding,    // |q| < 1/2
};

const char* to_string(Regime regime) noexcept;

// Weight q of the digit sum together with the Takagi parameter a = 1/(2q).
class QParam {
 public:
  explicit QParam(Rational q);

  const Rational& q() const noexcept { return q_; }
  const Rational& a() const noexcept { return a_; }
  Regime regime() const noexcept { return regime_; }

  bool is_one() const { return q_ == 1; }
  // |q| > 1/2, i.e. T_a is defined.
  bool admits_takagi() const noexcept { return regime_ == Regime::contracting; }
  // 1/2 < |q| < 1, the range where orbit limiting curves exist.
  bool admits_bridge() const;

  // [t]_q = 1 + q + ... + q^{t-1}; equals t when q = 1.
  Rational q_integer(std::uint64_t t) const;

 private:
  Rational q_;
  Rational a_;
  Regime regime_;
};

// Binary expansion of a nonnegative integer, least significant bit first.
struct DigitWord {
  std::vector<std::uint8_t> bits;

  static DigitWord from_value(const Integer& value);
  Integer value() const;
};

/// s_q(j): sum over set bits i of j of q^{i+1}.
Rational weighted_digit_sum(const Integer& j, const QParam& p);

inline constexpr std::uint64_t kDefaultOracleBudget = std::uint64_t{1} << 20;

/// Brute-force S_q by enumeration. Values are accumulated as integers scaled by
/// d^K (q = c/d, K = bit length of the budget) and reduced only when read.
class PartialSumOracle {
 public:
  explicit PartialSumOracle(const QParam& p, std::uint64_t budget = kDefaultOracleBudget);

  /// S_q(n). `n` must not be below the previous call and must not exceed the budget.
  Rational advance_to(std::uint64_t n);

  /// S_q(0), S_q(1), ..., S_q(n_max).
  std::vector<Rational> table(std::uint64_t n_max);

  std::uint64_t position() const noexcept { return position_; }

 private:
  std::uint64_t budget_;
  std::vector<Integer> weights_;
  Integer scale_;
  Integer accumulated_;
  std::uint64_t position_ = 0;
};

/// S_q(n) = sum_{j<n} s_q(j) by enumeration. Throws Error(budget_exceeded) for n > budget.
Rational partial_sum_bruteforce(std::uint64_t n, const QParam& p,
                                std::uint64_t budget = kDefaultOracleBudget);

struct FastSumStats {
  std::size_t steps = 0;
};

/// S_q(n) in one step per bit of n, walking the bits from the top with
/// S(2m) = 2q S(m) + m q, S(2m+1) = S(2m) + q s(m).
Rational partial_sum_fast(const Integer& n, const QParam& p, FastSumStats* stats = nullptr);

/// S_q(2^k) = q (1 - q^k)/(1 - q) 2^{k-1}; k 2^{k-1} for q = 1; 0 for k = 0.
Rational partial_sum_pow2(std::uint64_t k, const QParam& p);

/// The same closed form with the factor (1 - q^{k-1}) as commonly published. Kept so
/// the verification report can show where it breaks.
Rational partial_sum_pow2_printed(std::uint64_t k, const QParam& p);

// S_q(m 2^t + w) for 0 <= w < 2^t with t and w fixed:
//   (2q)^t S(m) + m 2^{t-1} q [t]_q + S(w) + w q^t s(m).
// The powers and S(w) are computed once, so each call costs O(bits of m).
class BlockSumEvaluator {
 public:
  BlockSumEvaluator(const QParam& p, std::uint64_t shift, Integer low);

  Rational at(const Integer& high) const;

  std::uint64_t shift() const noexcept { return shift_; }
  const Integer& low() const noexcept { return low_; }

 private:
  QParam p_;
  std::uint64_t shift_;
  Integer low_;
  Rational scale_;       // (2q)^t
  Rational linear_;      // 2^{t-1} q [t]_q
  Rational low_sum_;     // S(w)
  Rational low_weight_;  // w q^t
};

enum class IdentityForm { corrected, printed };

/// Exact check of the bit recurrences for s_q and S_q against the brute-force
/// oracle over 0 <= j < n_max and 1 <= n <= n_max, plus S(2^k) for 2^k <= n_max.
/// With IdentityForm::printed the exponent-sensitive identities use the printed exponents.
Report check_bit_recurrences(std::uint64_t n_max, const QParam& p,
                             IdentityForm form = IdentityForm::corrected);

}  // namespace limcurve
