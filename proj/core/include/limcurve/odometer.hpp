#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "limcurve/digitsum.hpp"
#include "limcurve/rational.hpp"

namespace limcurve {

// Finite L-bit window x_1, ..., x_L of a dyadic integer, x_1 least significant.
class OdometerState {
 public:
  enum class Origin { explicit_bits, seeded };

  static OdometerState from_bits(std::vector<std::uint8_t> bits);
  static OdometerState zero(std::size_t length);
  static OdometerState from_value(const Integer& value, std::size_t length);
  // Uniform i.i.d. bits from mt19937_64, least significant bit of each draw first.
  static OdometerState seeded(std::uint64_t seed, std::size_t length);

  std::size_t length() const noexcept { return bits_.size(); }
  // bits()[i] is x_{i+1}.
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  Origin origin() const noexcept { return origin_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  bool all_ones() const;

  friend bool operator==(const OdometerState& lhs, const OdometerState& rhs) {
    return lhs.bits_ == rhs.bits_;
  }

 private:
  OdometerState(std::vector<std::uint8_t> bits, Origin origin, std::optional<std::uint64_t> seed);

  friend OdometerState successor(const OdometerState& s);

  std::vector<std::uint8_t> bits_;
  Origin origin_ = Origin::explicit_bits;
  std::optional<std::uint64_t> seed_;
};

/// x + 1 with carry. Throws Error(overflow) when every bit is set.
OdometerState successor(const OdometerState& s);

/// Num(x_1..x_n) = sum_{i<=n} x_i 2^{i-1}.
Integer num_value(const OdometerState& s, std::size_t n);

struct WeightedValue {
  Rational value;
  std::optional<Rational> tail_bound;  // |q|^{L+1}/(1-|q|), absent when |q| >= 1
};

/// s_q(x) = sum_{i<=L} x_i q^i.
WeightedValue weighted_sum_state(const OdometerState& s, const QParam& p);

/// (0, s_q(x), s_q(x) + s_q(Tx), ...), count + 1 terms.
/// Throws Error(overflow) if the orbit would carry past the register.
std::vector<Rational> orbit_partial_sums(const OdometerState& s, const QParam& p,
                                         std::size_t count);

/// sum_{k<steps} s_q(T^k x) = S_q(N + steps) - S_q(N) with N = Num(x).
Rational orbit_sum(const OdometerState& s, const QParam& p, const Integer& steps);

struct StabilizingLevel {
  std::size_t level = 0;     // n_j
  std::size_t run_start = 0; // m_j, position of the last 1 before the zero run
  std::size_t run = 0;       // n_j - m_j
  Rational ratio;            // Num(x_1..x_{n_j}) / 2^{n_j} < 2^{-run}
};

/// One level per maximal run of >= r zeros, at n_j = m_j + r, in increasing order.
/// Throws Error(not_found) if the register holds no such run.
std::vector<StabilizingLevel> find_stabilizing_levels(const OdometerState& s, std::size_t r,
                                                      std::size_t max_levels);

/// Bits needed past a level so the truncated tail of s_q is at most tol:
/// ceil(log_{1/|q|}((1-|q|)/tol)). Requires |q| < 1.
std::size_t guard_bits(const QParam& p, double tol);

// Orbit sums of x over one full period 0 <= i <= 2^n of level n. Below the carry the
// tail bits x_{n+1}.. stay frozen; the last Num(x_1..x_n) steps see the tail plus one.
class LevelOrbit {
 public:
  LevelOrbit(const OdometerState& s, const QParam& p, std::size_t level);

  std::size_t level() const noexcept { return level_; }
  const Integer& prefix_value() const noexcept { return prefix_; }

  /// Exact orbit sum over the first i steps, 0 <= i <= 2^n.
  Rational sum(const Integer& i) const;

  /// sum(j 2^{n-g}) for j = 0..2^g, using the block identity for S_q.
  std::vector<Rational> grid_sums(std::uint64_t grid_bits) const;

 private:
  QParam p_;
  std::size_t level_;
  Integer prefix_;
  Integer period_;
  Rational tail_weight_;
  Rational carried_tail_weight_;
  Rational prefix_sum_;
  Rational period_sum_;
};

}  // namespace limcurve
