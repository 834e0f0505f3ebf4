#pragma once

#include <cstdint>
#include <optional>

#include "limcurve/rational.hpp"
#include "limcurve/report.hpp"

namespace limcurve {

// k / 2^m in canonical form (m = 0 or k odd).
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(Integer numerator, std::uint64_t exponent);

  static std::optional<DyadicRational> from_rational(const Rational& x);

  const Integer& numerator() const noexcept { return numerator_; }
  std::uint64_t exponent() const noexcept { return exponent_; }
  Rational value() const;
  bool in_unit_interval() const;

  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;

 private:
  Integer numerator_ = 0;
  std::uint64_t exponent_ = 0;
};

// x -> slope * x + offset
struct AffineMap {
  Rational slope;
  Rational offset;

  Rational operator()(const Rational& x) const { return slope * x + offset; }
  // max |g| over [0, 1]
  Rational sup_norm() const;
};

// f(x/2) = a0 f(x) + g0(x),  f((x+1)/2) = a1 f(x) + g1(x)  on [0, 1].
struct DeRhamSystem {
  Rational a0;
  Rational a1;
  AffineMap g0;
  AffineMap g1;

  // a0 = a1 = a, g0 = x/2, g1 = (1-x)/2; the solution is T_a.
  static DeRhamSystem takagi(const Rational& a);
  // a0 = a1 = 1/(2q), g0 = (2q-3)x/4, g1 = (2q-1)(x+1)/4; the solution is q x - T_a(x)/2.
  static DeRhamSystem fluctuation_profile(const Rational& q);

  bool contracting() const;
};

/// dist(x, Z)
Rational nearest_int_dist(const Rational& x);

struct SeriesValue {
  double value = 0.0;
  double bound = 0.0;  // tail bound |a|^N / (2(1-|a|))
  std::size_t terms = 0;
  Rational partial;    // exact sum of the first `terms` terms
};

/// T_a(x) = sum a^n dist(2^n x, Z), truncated once the tail bound is <= tol.
/// Throws Error(invalid_parameter) when |a| >= 1 or tol <= 0.
SeriesValue takagi_series(const Rational& x, const Rational& a, double tol);

/// Exact T_a(t) at a dyadic point of [0, 1], by unwinding the two branch equations
/// until the argument reaches 0 or 1.
Rational takagi_dyadic_exact(const DyadicRational& t, const Rational& a);

struct Consistency {
  bool consistent = false;
  Rational residual;  // left side minus right side of the matching condition at x = 1/2
};

/// Throws Error(invalid_parameter) if max(|a0|, |a1|) >= 1.
Consistency derham_consistency(const DeRhamSystem& sys);

enum class EvalMode { exact_dyadic, certified_approx };

struct DeRhamValue {
  Rational value;
  double bound = 0.0;  // 0 for exact results
  std::size_t depth = 0;
};

/// Evaluates the unique continuous solution of `sys` at x in [0, 1].
/// exact_dyadic requires a dyadic x. certified_approx unwinds N binary digits with
/// max|a|^N * max|g| / (1 - max|a|) <= tol; dyadic inputs are evaluated exactly.
DeRhamValue derham_eval(const DeRhamSystem& sys, const Rational& x, EvalMode mode,
                        double tol = 1e-12);

/// Scaling identity T_a(t) = (2q)^m T_a(t/2^m) - t q [m]_q and the symmetry
/// T_a(t) = T_a(1-t), for t = j/2^e, 0 <= j <= 2^e, and 1 <= m <= max_shift.
Report check_takagi_scaling(std::uint64_t exponent, std::uint64_t max_shift, const Rational& a);

}  // namespace limcurve
