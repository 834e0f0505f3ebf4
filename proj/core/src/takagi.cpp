#include "limcurve/takagi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "limcurve/digitsum.hpp"
#include "limcurve/error.hpp"

namespace limcurve {

DyadicRational::DyadicRational(Integer numerator, std::uint64_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  const std::uint64_t zeros = mpz_scan1(numerator_.get_mpz_t(), 0);
  const std::uint64_t drop = std::min(zeros, exponent_);
  if (drop > 0) {
    mpz_fdiv_q_2exp(numerator_.get_mpz_t(), numerator_.get_mpz_t(), drop);
    exponent_ -= drop;
  }
}

std::optional<DyadicRational> DyadicRational::from_rational(const Rational& x) {
  const Integer& den = x.get_den();
  if (!is_pow2(den)) return std::nullopt;
  return DyadicRational(x.get_num(), bit_length(den) - 1);
}

Rational DyadicRational::value() const {
  Rational r(numerator_, pow2(exponent_));
  r.canonicalize();
  return r;
}

bool DyadicRational::in_unit_interval() const {
  return numerator_ >= 0 && numerator_ <= pow2(exponent_);
}

Rational AffineMap::sup_norm() const {
  const Rational left = abs(offset);
  const Rational right = abs(slope + offset);
  return left > right ? left : right;
}

DeRhamSystem DeRhamSystem::takagi(const Rational& a) {
  return DeRhamSystem{a, a, AffineMap{Rational(1, 2), 0}, AffineMap{Rational(-1, 2), Rational(1, 2)}};
}

DeRhamSystem DeRhamSystem::fluctuation_profile(const Rational& q) {
  if (q == 0) throw Error(ErrorKind::invalid_parameter, "q must be nonzero");
  const Rational a = 1 / (2 * q);
  const Rational left = (2 * q - 3) / 4;
  const Rational right = (2 * q - 1) / 4;
  return DeRhamSystem{a, a, AffineMap{left, 0}, AffineMap{right, right}};
}

bool DeRhamSystem::contracting() const { return abs(a0) < 1 && abs(a1) < 1; }

Rational nearest_int_dist(const Rational& x) {
  const Rational frac = x - Rational(floor(x));
  const Rational other = 1 - frac;
  return frac < other ? frac : other;
}

SeriesValue takagi_series(const Rational& x, const Rational& a, double tol) {
  const Rational mag = abs(a);
  if (mag >= 1) {
    throw Error(ErrorKind::invalid_parameter,
                "Takagi series diverges for |a| >= 1 (a = " + to_string(a) + ")");
  }
  if (!(tol > 0)) throw Error(ErrorKind::invalid_parameter, "tolerance must be positive");

  SeriesValue out;
  const double m = to_double(mag);
  const double denom = 2.0 * (1.0 - m);
  double tail = 1.0 / denom;
  std::size_t terms = 0;
  while (tail > tol) {
    tail *= m;
    ++terms;
  }
  out.terms = std::max<std::size_t>(terms, 1);
  out.bound = terms == 0 ? 0.0 : tail;
  if (terms == 0) out.bound = m / denom;  // only for an absurdly large tol

  Rational y = x - Rational(floor(x));
  Rational coef = 1;
  Rational partial = 0;
  for (std::size_t n = 0; n < out.terms; ++n) {
    const Rational other = 1 - y;
    partial += coef * (y < other ? y : other);
    y *= 2;
    if (y >= 1) y -= 1;
    coef *= a;
  }
  out.partial = partial;
  out.value = to_double(partial);
  return out;
}

Rational takagi_dyadic_exact(const DyadicRational& t, const Rational& a) {
  if (!t.in_unit_interval()) {
    throw Error(ErrorKind::invalid_point, "Takagi argument outside [0, 1]: " + to_string(t.value()));
  }
  if (abs(a) >= 1) {
    throw Error(ErrorKind::invalid_parameter, "Takagi parameter needs |a| < 1 (a = " + to_string(a) + ")");
  }
  // T(y) = a T(2y) + y on [0, 1/2], T(y) = a T(2y - 1) + 1 - y on [1/2, 1].
  Integer k = t.numerator();
  std::uint64_t m = t.exponent();
  Rational value = 0;
  Rational coef = 1;
  while (m > 0) {
    const Integer unit = pow2(m);
    const Rational y = ratio(k, unit);
    if (2 * k <= unit) {
      value += coef * y;
    } else {
      value += coef * (1 - y);
      k -= unit / 2;
    }
    // 2y (or 2y - 1) has exponent m - 1 with the same odd numerator.
    --m;
    coef *= a;
  }
  value.canonicalize();
  return value;
}

Consistency derham_consistency(const DeRhamSystem& sys) {
  if (!sys.contracting()) {
    throw Error(ErrorKind::invalid_parameter, "de Rham system is not contracting (max |a_i| >= 1)");
  }
  const Rational lhs = sys.a0 * sys.g1(1) / (1 - sys.a1) + sys.g0(1);
  const Rational rhs = sys.a1 * sys.g0(0) / (1 - sys.a0) + sys.g1(0);
  Consistency c;
  c.residual = lhs - rhs;
  c.consistent = c.residual == 0;
  return c;
}

namespace {

void require_solvable(const DeRhamSystem& sys) {
  const Consistency c = derham_consistency(sys);
  if (!c.consistent) {
    throw Error(ErrorKind::inconsistent_system,
                "de Rham system fails the matching condition at x = 1/2 (residual " + to_string(c.residual) + ")");
  }
}

DeRhamValue eval_dyadic(const DeRhamSystem& sys, const DyadicRational& x) {
  const Rational f0 = sys.g0(0) / (1 - sys.a0);
  const Rational f1 = sys.g1(1) / (1 - sys.a1);
  Integer k = x.numerator();
  std::uint64_t m = x.exponent();
  DeRhamValue out;
  Rational coef = 1;
  while (m > 0) {
    const Integer unit = pow2(m);
    // argument of the branch map after doubling, as (k', m-1)
    if (2 * k <= unit) {
      out.value += coef * sys.g0(ratio(k, unit / 2));
      coef *= sys.a0;
    } else {
      k -= unit / 2;
      out.value += coef * sys.g1(ratio(k, unit / 2));
      coef *= sys.a1;
    }
    --m;
    ++out.depth;
  }
  out.value += coef * (k == 0 ? f0 : f1);
  out.value.canonicalize();
  return out;
}

}  // namespace

DeRhamValue derham_eval(const DeRhamSystem& sys, const Rational& x, EvalMode mode, double tol) {
  if (x < 0 || x > 1) {
    throw Error(ErrorKind::invalid_point, "de Rham argument outside [0, 1]: " + to_string(x));
  }
  require_solvable(sys);

  if (auto dyadic = DyadicRational::from_rational(x)) return eval_dyadic(sys, *dyadic);
  if (mode == EvalMode::exact_dyadic) {
    throw Error(ErrorKind::invalid_point, "exact evaluation needs a dyadic argument, got " + to_string(x));
  }
  if (!(tol > 0)) throw Error(ErrorKind::invalid_parameter, "tolerance must be positive");

  const Rational m0 = abs(sys.a0);
  const Rational m1 = abs(sys.a1);
  const Rational contraction = m0 > m1 ? m0 : m1;
  const double m = to_double(contraction);
  const double f_bound = to_double(std::max(sys.g0.sup_norm(), sys.g1.sup_norm())) / (1.0 - m);
  double remainder = f_bound;
  std::size_t depth = 0;
  while (remainder > tol && m > 0) {
    remainder *= m;
    ++depth;
  }
  if (m == 0) {
    remainder = 0.0;
    depth = 1;
  }

  DeRhamValue out;
  Rational y = x;
  Rational coef = 1;
  for (std::size_t i = 0; i < depth; ++i) {
    if (2 * y < 1) {
      out.value += coef * sys.g0(2 * y);
      coef *= sys.a0;
      y *= 2;
    } else {
      y = 2 * y - 1;
      out.value += coef * sys.g1(y);
      coef *= sys.a1;
    }
  }
  out.bound = remainder;
  out.depth = depth;
  return out;
}

Report check_takagi_scaling(std::uint64_t exponent, std::uint64_t max_shift, const Rational& a) {
  if (a == 0) throw Error(ErrorKind::invalid_parameter, "a must be nonzero");
  const QParam p(1 / (2 * a));
  const Rational two_q = 1 / a;

  Report report;
  report.suite = "takagi scaling";
  const std::string range = "t = j/2^" + std::to_string(exponent) + ", 1 <= m <= " + std::to_string(max_shift);
  Check scaling{"T-scaling", "T_a(t) = (2q)^m T_a(t/2^m) - t q [m]_q", range};
  Check sym{"symmetry", "T_a(t) = T_a(1-t)", "t = j/2^" + std::to_string(exponent)};

  std::vector<Rational> shift_coeff(max_shift + 1);
  std::vector<Rational> scale(max_shift + 1);
  for (std::uint64_t m = 1; m <= max_shift; ++m) {
    shift_coeff[m] = p.q() * p.q_integer(m);
    scale[m] = pow(two_q, static_cast<long>(m));
  }

  const Integer count = pow2(exponent);
  for (Integer j = 0; j <= count; ++j) {
    const DyadicRational t(j, exponent);
    const Rational tv = t.value();
    const Rational value = takagi_dyadic_exact(t, a);
    const auto idx = static_cast<std::int64_t>(j.get_si());
    const Rational mirrored = takagi_dyadic_exact(DyadicRational(count - j, exponent), a);
    sym.record(value == mirrored, idx, [&] {
      return "t=" + to_string(tv) + ": " + to_string(value) + " vs " + to_string(mirrored);
    });
    for (std::uint64_t m = 1; m <= max_shift; ++m) {
      const Rational rhs = scale[m] * takagi_dyadic_exact(DyadicRational(j, exponent + m), a) - tv * shift_coeff[m];
      scaling.record(value == rhs, idx, [&] {
        return "t=" + to_string(tv) + ", m=" + std::to_string(m) + ": " + to_string(value) + " vs " + to_string(rhs);
      });
    }
  }
  report.checks.push_back(std::move(scaling));
  report.checks.push_back(std::move(sym));
  return report;
}

}  // namespace limcurve
