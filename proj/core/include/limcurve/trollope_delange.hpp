#pragma once

#include <cstdint>

#include "limcurve/digitsum.hpp"
#include "limcurve/rational.hpp"
#include "limcurve/report.hpp"
#include "limcurve/takagi.hpp"

namespace limcurve {

// n = p_n (1 + x_n) with p_n = 2^{k_n} <= n < 2 p_n.
struct ScaleDecomposition {
  Integer n;
  std::uint64_t k = 0;  // floor(log2 n)
  Integer p;            // 2^k
  Rational r;           // q^k
  Rational x;           // (n - p)/p in [0, 1)

  static ScaleDecomposition of(const Integer& n, const QParam& p);

  // 2^{u_n} = n / p_n, the exact stand-in for the fractional part of log2 n.
  Rational two_pow_u() const { return ratio(n, p); }
  DyadicRational x_dyadic() const;
};

/// G_q(n) = (S(n) - (n/p_n) S(p_n)) / (p_n r_n). Requires |q| > 1/2.
Rational g_profile(const Integer& n, const QParam& p);

/// F_q(x) = q x - T_a(x)/2 at a dyadic point of [0, 1]. Requires |q| > 1/2.
Rational f_closed(const DyadicRational& x, const QParam& p);

/// Bracket of the generalized formula, (1 - q^{log2 n})/(1 - q) + q^{log2 n} F_hat_q(u_n).
/// The irrational powers cancel, leaving
///   (1 - q^{k+1})/(1 - q) - q^k (2p/n) T_a(n/(2p)).
Rational f_hat_bracket(const Integer& n, const QParam& p);

/// F_hat_q(u) in floating point for plotting; requires q > 1/2 (q^u must be real).
double f_hat_sample(double u, const QParam& p, double tol = 1e-12);

struct TrollopeDelangeForms {
  Rational from_periodic;  // (q/2) * f_hat_bracket
  Rational from_profile;   // q^k F_q(x_n)/(x_n + 1) + (q/2)(1 - q^k)/(1 - q)
};

TrollopeDelangeForms td_generalized_forms(const Integer& n, const QParam& p);

/// S_q(n)/n via the generalized formula. Requires |q| > 1/2 and q != 1; throws
/// Error(inconsistent_system) if the two reduced forms ever disagree.
Rational td_generalized(const Integer& n, const QParam& p);

/// S_1(n)/n = (k+1)/2 - (p/n) T_{1/2}(n/(2p)).
Rational td_classical(const Integer& n);

/// Identities for G_q: 2-invariance, the two shift identities, index bookkeeping for x_n,
/// F_q(x_n) = G_q(n) and both branch equations of the F_q system, for 1 <= n <= n_max.
Report check_g_identities(std::uint64_t n_max, const QParam& p);

/// n * td_generalized(n) and n * td_classical(n) against the brute-force oracle for
/// 1 <= n <= n_max; the two reduced forms must agree.
Report check_trollope_delange(std::uint64_t n_max, const QParam& p);

/// The Takagi and F_q de Rham systems: matching condition, exact solutions against
/// takagi_dyadic_exact and f_closed at j/2^e for e <= max_exponent, and rejection of a
/// perturbed system.
Report check_derham_systems(std::uint64_t max_exponent, const QParam& p);

/// S(l) = (2q)^m S(l/2^m) + 2^{m-1} l_m q [m]_q for l = 2^j, 1 <= m <= j <= max_log2.
Report check_summatory_scaling(std::uint64_t max_log2, const QParam& p);

}  // namespace limcurve
