#include "limcurve/trollope_delange.hpp"

#include <cmath>
#include <string>

#include "limcurve/error.hpp"

namespace limcurve {

namespace {

void require_takagi_regime(const QParam& p, const char* what) {
  if (!p.admits_takagi()) {
    throw Error(ErrorKind::invalid_parameter,
                std::string(what) + " requires |q| > 1/2 (q = " + to_string(p.q()) + ")");
  }
}

Integer to_integer(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

}  // namespace

ScaleDecomposition ScaleDecomposition::of(const Integer& n, const QParam& p) {
  if (n < 1) throw Error(ErrorKind::invalid_parameter, "scale decomposition needs n >= 1");
  ScaleDecomposition d;
  d.n = n;
  d.k = bit_length(n) - 1;
  d.p = pow2(d.k);
  d.r = pow(p.q(), static_cast<long>(d.k));
  d.x = ratio(n - d.p, d.p);
  return d;
}

DyadicRational ScaleDecomposition::x_dyadic() const { return DyadicRational(n - p, k); }

Rational g_profile(const Integer& n, const QParam& p) {
  require_takagi_regime(p, "G_q");
  const auto d = ScaleDecomposition::of(n, p);
  const Rational sn = partial_sum_fast(n, p);
  const Rational sp = partial_sum_pow2(d.k, p);
  return (sn - d.two_pow_u() * sp) / (Rational(d.p) * d.r);
}

Rational f_closed(const DyadicRational& x, const QParam& p) {
  require_takagi_regime(p, "F_q");
  return p.q() * x.value() - takagi_dyadic_exact(x, p.a()) / 2;
}

Rational f_hat_bracket(const Integer& n, const QParam& p) {
  require_takagi_regime(p, "F_hat_q");
  const auto d = ScaleDecomposition::of(n, p);
  const Rational t = takagi_dyadic_exact(DyadicRational(n, d.k + 1), p.a());
  return p.q_integer(d.k + 1) - d.r * ratio(2 * d.p, n) * t;
}

namespace {

double takagi_double(double x, double a, double tol) {
  const double m = std::fabs(a);
  double y = x - std::floor(x);
  double coef = 1.0;
  double sum = 0.0;
  double tail = 1.0 / (2.0 * (1.0 - m));
  while (tail > tol && y != 0.0) {
    sum += coef * std::fmin(y, 1.0 - y);
    y *= 2.0;
    if (y >= 1.0) y -= 1.0;
    coef *= a;
    tail *= m;
  }
  return sum;
}

}  // namespace

double f_hat_sample(double u, const QParam& p, double tol) {
  if (!(p.q() > Rational(1, 2))) {
    throw Error(ErrorKind::invalid_parameter, "F_hat_q sampling needs q > 1/2 (q^u must be real)");
  }
  if (u < 0.0 || u > 1.0) throw Error(ErrorKind::invalid_point, "F_hat_q is sampled on [0, 1]");
  const double q = to_double(p.q());
  const double a = to_double(p.a());
  const double head = p.is_one() ? 1.0 - u : (1.0 - std::pow(q, 1.0 - u)) / (1.0 - q);
  return head - std::pow(q, -u) * std::pow(2.0, 1.0 - u) * takagi_double(std::pow(2.0, u - 1.0), a, tol);
}

TrollopeDelangeForms td_generalized_forms(const Integer& n, const QParam& p) {
  require_takagi_regime(p, "Trollope-Delange formula");
  const auto d = ScaleDecomposition::of(n, p);
  const Rational half_q = p.q() / 2;
  TrollopeDelangeForms forms;
  forms.from_periodic = half_q * f_hat_bracket(n, p);
  forms.from_profile = d.r * f_closed(d.x_dyadic(), p) / (d.x + 1) + half_q * p.q_integer(d.k);
  return forms;
}

Rational td_generalized(const Integer& n, const QParam& p) {
  if (p.is_one()) {
    throw Error(ErrorKind::invalid_parameter, "generalized formula needs q != 1; use td_classical");
  }
  const auto forms = td_generalized_forms(n, p);
  if (forms.from_periodic != forms.from_profile) {
    throw Error(ErrorKind::inconsistent_system,
                "reduced forms disagree at n = " + n.get_str() + ": " + to_string(forms.from_periodic) +
                    " vs " + to_string(forms.from_profile));
  }
  return forms.from_periodic;
}

Rational td_classical(const Integer& n) {
  if (n < 1) throw Error(ErrorKind::invalid_parameter, "classical formula needs n >= 1");
  const std::uint64_t k = bit_length(n) - 1;
  const Integer p = pow2(k);
  const Rational t = takagi_dyadic_exact(DyadicRational(n, k + 1), Rational(1, 2));
  return ratio(to_integer(k + 1), 2) - ratio(p, n) * t;
}

Report check_g_identities(std::uint64_t n_max, const QParam& p) {
  require_takagi_regime(p, "G_q identities");
  if (n_max < 4) throw Error(ErrorKind::invalid_parameter, "n_max must be at least 4");
  const Rational& q = p.q();
  const Rational& a = p.a();

  PartialSumOracle oracle(p, 2 * n_max);
  const std::vector<Rational> S = oracle.table(2 * n_max);

  Report report;
  report.suite = "gprofile";
  const std::string range = "1 <= n <= " + std::to_string(n_max);
  Check g_oracle{"G-oracle", "G_q(n) from fast sums = G_q(n) from brute-force sums", range};
  Check g_double{"G-double", "G(2n) = G(n)", range};
  Check g_shift_p{"G-shift-p", "G(n+p_n) = G(n)/(2q) + ((p_n-n)/(4p_n)) (3-2q)", range};
  Check g_shift_2p{"G-shift-2p", "G(n+2p_n) = G(n)/(2q) + (n/(4p_n)) (2q-1)", range};
  Check x_shift_p{"x-shift-p", "x(n+p_n) = x(n)/2", range};
  Check x_shift_2p{"x-shift-2p", "x(n+2p_n) = (x(n)+1)/2", range};
  Check g_is_f{"G-equals-F", "F_q(x_n) = G_q(n)", range};
  Check f_left{"F-left", "F(x/2) = a F(x) + (2q-3) x/4 at x = x_n", range};
  Check f_right{"F-right", "F((x+1)/2) = a F(x) + (2q-1)(x+1)/4 at x = x_n", range};

  for (std::uint64_t nn = 1; nn <= n_max; ++nn) {
    const Integer n = to_integer(nn);
    const auto d = ScaleDecomposition::of(n, p);
    const auto idx = static_cast<std::int64_t>(nn);
    const std::uint64_t pn = d.p.get_ui();
    const Rational G = g_profile(n, p);
    const auto label = [&](const Rational& lhs, const Rational& rhs) {
      return "n=" + std::to_string(nn) + ": " + to_string(lhs) + " vs " + to_string(rhs);
    };

    const Rational g_brute = (S[nn] - d.two_pow_u() * S[pn]) / (Rational(d.p) * d.r);
    g_oracle.record(G == g_brute, idx, [&] { return label(G, g_brute); });

    const Rational g2 = g_profile(2 * n, p);
    g_double.record(g2 == G, idx, [&] { return label(g2, G); });

    const Rational g_shift = g_profile(n + d.p, p);
    const Rational rhs19 = G / (2 * q) + ratio(d.p - n, 4 * d.p) * (3 - 2 * q);
    g_shift_p.record(g_shift == rhs19, idx, [&] { return label(g_shift, rhs19); });

    const Rational g_shift2 = g_profile(n + 2 * d.p, p);
    const Rational rhs20 = G / (2 * q) + ratio(n, 4 * d.p) * (2 * q - 1);
    g_shift_2p.record(g_shift2 == rhs20, idx, [&] { return label(g_shift2, rhs20); });

    const Rational x1 = ScaleDecomposition::of(n + d.p, p).x;
    x_shift_p.record(x1 == d.x / 2, idx, [&] { return label(x1, d.x / 2); });
    const Rational x2 = ScaleDecomposition::of(n + 2 * d.p, p).x;
    x_shift_2p.record(x2 == (d.x + 1) / 2, idx, [&] { return label(x2, (d.x + 1) / 2); });

    const DyadicRational xd = d.x_dyadic();
    const Rational F = f_closed(xd, p);
    g_is_f.record(F == G, idx, [&] { return label(F, G); });

    const Rational f_half = f_closed(DyadicRational(xd.numerator(), xd.exponent() + 1), p);
    const Rational rhs23a = a * F + (2 * q - 3) * d.x / 4;
    f_left.record(f_half == rhs23a, idx, [&] { return label(f_half, rhs23a); });

    const Rational f_upper =
        f_closed(DyadicRational(xd.numerator() + pow2(xd.exponent()), xd.exponent() + 1), p);
    const Rational rhs23b = a * F + (2 * q - 1) * (d.x + 1) / 4;
    f_right.record(f_upper == rhs23b, idx, [&] { return label(f_upper, rhs23b); });
  }

  for (Check* c : {&g_oracle, &g_double, &g_shift_p, &g_shift_2p, &x_shift_p, &x_shift_2p, &g_is_f, &f_left, &f_right}) {
    report.checks.push_back(std::move(*c));
  }
  return report;
}

Report check_trollope_delange(std::uint64_t n_max, const QParam& p) {
  require_takagi_regime(p, "Trollope-Delange check");
  PartialSumOracle oracle(p, n_max);
  PartialSumOracle popcount(QParam(1), n_max);

  Report report;
  report.suite = "trollope-delange";
  const std::string range = "1 <= n <= " + std::to_string(n_max);
  Check forms_agree{"td-forms-agree", "both reduced forms of S_q(n)/n agree", range};
  Check generalized{"td-periodic", "n * (q/2) bracket(n) = S_q(n)", range};
  Check profile{"td-profile", "n * (q^k F_q(x_n)/(x_n+1) + (q/2)[k]_q) = S_q(n)", range};
  Check classical{"td-classical", "n * td_classical(n) = sum of popcounts below n", range};

  oracle.advance_to(0);
  for (std::uint64_t nn = 1; nn <= n_max; ++nn) {
    const Integer n = to_integer(nn);
    const auto idx = static_cast<std::int64_t>(nn);
    const Rational S = oracle.advance_to(nn);
    const Rational S1 = popcount.advance_to(nn);
    const auto forms = td_generalized_forms(n, p);
    const auto label = [&](const Rational& lhs, const Rational& rhs) {
      return "n=" + std::to_string(nn) + ": " + to_string(lhs) + " vs " + to_string(rhs);
    };
    forms_agree.record(forms.from_periodic == forms.from_profile, idx,
                       [&] { return label(forms.from_periodic, forms.from_profile); });
    const Rational g = Rational(n) * forms.from_periodic;
    generalized.record(g == S, idx, [&] { return label(g, S); });
    const Rational pr = Rational(n) * forms.from_profile;
    profile.record(pr == S, idx, [&] { return label(pr, S); });
    const Rational c = Rational(n) * td_classical(n);
    classical.record(c == S1, idx, [&] { return label(c, S1); });
  }
  for (Check* c : {&forms_agree, &generalized, &profile, &classical}) report.checks.push_back(std::move(*c));
  return report;
}

Report check_derham_systems(std::uint64_t max_exponent, const QParam& p) {
  require_takagi_regime(p, "de Rham check");
  if (max_exponent > 20) throw Error(ErrorKind::invalid_parameter, "max_exponent must be at most 20");
  const DeRhamSystem takagi = DeRhamSystem::takagi(p.a());
  const DeRhamSystem profile = DeRhamSystem::fluctuation_profile(p.q());

  Report report;
  report.suite = "derham";
  const std::string range = "x = j/2^e, e <= " + std::to_string(max_exponent);
  Check match_t{"T-matching", "matching condition of the T_a system", "a = " + to_string(p.a())};
  Check match_f{"F-matching", "matching condition of the F_q system", "q = " + to_string(p.q())};
  Check reject{"matching-reject", "perturbed system fails the matching condition", "g0 slope + 1/3"};
  Check t_system{"T-system", "solution of the T_a system = T_a", range};
  Check f_system{"F-system", "solution of the F_q system = q x - T_a(x)/2", range};

  const Consistency ct = derham_consistency(takagi);
  match_t.record(ct.consistent, 0, [&] { return "residual " + to_string(ct.residual); });
  const Consistency cf = derham_consistency(profile);
  match_f.record(cf.consistent, 0, [&] { return "residual " + to_string(cf.residual); });
  DeRhamSystem bad = takagi;
  bad.g0.slope += Rational(1, 3);
  const Consistency cb = derham_consistency(bad);
  reject.record(!cb.consistent && cb.residual != 0, 0, [] { return std::string("accepted"); });

  const Integer count = pow2(max_exponent);
  for (Integer j = 0; j <= count; ++j) {
    const DyadicRational x(j, max_exponent);
    const Rational xv = x.value();
    const auto idx = static_cast<std::int64_t>(j.get_si());
    const Rational t_sys = derham_eval(takagi, xv, EvalMode::exact_dyadic).value;
    const Rational t_ref = takagi_dyadic_exact(x, p.a());
    t_system.record(t_sys == t_ref, idx, [&] { return "x=" + to_string(xv) + ": " + to_string(t_sys) + " vs " + to_string(t_ref); });
    const Rational f_sys = derham_eval(profile, xv, EvalMode::exact_dyadic).value;
    const Rational f_ref = f_closed(x, p);
    f_system.record(f_sys == f_ref, idx, [&] { return "x=" + to_string(xv) + ": " + to_string(f_sys) + " vs " + to_string(f_ref); });
  }
  for (Check* c : {&match_t, &match_f, &reject, &t_system, &f_system}) report.checks.push_back(std::move(*c));
  return report;
}

Report check_summatory_scaling(std::uint64_t max_log2, const QParam& p) {
  if (max_log2 < 1 || max_log2 > 24) {
    throw Error(ErrorKind::invalid_parameter, "summatory scaling check needs 1 <= max_log2 <= 24");
  }
  PartialSumOracle oracle(p, std::uint64_t{1} << max_log2);
  const std::vector<Rational> S = oracle.table(std::uint64_t{1} << max_log2);
  const Rational two_q = 2 * p.q();

  Report report;
  report.suite = "summatory scaling";
  Check scaling{"S-scaling", "S(l) = (2q)^m S(l/2^m) + 2^{m-1} l_m q [m]_q",
             "l = 2^j, 1 <= m <= j <= " + std::to_string(max_log2)};
  for (std::uint64_t j = 1; j <= max_log2; ++j) {
    const std::uint64_t l = std::uint64_t{1} << j;
    for (std::uint64_t m = 1; m <= j; ++m) {
      const std::uint64_t lm = l >> m;
      const Rational rhs = pow(two_q, static_cast<long>(m)) * S[lm] +
                           Rational(pow2(m - 1) * to_integer(lm)) * p.q() * p.q_integer(m);
      scaling.record(S[l] == rhs, static_cast<std::int64_t>(j), [&] {
        return "j=" + std::to_string(j) + ", m=" + std::to_string(m) + ": " + to_string(S[l]) + " vs " +
               to_string(rhs);
      });
    }
  }
  report.checks.push_back(std::move(scaling));
  return report;
}

}  // namespace limcurve
