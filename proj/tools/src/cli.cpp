#include "limcurve_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "limcurve/digitsum.hpp"
#include "limcurve/error.hpp"
#include "limcurve/limiting_curve.hpp"
#include "limcurve/takagi.hpp"
#include "limcurve/trollope_delange.hpp"
#include "render.hpp"

namespace limcurve::cli {

namespace {

using json = nlohmann::ordered_json;

// Malformed or out-of-regime input; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to a file, or to `fallback` for "" and "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw UsageError("cannot open " + path + " for writing");
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

QParam q_param(const std::string& text) {
  const Rational q = parse_rational(text);
  if (q == 0) throw UsageError("q must be nonzero");
  return QParam(q);
}

Integer require_n(const std::string& text, const char* what) {
  if (text.empty()) throw UsageError(std::string(what) + " needs --n");
  return parse_integer(text);
}

std::uint64_t log2_exact(std::uint64_t l, const char* flag) {
  if (l < 2 || (l & (l - 1)) != 0) throw UsageError(std::string(flag) + " must be a power of two >= 2");
  std::uint64_t j = 0;
  while ((std::uint64_t{1} << j) < l) ++j;
  return j;
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string kind;
  std::string q;
  std::string a;
  std::string n;
  std::string x;
  bool classical = false;
  int digits = -1;
};

Rational takagi_parameter(const EvalArgs& args) {
  if (!args.a.empty()) return parse_rational(args.a);
  if (!args.q.empty()) return q_param(args.q).a();
  throw UsageError("takagi needs --a or --q");
}

int cmd_eval(const EvalArgs& args, std::ostream& out) {
  const int digits = args.digits;
  const auto emit = [&](const Rational& v) {
    out << format_value(v, digits) << '\n';
    return kExitOk;
  };
  const auto need_q = [&] {
    if (args.q.empty()) throw UsageError(args.kind + " needs --q");
    return q_param(args.q);
  };

  if (args.kind == "s") return emit(weighted_digit_sum(require_n(args.n, "s"), need_q()));
  if (args.kind == "S") return emit(partial_sum_fast(require_n(args.n, "S"), need_q()));
  if (args.kind == "G") return emit(g_profile(require_n(args.n, "G"), need_q()));
  if (args.kind == "td") {
    const Integer n = require_n(args.n, "td");
    if (args.classical) return emit(td_classical(n));
    return emit(td_generalized(n, need_q()));
  }

  if (args.x.empty()) throw UsageError(args.kind + " needs --x");
  const Rational x = parse_rational(args.x);
  if (args.kind == "F") {
    const auto d = DyadicRational::from_rational(x);
    if (!d || !d->in_unit_interval()) throw UsageError("F needs a dyadic x in [0, 1]");
    return emit(f_closed(*d, need_q()));
  }

  // takagi: exact at dyadic points, certified series elsewhere
  const Rational a = takagi_parameter(args);
  const Rational frac = x - Rational(floor(x));
  if (auto d = DyadicRational::from_rational(frac)) return emit(takagi_dyadic_exact(*d, a));
  const int shown = digits < 0 ? 15 : digits;
  const SeriesValue v = takagi_series(frac, a, 0.5 * std::pow(10.0, -shown));
  out << to_decimal(v.partial, shown) << '\n';
  return kExitOk;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::string q = "3/4";
  std::uint64_t nmax = 2048;
  std::uint64_t lmax = 4096;
  std::uint64_t exponent = 10;
  bool printed = false;
  bool json = false;
};

Report build_suite(const VerifyArgs& args) {
  const QParam p = q_param(args.q);
  const bool needs_takagi = args.suite != "recurrences" && args.suite != "theorem1";
  if (needs_takagi && !p.admits_takagi()) {
    throw UsageError("suite " + args.suite + " requires |q| > 1/2 (q = " + args.q + ")");
  }
  if (args.suite == "recurrences") {
    if (args.nmax < 2) throw UsageError("--nmax must be at least 2");
    Report r = check_bit_recurrences(args.nmax, p, args.printed ? IdentityForm::printed : IdentityForm::corrected);
    const std::uint64_t j = log2_exact(args.lmax, "--lmax");
    if (j > 24) throw UsageError("--lmax must be at most 2^24");
    r.append(check_summatory_scaling(j, p));
    return r;
  }
  if (args.suite == "gprofile") {
    if (args.nmax < 4) throw UsageError("--nmax must be at least 4");
    Report r = check_g_identities(args.nmax, p);
    r.suite = "gprofile";
    r.append(check_trollope_delange(args.nmax, p));
    return r;
  }
  if (args.suite == "prop1") {
    Report r;
    r.suite = "zero-state curve";
    const std::uint64_t top = log2_exact(args.lmax, "--lmax");
    for (std::uint64_t j = 1; j <= top; ++j) r.append(verify_zero_state_identity(j, p));
    return r;
  }
  if (args.suite == "derham") {
    if (args.exponent > 20) throw UsageError("--exponent must be at most 20");
    Report r = check_derham_systems(args.exponent, p);
    r.append(check_takagi_scaling(std::min<std::uint64_t>(args.exponent, 10), 6, p.a()));
    return r;
  }
  return check_bridge_fixtures();
}

json report_json(const Report& r, const VerifyArgs& args) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json entry{{"identity", c.identity}, {"formula", c.formula}, {"range", c.range},
               {"checked", c.checked}, {"passed", c.passed}};
    entry["first_counterexample"] = c.first_failure ? json(*c.first_failure) : json(nullptr);
    entry["witness"] = c.counterexample.empty() ? json(nullptr) : json(c.counterexample);
    checks.push_back(std::move(entry));
  }
  return json{{"suite", r.suite},
              {"q", args.q},
              {"forms", args.printed ? "printed" : "corrected"},
              {"passed", r.passed()},
              {"checks", std::move(checks)}};
}

void report_text(const Report& r, const VerifyArgs& args, std::ostream& out) {
  out << "suite " << r.suite << " (q = " << args.q << ")\n";
  std::size_t failed = 0;
  for (const auto& c : r.checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.identity << "  " << c.formula << "  [" << c.range << ", "
        << c.checked << " checked]\n";
    if (!c.passed) {
      ++failed;
      out << "      first counterexample at " << *c.first_failure << ": " << c.counterexample << '\n';
    }
  }
  if (failed == 0) {
    out << "all " << r.checks.size() << " checks passed\n";
  } else {
    out << failed << " of " << r.checks.size() << " checks failed\n";
  }
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const Report r = build_suite(args);
  if (args.json) {
    out << report_json(r, args).dump(2) << '\n';
  } else {
    report_text(r, args, out);
  }
  return r.passed() ? kExitOk : kExitFailed;
}

// ---- curve ---------------------------------------------------------------

struct CurveArgs {
  std::string q;
  std::uint64_t l = 64;
  std::string norm = "analytic";
  std::string out;
  std::string svg;
  std::string profile = "none";
  int digits = -1;
  bool explore = false;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_profile(const CurveArgs& args, const QParam& p, std::uint64_t j, std::ostream& out) {
  const std::uint64_t l = std::uint64_t{1} << j;
  std::vector<double> xs;
  Series s{args.profile == "F" ? "F_q" : "F_hat_q", "#1f77b4", {}};
  Column xc{args.profile == "F" ? "x" : "u", {}};
  Column vc{args.profile == "F" ? "F" : "fhat", {}};
  for (std::uint64_t i = 0; i <= l; ++i) {
    const DyadicRational t(Integer(static_cast<unsigned long>(i)), j);
    xs.push_back(to_double(t.value()));
    if (args.profile == "F") {
      const Rational v = f_closed(t, p);
      xc.cells.push_back(format_value(t.value(), args.digits));
      vc.cells.push_back(format_value(v, args.digits));
      s.y.push_back(to_double(v));
    } else {
      const double v = f_hat_sample(xs.back(), p);
      xc.cells.push_back(format_double(xs.back()));
      vc.cells.push_back(format_double(v));
      s.y.push_back(v);
    }
  }
  Sink csv(args.out, out);
  write_csv(*csv, {xc, vc});
  if (!args.svg.empty()) {
    Sink svg(args.svg, out);
    write_svg(*svg, xs, {s}, s.name + ", q = " + to_string(p.q()));
  }
  return kExitOk;
}

int cmd_curve(const CurveArgs& args, std::ostream& out) {
  if (args.q.empty()) throw UsageError("curve needs --q");
  const QParam p = q_param(args.q);
  const std::uint64_t j = log2_exact(args.l, "--l");
  if (j > 20) throw UsageError("--l must be at most 2^20");
  if (!p.admits_takagi() && !args.explore) {
    throw UsageError("the limit curve -q T_a requires |q| > 1/2 (q = " + args.q +
                     "); use --explore to emit the unnormalized behaviour");
  }
  if (args.profile != "none") {
    if (args.profile == "F" && !p.admits_takagi()) throw UsageError("F_q requires |q| > 1/2");
    if (args.profile == "fhat" && !(p.q() > Rational(1, 2))) throw UsageError("F_hat_q sampling requires q > 1/2");
    return cmd_profile(args, p, j, out);
  }

  const Normalization norm = args.norm == "canonical" ? Normalization::canonical : Normalization::analytic;
  const CurveSamples phi = zero_state_curve(j, p, norm);
  std::optional<CurveSamples> target;
  if (p.admits_takagi()) target = target_curve(j, p);

  Column tc{"t", {}}, pc{"phi", {}}, gc{"target", {}};
  std::vector<double> xs;
  Series ps{"phi", "#1f77b4", {}}, gs{"-q T_a", "#d62728", {}, true};
  for (std::size_t i = 0; i < phi.size(); ++i) {
    tc.cells.push_back(format_value(phi.grid[i].value(), args.digits));
    pc.cells.push_back(format_value(phi.exact[i], args.digits));
    gc.cells.push_back(target ? format_value(target->exact[i], args.digits) : "");
    xs.push_back(to_double(phi.grid[i].value()));
    ps.y.push_back(to_double(phi.exact[i]));
    if (target) gs.y.push_back(to_double(target->exact[i]));
  }
  Sink csv(args.out, out);
  write_csv(*csv, {tc, pc, gc});
  if (!args.svg.empty()) {
    std::vector<Series> series{ps};
    if (target) series.push_back(gs);
    Sink svg(args.svg, out);
    write_svg(*svg, xs, series, "l = " + std::to_string(args.l) + ", q = " + to_string(p.q()) + ", " + args.norm);
  }
  return kExitOk;
}

// ---- bridge --------------------------------------------------------------

struct BridgeArgs {
  std::optional<std::uint64_t> seed;
  std::string q = "3/4";
  std::vector<std::size_t> runs{4, 8, 12};
  std::string state = "seeded";
  std::size_t length = 8192;
  std::uint64_t grid_bits = 10;
  std::string out;
};

int cmd_bridge(const BridgeArgs& args, std::ostream& out) {
  const QParam p = q_param(args.q);
  if (!p.admits_bridge()) throw UsageError("bridge requires 1/2 < |q| < 1 (q = " + args.q + ")");
  if (args.state == "seeded" && !args.seed) throw UsageError("a seeded state needs --seed");
  if (args.runs.empty()) throw UsageError("--r needs at least one run length");
  for (std::size_t r : args.runs) {
    if (r == 0) throw UsageError("run lengths must be positive");
  }

  BridgeConfig cfg;
  cfg.runs = args.runs;
  cfg.register_length = args.length;
  cfg.grid_bits = args.grid_bits;
  const OdometerState state =
      args.state == "zero" ? OdometerState::zero(args.length) : OdometerState::seeded(*args.seed, args.length);
  const LimitingBridge bridge = bridge_experiment(state, p, cfg);

  const std::string two_q = to_string(2 * p.q());
  json levels = json::array();
  std::vector<std::string> distances;
  bool all_zero = true;
  for (const auto& lv : bridge.levels) {
    const std::size_t n = lv.level.level;
    distances.push_back(format_distance(lv.sup_distance));
    all_zero = all_zero && lv.sup_distance_exact == 0;
    levels.push_back(json{{"r", lv.run},
                          {"n_j", n},
                          {"m_j", lv.level.run_start},
                          {"l_j", "2^" + std::to_string(n)},
                          {"R", "(" + two_q + ")^" + std::to_string(n - 1)},
                          {"grid_bits", lv.grid_bits},
                          {"sup_distance", lv.sup_distance},
                          {"sup_distance_text", distances.back()}});
  }

  const bool zero_state = args.state == "zero";
  bool passed = zero_state ? all_zero : bridge.decreasing();
  json fixture{{"available", false}};
  if (!zero_state) {
    if (const BridgeFixture* f = find_bridge_fixture(*args.seed, p.q(), args.length, args.grid_bits, args.runs)) {
      const bool matches = f->distances == distances;
      fixture = json{{"available", true}, {"matches", matches}, {"expected", f->distances}};
      passed = passed && matches;
    }
  }

  json doc{{"seed", args.seed ? json(*args.seed) : json(nullptr)},
           {"q", to_string(p.q())},
           {"state", bridge.state},
           {"register_length", bridge.register_length},
           {"guard", bridge.guard},
           {"grid_bits", args.grid_bits},
           {"normalizer", "analytic"},
           {"levels", std::move(levels)},
           {"assertion", zero_state ? "zero distance" : "strictly decreasing"},
           {"decreasing", bridge.decreasing()},
           {"fixture", std::move(fixture)},
           {"passed", passed}};
  Sink sink(args.out, out);
  *sink << doc.dump(2) << '\n';
  return passed ? kExitOk : kExitFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted digit sums, Takagi-Landsberg curves and odometer limiting curves", "limcurve"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "limcurve 0.1.0");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate s, S, takagi, td, G or F exactly");
  eval->add_option("kind", eval_args.kind, "s | S | takagi | td | G | F")
      ->required()
      ->check(CLI::IsMember({"s", "S", "takagi", "td", "G", "F"}));
  auto* q_opt = eval->add_option("--q", eval_args.q, "digit weight q, e.g. 3/4");
  auto* a_opt = eval->add_option("--a", eval_args.a, "Takagi parameter a");
  q_opt->excludes(a_opt);
  eval->add_option("--n", eval_args.n, "nonnegative integer argument");
  eval->add_option("--x", eval_args.x, "point in [0, 1]");
  eval->add_flag("--classical", eval_args.classical, "td: the q = 1 formula");
  eval->add_option("--digits", eval_args.digits, "print a decimal with this many digits")->check(CLI::Range(0, 1000));

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run an exact verification suite");
  verify->add_option("--suite", verify_args.suite)
      ->required()
      ->check(CLI::IsMember({"recurrences", "gprofile", "prop1", "derham", "theorem1"}));
  verify->add_option("--q", verify_args.q, "digit weight q")->capture_default_str();
  verify->add_option("--nmax", verify_args.nmax, "largest n for index identities")->capture_default_str();
  verify->add_option("--lmax", verify_args.lmax, "largest l = 2^j for curve and scaling identities")
      ->capture_default_str();
  verify->add_option("--exponent", verify_args.exponent, "dyadic exponent for the de Rham suite")
      ->capture_default_str();
  verify->add_flag("--use-printed-forms", verify_args.printed, "use the published exponents instead of the corrected ones");
  verify->add_flag("--json", verify_args.json, "machine-readable report");

  CurveArgs curve_args;
  auto* curve = app.add_subcommand("curve", "Emit the zero-state fluctuation curve as CSV/SVG");
  curve->add_option("--q", curve_args.q, "digit weight q")->required();
  curve->add_option("--l", curve_args.l, "curve length, a power of two")->capture_default_str();
  curve->add_option("--norm", curve_args.norm)->check(CLI::IsMember({"analytic", "canonical"}))->capture_default_str();
  curve->add_option("--out", curve_args.out, "CSV path (stdout if omitted)");
  curve->add_option("--svg", curve_args.svg, "SVG path");
  curve->add_option("--profile", curve_args.profile, "emit F or fhat instead of the curve")
      ->check(CLI::IsMember({"none", "F", "fhat"}));
  curve->add_option("--digits", curve_args.digits, "decimal digits instead of exact rationals")
      ->check(CLI::Range(0, 1000));
  curve->add_flag("--explore", curve_args.explore, "allow |q| <= 1/2 (no target column)");

  BridgeArgs bridge_args;
  auto* bridge = app.add_subcommand("bridge", "Limiting-curve experiment on a seeded odometer orbit");
  bridge->add_option("--seed", bridge_args.seed, "register seed");
  bridge->add_option("--q", bridge_args.q, "digit weight q, 1/2 < |q| < 1")->capture_default_str();
  bridge->add_option("--r", bridge_args.runs, "zero-run lengths, comma separated")->delimiter(',');
  bridge->add_option("--state", bridge_args.state)->check(CLI::IsMember({"seeded", "zero"}))->capture_default_str();
  bridge->add_option("--L", bridge_args.length, "register length")->capture_default_str()->check(CLI::Range(16, 1 << 20));
  bridge->add_option("--grid-bits", bridge_args.grid_bits, "curve sampled at j/2^g")
      ->capture_default_str()
      ->check(CLI::Range(1, 16));
  bridge->add_option("--out", bridge_args.out, "JSON path (stdout if omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_args, out);
    if (*verify) return cmd_verify(verify_args, out);
    if (*curve) return cmd_curve(curve_args, out);
    return cmd_bridge(bridge_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    const bool experimental = e.kind() == ErrorKind::not_found || e.kind() == ErrorKind::overflow;
    return experimental ? kExitFailed : kExitUsage;
  }
}

}  // namespace limcurve::cli
