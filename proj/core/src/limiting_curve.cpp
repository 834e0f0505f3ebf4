#include "limcurve/limiting_curve.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <string>

#include "limcurve/error.hpp"

namespace limcurve {

double CurveSamples::value_as_double(std::size_t j) const {
  return mode == CurveMode::exact ? to_double(exact.at(j)) : approx.at(j);
}

namespace {

std::uint64_t log2_of(std::uint64_t l) {
  if (l == 0 || (l & (l - 1)) != 0) {
    throw Error(ErrorKind::invalid_parameter, "curve length must be a power of two, got " + std::to_string(l));
  }
  std::uint64_t j = 0;
  while ((std::uint64_t{1} << j) < l) ++j;
  return j;
}

std::vector<DyadicRational> unit_grid(std::uint64_t log2_l) {
  const std::uint64_t l = std::uint64_t{1} << log2_l;
  std::vector<DyadicRational> grid;
  grid.reserve(l + 1);
  for (std::uint64_t j = 0; j <= l; ++j) grid.emplace_back(Integer(static_cast<unsigned long>(j)), log2_l);
  return grid;
}

// S(j) - (j/l) S(l) for every breakpoint.
std::vector<Rational> deviations(std::span<const Rational> sums, std::uint64_t l) {
  if (sums.size() != l + 1) {
    throw Error(ErrorKind::invalid_parameter, "expected " + std::to_string(l + 1) + " partial sums, got " +
                                                  std::to_string(sums.size()));
  }
  if (sums[0] != 0) throw Error(ErrorKind::invalid_parameter, "partial sums must start at S(0) = 0");
  const Rational slope = sums[l] / Rational(Integer(static_cast<unsigned long>(l)));
  std::vector<Rational> dev(l + 1);
  for (std::uint64_t j = 0; j <= l; ++j) dev[j] = sums[j] - Rational(Integer(static_cast<unsigned long>(j))) * slope;
  return dev;
}

void require_takagi(const QParam& p) {
  if (!p.admits_takagi()) {
    throw Error(ErrorKind::invalid_parameter,
                "limit curve -q T_a needs |q| > 1/2 (q = " + to_string(p.q()) + ")");
  }
}

}  // namespace

CurveSamples build_fluctuation_curve(std::span<const Rational> sums, std::uint64_t l,
                                     const Rational& normalizer) {
  const std::uint64_t log2_l = log2_of(l);
  if (normalizer == 0) throw Error(ErrorKind::zero_normalizer, "normalizer must be nonzero");
  std::vector<Rational> dev = deviations(sums, l);
  CurveSamples curve;
  curve.grid = unit_grid(log2_l);
  curve.mode = CurveMode::exact;
  curve.exact.reserve(dev.size());
  for (auto& d : dev) curve.exact.push_back(d / normalizer);
  return curve;
}

Rational canonical_normalizer(std::span<const Rational> sums, std::uint64_t l) {
  Rational best = 0;
  for (const auto& d : deviations(sums, l)) {
    const Rational m = abs(d);
    if (m > best) best = m;
  }
  if (best == 0) throw Error(ErrorKind::degenerate, "partial sums are linear; no fluctuation curve");
  return best;
}

Rational analytic_normalizer(std::uint64_t log2_l, const QParam& p) {
  if (log2_l == 0) throw Error(ErrorKind::invalid_parameter, "analytic normalizer needs l = 2^j with j >= 1");
  return pow(2 * p.q(), static_cast<long>(log2_l) - 1);
}

CurveSamples zero_state_curve(std::uint64_t log2_l, const QParam& p, Normalization norm) {
  const std::uint64_t l = std::uint64_t{1} << log2_l;
  const auto sums = orbit_partial_sums(OdometerState::zero(log2_l + 1), p, l);
  const Rational R = norm == Normalization::analytic ? analytic_normalizer(log2_l, p)
                                                     : canonical_normalizer(sums, l);
  return build_fluctuation_curve(sums, l, R);
}

CurveSamples target_curve(std::uint64_t log2_l, const QParam& p) {
  require_takagi(p);
  CurveSamples curve;
  curve.grid = unit_grid(log2_l);
  curve.mode = CurveMode::exact;
  curve.exact.reserve(curve.grid.size());
  for (const auto& t : curve.grid) curve.exact.push_back(-p.q() * takagi_dyadic_exact(t, p.a()));
  return curve;
}

namespace {

void require_same_grid(const CurveSamples& c1, const CurveSamples& c2) {
  if (c1.grid != c2.grid) throw Error(ErrorKind::grid_mismatch, "curves are sampled on different grids");
}

}  // namespace

Rational sup_distance_exact(const CurveSamples& c1, const CurveSamples& c2) {
  require_same_grid(c1, c2);
  if (c1.mode != CurveMode::exact || c2.mode != CurveMode::exact) {
    throw Error(ErrorKind::invalid_parameter, "exact distance needs exact samples");
  }
  Rational best = 0;
  for (std::size_t j = 0; j < c1.size(); ++j) {
    const Rational d = abs(c1.exact[j] - c2.exact[j]);
    if (d > best) best = d;
  }
  return best;
}

double sup_distance(const CurveSamples& c1, const CurveSamples& c2) {
  require_same_grid(c1, c2);
  if (c1.mode == CurveMode::exact && c2.mode == CurveMode::exact) return to_double(sup_distance_exact(c1, c2));
  double best = 0.0;
  for (std::size_t j = 0; j < c1.size(); ++j) {
    const double d = std::abs(c1.value_as_double(j) - c2.value_as_double(j));
    if (d > best) best = d;
  }
  return best;
}

Report verify_zero_state_identity(std::uint64_t log2_l, const QParam& p) {
  require_takagi(p);
  const CurveSamples curve = zero_state_curve(log2_l, p, Normalization::analytic);
  const CurveSamples target = target_curve(log2_l, p);
  Report report;
  report.suite = "zero-state curve";
  Check curve_check{"zero-state-curve", "phi_l(t_j) = -q T_a(t_j), analytic normalizer (2q)^{j-1}",
            "l = 2^" + std::to_string(log2_l) + ", q = " + to_string(p.q())};
  for (std::size_t j = 0; j < curve.size(); ++j) {
    curve_check.record(curve.exact[j] == target.exact[j], static_cast<std::int64_t>(j), [&] {
      return "t=" + to_string(curve.grid[j].value()) + ": " + to_string(curve.exact[j]) + " vs " +
             to_string(target.exact[j]);
    });
  }
  report.checks.push_back(std::move(curve_check));
  return report;
}

bool LimitingBridge::decreasing() const {
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i].sup_distance_exact < levels[i - 1].sup_distance_exact)) return false;
  }
  return true;
}

namespace {

std::string describe(const OdometerState& s) {
  if (s.seed()) return "seed:" + std::to_string(*s.seed());
  for (auto b : s.bits()) {
    if (b) return "explicit";
  }
  return "zero";
}

BridgeLevel run_level(const OdometerState& state, const QParam& p, std::size_t run, std::size_t guard,
                      std::uint64_t grid_bits) {
  const std::size_t limit = state.length() > guard ? state.length() - guard : 0;
  std::optional<StabilizingLevel> chosen;
  for (auto& level : find_stabilizing_levels(state, run, state.length())) {
    if (level.level <= limit) {
      chosen = std::move(level);
      break;
    }
  }
  if (!chosen) {
    throw Error(ErrorKind::not_found, "no run of " + std::to_string(run) + " zeros ends within the first " +
                                          std::to_string(limit) + " bits (register " +
                                          std::to_string(state.length()) + ", guard " + std::to_string(guard) + ")");
  }

  BridgeLevel out;
  out.run = run;
  out.level = *chosen;
  out.grid_bits = std::min<std::uint64_t>(grid_bits, chosen->level);
  out.normalizer = analytic_normalizer(chosen->level, p);

  const LevelOrbit orbit(state, p, chosen->level);
  const auto sums = orbit.grid_sums(out.grid_bits);
  out.curve = build_fluctuation_curve(sums, std::uint64_t{1} << out.grid_bits, out.normalizer);
  const CurveSamples target = target_curve(out.grid_bits, p);
  out.sup_distance_exact = sup_distance_exact(out.curve, target);
  out.sup_distance = to_double(out.sup_distance_exact);
  return out;
}

}  // namespace

LimitingBridge bridge_experiment(const OdometerState& state, const QParam& p, const BridgeConfig& config) {
  if (!p.admits_bridge()) {
    throw Error(ErrorKind::invalid_parameter,
                "limiting bridge needs 1/2 < |q| < 1 (q = " + to_string(p.q()) + ")");
  }
  if (config.runs.empty()) throw Error(ErrorKind::invalid_parameter, "at least one run length is required");
  if (state.length() != config.register_length) {
    throw Error(ErrorKind::invalid_parameter, "state length differs from the configured register length");
  }

  LimitingBridge bridge;
  bridge.state = describe(state);
  bridge.seed = state.seed();
  bridge.q = p.q();
  bridge.register_length = state.length();
  bridge.guard = guard_bits(p, config.tail_tolerance);

  if (config.parallel) {
    std::vector<std::future<BridgeLevel>> pending;
    for (std::size_t run : config.runs) {
      pending.push_back(std::async(std::launch::async, run_level, std::cref(state), std::cref(p), run,
                                   bridge.guard, config.grid_bits));
    }
    for (auto& f : pending) bridge.levels.push_back(f.get());
  } else {
    for (std::size_t run : config.runs) {
      bridge.levels.push_back(run_level(state, p, run, bridge.guard, config.grid_bits));
    }
  }
  return bridge;
}

std::string format_distance(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

const BridgeFixture* find_bridge_fixture(std::uint64_t seed, const Rational& q, std::size_t register_length,
                                         std::uint64_t grid_bits, std::span<const std::size_t> runs) {
  for (const auto& f : bridge_fixtures()) {
    if (f.seed == seed && parse_rational(f.q) == q && f.register_length == register_length &&
        f.grid_bits == grid_bits && std::equal(f.runs.begin(), f.runs.end(), runs.begin(), runs.end())) {
      return &f;
    }
  }
  return nullptr;
}

Report check_bridge_fixtures() {
  Report report;
  report.suite = "bridge";
  Check present{"bridge-fixtures", "frozen fixtures are available", "all fixtures"};
  Check decay{"bridge-decay", "sup distances strictly decrease in r", "fixture seeds"};
  Check frozen{"bridge-frozen", "sup distances equal the frozen values byte-exactly", "fixture seeds"};
  Check zero{"bridge-zero", "zero state has distance 0 at every level", "r = 4, 8, 12"};

  const auto& fixtures = bridge_fixtures();
  present.record(!fixtures.empty(), 0, [] { return std::string("no fixtures"); });
  for (const auto& f : fixtures) {
    BridgeConfig cfg;
    cfg.runs = f.runs;
    cfg.register_length = f.register_length;
    cfg.grid_bits = f.grid_bits;
    const QParam p(parse_rational(f.q));
    const auto bridge = bridge_experiment(OdometerState::seeded(f.seed, f.register_length), p, cfg);
    std::string got;
    std::vector<std::string> distances;
    for (const auto& level : bridge.levels) {
      distances.push_back(format_distance(level.sup_distance));
      got += (got.empty() ? "" : ", ") + distances.back();
    }
    const auto idx = static_cast<std::int64_t>(f.seed);
    decay.record(bridge.decreasing(), idx, [&] { return "seed " + std::to_string(f.seed) + ": " + got; });
    frozen.record(distances == f.distances, idx, [&] { return "seed " + std::to_string(f.seed) + ": " + got; });
  }

  BridgeConfig cfg;
  const auto bridge = bridge_experiment(OdometerState::zero(cfg.register_length), QParam(Rational(3, 4)), cfg);
  for (const auto& level : bridge.levels) {
    zero.record(level.sup_distance_exact == 0, static_cast<std::int64_t>(level.run), [&] {
      return "r=" + std::to_string(level.run) + ": " + format_distance(level.sup_distance);
    });
  }
  for (Check* c : {&present, &decay, &frozen, &zero}) report.checks.push_back(std::move(*c));
  return report;
}

}  // namespace limcurve
