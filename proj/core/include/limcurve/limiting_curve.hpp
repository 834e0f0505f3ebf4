#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "limcurve/digitsum.hpp"
#include "limcurve/odometer.hpp"
#include "limcurve/rational.hpp"
#include "limcurve/report.hpp"
#include "limcurve/takagi.hpp"

namespace limcurve {

enum class CurveMode { exact, approx };

// Breakpoints t_j = j/l of a piecewise-linear curve on [0, 1].
struct CurveSamples {
  std::vector<DyadicRational> grid;
  std::vector<Rational> exact;   // filled in exact mode
  std::vector<double> approx;    // filled in approx mode
  CurveMode mode = CurveMode::exact;

  std::size_t size() const noexcept { return grid.size(); }
  double value_as_double(std::size_t j) const;
};

/// v_j = (S(j) - (j/l) S(l)) / R at t_j = j/l. S holds l + 1 values with S(0) = 0.
/// Throws Error(zero_normalizer) when R = 0 and Error(invalid_parameter) on shape errors.
CurveSamples build_fluctuation_curve(std::span<const Rational> sums, std::uint64_t l,
                                     const Rational& normalizer);

/// max_j |S(j) - (j/l) S(l)|. Throws Error(degenerate) if the maximum is 0.
Rational canonical_normalizer(std::span<const Rational> sums, std::uint64_t l);

/// (2q)^{j-1} for l = 2^j, j >= 1 (signed).
Rational analytic_normalizer(std::uint64_t log2_l, const QParam& p);

enum class Normalization { analytic, canonical };

/// Fluctuation curve of the orbit of the zero point over l = 2^j steps.
CurveSamples zero_state_curve(std::uint64_t log2_l, const QParam& p, Normalization norm);

/// -q T_a(j/l) for l = 2^j. Requires |q| > 1/2.
CurveSamples target_curve(std::uint64_t log2_l, const QParam& p);

/// Throws Error(grid_mismatch) unless both curves share the grid.
Rational sup_distance_exact(const CurveSamples& c1, const CurveSamples& c2);
double sup_distance(const CurveSamples& c1, const CurveSamples& c2);

/// Zero-state curve with the analytic normalizer equals -q T_a at every breakpoint.
Report verify_zero_state_identity(std::uint64_t log2_l, const QParam& p);

struct BridgeLevel {
  std::size_t run = 0;
  StabilizingLevel level;
  std::uint64_t grid_bits = 0;  // curve sampled at j / 2^grid_bits
  Rational normalizer;          // (2q)^{n_j - 1}
  CurveSamples curve;
  Rational sup_distance_exact;
  double sup_distance = 0.0;
};

struct LimitingBridge {
  std::string state;  // "zero", "seed:<n>" or "explicit"
  std::optional<std::uint64_t> seed;
  Rational q;
  std::size_t register_length = 0;
  std::size_t guard = 0;
  std::vector<BridgeLevel> levels;

  // Distances strictly decrease along the requested runs.
  bool decreasing() const;
};

struct BridgeConfig {
  std::vector<std::size_t> runs{4, 8, 12};
  std::size_t register_length = 8192;
  std::uint64_t grid_bits = 10;
  double tail_tolerance = 1e-12;
  bool parallel = true;
};

/// For each run length r finds the first stabilizing level with room for the guard
/// bits, builds the orbit curve at l = 2^{n_j} with the analytic normalizer and
/// measures its sup distance to -q T_a on the sampled grid.
/// Requires 1/2 < |q| < 1. Propagates Error(not_found) and Error(overflow).
LimitingBridge bridge_experiment(const OdometerState& state, const QParam& p,
                                   const BridgeConfig& config = {});

/// Distance rendered with 17 significant digits; used for frozen fixtures.
std::string format_distance(double d);

struct BridgeFixture {
  std::uint64_t seed;
  const char* q;
  std::size_t register_length;
  std::uint64_t grid_bits;
  std::vector<std::size_t> runs;
  std::vector<std::string> distances;
};

/// Frozen first-run distances of bridge_experiment for the reference seeds.
const std::vector<BridgeFixture>& bridge_fixtures();
const BridgeFixture* find_bridge_fixture(std::uint64_t seed, const Rational& q,
                                         std::size_t register_length, std::uint64_t grid_bits,
                                         std::span<const std::size_t> runs);

/// Re-runs every frozen fixture and checks strict decay and byte-exact distances; also
/// checks that the zero state gives distance 0 at each level.
Report check_bridge_fixtures();

}  // namespace limcurve
