#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "limcurve/limiting_curve.hpp"

namespace limcurve::cli {

// A rational rendered as "p/q", or as a fixed-point decimal when digits >= 0.
std::string format_value(const Rational& x, int digits);

struct Column {
  std::string name;
  std::vector<std::string> cells;
};

// Header row plus one row per index; LF line endings.
void write_csv(std::ostream& out, const std::vector<Column>& columns);

struct Series {
  std::string name;
  std::string colour;
  std::vector<double> y;
  bool dashed = false;
};

// Polylines over x in [0, 1] on an 800x400 canvas, with both axes drawn.
void write_svg(std::ostream& out, const std::vector<double>& x, const std::vector<Series>& series,
               const std::string& title);

}  // namespace limcurve::cli
