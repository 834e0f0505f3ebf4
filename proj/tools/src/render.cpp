#include "render.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace limcurve::cli {

std::string format_value(const Rational& x, int digits) {
  return digits < 0 ? to_string(x) : to_decimal(x, digits);
}

void write_csv(std::ostream& out, const std::vector<Column>& columns) {
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c].name;
  out << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().cells.size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "") << (r < columns[c].cells.size() ? columns[c].cells[r] : "");
    }
    out << '\n';
  }
}

namespace {

constexpr double kWidth = 800, kHeight = 400, kMargin = 40;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_svg(std::ostream& out, const std::vector<double>& x, const std::vector<Series>& series,
               const std::string& title) {
  double lo = 0.0, hi = 0.0;
  for (const auto& s : series) {
    for (double v : s.y) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  const auto px = [](double t) { return kMargin + t * (kWidth - 2 * kMargin); };
  const auto py = [&](double v) { return kHeight - kMargin - (v - lo) / (hi - lo) * (kHeight - 2 * kMargin); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 400\" width=\"800\" height=\"400\">\n";
  out << "  <title>" << title << "</title>\n";
  out << "  <rect width=\"800\" height=\"400\" fill=\"white\"/>\n";
  // t axis at phi = 0, value axis at t = 0
  out << "  <line x1=\"" << num(px(0)) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(px(1)) << "\" y2=\""
      << num(py(0)) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "  <line x1=\"" << num(px(0)) << "\" y1=\"" << num(py(lo)) << "\" x2=\"" << num(px(0)) << "\" y2=\""
      << num(py(hi)) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (const auto& s : series) {
    out << "  <polyline fill=\"none\" stroke=\"" << s.colour << "\" stroke-width=\"1.5\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < x.size() && i < s.y.size(); ++i) {
      out << (i ? " " : "") << num(px(x[i])) << ',' << num(py(s.y[i]));
    }
    out << "\"><title>" << s.name << "</title></polyline>\n";
  }
  out << "</svg>\n";
}

}  // namespace limcurve::cli
