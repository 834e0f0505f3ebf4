#include "limcurve/report.hpp"

#include "limcurve/error.hpp"

namespace limcurve {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::not_found: return "not-found";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::zero_normalizer: return "zero-normalizer";
    case ErrorKind::grid_mismatch: return "grid-mismatch";
    case ErrorKind::inconsistent_system: return "inconsistent-system";
    case ErrorKind::invalid_point: return "invalid-point";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

void Check::record(bool ok, std::int64_t index, const std::function<std::string()>& witness) {
  ++checked;
  if (!ok && passed) {
    passed = false;
    first_failure = index;
    counterexample = witness();
  }
}

bool Report::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const Check* Report::find(std::string_view identity) const {
  for (const auto& c : checks) {
    if (c.identity == identity) return &c;
  }
  return nullptr;
}

void Report::append(Report other) {
  for (auto& c : other.checks) checks.push_back(std::move(c));
}

}  // namespace limcurve
