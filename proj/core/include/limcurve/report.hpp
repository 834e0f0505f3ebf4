#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace limcurve {

// Outcome of checking one identity over a range of indices.
struct Check {
  Check() = default;
  Check(std::string identity_key, std::string formula_text, std::string range_text)
      : identity(std::move(identity_key)), formula(std::move(formula_text)), range(std::move(range_text)) {}

  std::string identity;  // short key, e.g. "S-shift-2p"
  std::string formula;
  std::string range;
  std::size_t checked = 0;
  bool passed = true;
  std::optional<std::int64_t> first_failure;
  std::string counterexample;

  // Counts one instance; on the first failure keeps `index` and the witness text.
  void record(bool ok, std::int64_t index, const std::function<std::string()>& witness);
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
  const Check* find(std::string_view identity) const;
  void append(Report other);
};

}  // namespace limcurve
