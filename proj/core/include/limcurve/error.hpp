#pragma once

#include <stdexcept>
#include <string>

namespace limcurve {

enum class ErrorKind {
  invalid_parameter,
  budget_exceeded,
  overflow,
  not_found,
  degenerate,
  zero_normalizer,
  grid_mismatch,
  inconsistent_system,
  invalid_point,
  parse,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace limcurve
