#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bamboo {

enum class ErrorKind {
  invalid_instance,
  period_below_two,
  unroundable_period,
  certificate_violation,
  not_a_chain,
  overdense,
  job_mismatch,
  horizon_overflow,
  state_space_too_large,
  parse,
  overflow,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit code or a remediation hint.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bamboo
