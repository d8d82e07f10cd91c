#pragma once

#include <stdexcept>
#include <string>

namespace vtg {

// Error taxonomy mirrors the CLI exit codes: input errors (bad arguments,
// malformed files, violated preconditions, exhausted budgets) exit 1,
// certification failures exit 2.
enum class ErrorKind { input, budget, certification };

class VtgError : public std::runtime_error {
 public:
  VtgError(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& msg) {
  throw VtgError(ErrorKind::input, msg);
}

[[noreturn]] inline void fail_budget(const std::string& msg) {
  throw VtgError(ErrorKind::budget, msg);
}

[[noreturn]] inline void fail_certification(const std::string& msg) {
  throw VtgError(ErrorKind::certification, msg);
}

}  // namespace vtg
