#pragma once

#include <stdexcept>
#include <string>

namespace schur {

enum class ErrorKind {
  invalid_input,
  unsupported_size,
  solver_nonconvergence,
  extraction_failure,
  parse_error,
  io_error,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::unsupported_size: return "unsupported-size";
    case ErrorKind::solver_nonconvergence: return "solver-nonconvergence";
    case ErrorKind::extraction_failure: return "extraction-failure";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when an SDP fails to close its duality gap; carries the best
/// bracket [lower, upper] on the optimal value seen so far.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double lower, double upper)
      : Error(ErrorKind::solver_nonconvergence, what),
        lower_(lower),
        upper_(upper) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace schur
