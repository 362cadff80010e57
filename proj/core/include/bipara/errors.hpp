#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bipara {

// Root of every error raised by the library. Integration attaches the time
// and state at which a failure surfaced before rethrowing.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;

  void set_context(double t, std::string state) {
    time_ = t;
    state_ = std::move(state);
  }
  std::optional<double> time() const { return time_; }
  const std::string& state() const { return state_; }

 private:
  std::optional<double> time_;
  std::string state_;
};

// Division by a para-complex value with a vanishing idempotent component.
class ZeroDivisor : public Error {
 public:
  using Error::Error;
};

// ln of a para-complex value with a non-positive idempotent component.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Structure operator applied to the wrong kind of frame element.
class KindMismatch : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t column, std::vector<std::string> expected,
              const std::string& found);

  /// 1-based column of the offending character.
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t column_;
  std::vector<std::string> expected_;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

// The velocity system of the Euler-Lagrange equations cannot be solved.
class DegenerateLagrangian : public Error {
 public:
  using Error::Error;
};

// One of the Hamilton denominators D+ / D- has a zero idempotent component.
class SingularDenominator : public Error {
 public:
  SingularDenominator(std::string which, const std::string& detail)
      : Error("singular denominator " + which + ": " + detail),
        which_(std::move(which)) {}

  /// "D+" or "D-".
  const std::string& which() const { return which_; }

 private:
  std::string which_;
};

class StepFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace bipara
