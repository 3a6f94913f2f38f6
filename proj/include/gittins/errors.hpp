#pragma once

#include <stdexcept>
#include <string>

namespace gittins {

// Bad argument values (non-finite observations, m = 0, negative variance, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Spline refinement ran out of knot budget before reaching the requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved, int stage = 0)
      : std::runtime_error(what), achieved_(achieved), stage_(stage) {}
  double achieved_tolerance() const noexcept { return achieved_; }
  // Backward-induction stage that failed, 0 when unknown.
  int stage() const noexcept { return stage_; }

 private:
  double achieved_;
  int stage_;
};

// The signed value function has no sign change inside the working domain.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Malformed table/config file; `line` is 1-based, 0 when not tied to a line.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// select/observe called out of order, or a run past the horizon.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gittins
