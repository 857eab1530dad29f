#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sbpcg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class MeshError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A boundary treatment that cannot yield an energy estimate.
class StabilityError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, long last_good_step)
      : Error(what), last_good_step_(last_good_step) {}
  long last_good_step() const { return last_good_step_; }

 private:
  long last_good_step_;
};

}  // namespace sbpcg
