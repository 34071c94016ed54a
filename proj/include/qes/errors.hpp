#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qes {

/// Numerical evaluation failed: division by ~0, non-finite result, branch cut.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs violate a construction-time invariant (bad zero, bad epsilon, ...).
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method did not deliver a usable answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string message, std::vector<std::string> expected = {})
      : std::runtime_error(format(offset, message)),
        offset_(offset),
        message_(std::move(message)),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& message() const noexcept { return message_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(std::size_t offset, const std::string& msg) {
    return "parse error at offset " + std::to_string(offset) + ": " + msg;
  }

  std::size_t offset_;
  std::string message_;
  std::vector<std::string> expected_;
};

}  // namespace qes
