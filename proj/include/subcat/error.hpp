#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subcat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different rings (ℤ vs. a monomial context, or two
/// monomial contexts with different variables).
class BackendMismatch : public Error {
 public:
  using Error::Error;
};

/// A brute-force enumeration would exceed its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position, std::string expected)
      : Error(message + " at position " + std::to_string(position) +
              " (expected " + expected + ")"),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace subcat
