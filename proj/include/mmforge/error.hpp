#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a precondition or domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Seeded retries ran out while looking for a configuration that holds for
/// almost every parameter choice (entrywise-nonzero blocks, eigenvalue
/// separation). Carries every seed that was tried.
class GenericPositionError : public Error {
 public:
  GenericPositionError(const std::string& what, std::vector<std::uint64_t> trail)
      : Error(what), trail_(std::move(trail)) {}
  const std::vector<std::uint64_t>& seed_trail() const noexcept { return trail_; }

 private:
  std::vector<std::uint64_t> trail_;
};

}  // namespace mmforge
