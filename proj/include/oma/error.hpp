#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oma {

// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad process index, inconsistent n, duplicate graph, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A query was made on a graph that has no unique root component.
class NotRooted : public Error {
 public:
  using Error::Error;
};

// Pattern enumeration |D|^r would exceed the configured node budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t round, long double size, std::uint64_t budget);

  std::uint64_t round() const noexcept { return round_; }
  long double size() const noexcept { return size_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t round_;
  long double size_;
  std::uint64_t budget_;
};

}  // namespace oma
