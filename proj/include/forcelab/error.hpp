#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace forcelab {

// Base of every error the library raises on bad input or violated
// preconditions. Programming errors inside the library use std::logic_error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A configurable size limit tripped. The message names the limit.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& budget, std::size_t limit,
                 const std::string& detail = {})
      : Error("budget '" + budget + "' exceeded (limit " +
              std::to_string(limit) + ")" +
              (detail.empty() ? std::string{} : ": " + detail)),
        budget_(budget),
        limit_(limit) {}

  const std::string& budget() const noexcept { return budget_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::string budget_;
  std::size_t limit_;
};

// A precondition of an operation does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace forcelab
