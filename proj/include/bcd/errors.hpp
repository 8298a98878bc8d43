#pragma once

#include <stdexcept>
#include <string>

#include "bcd/literal.hpp"

namespace bcd {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Broken caller contract or impossible internal state.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PostconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Unit propagation derived both a literal and its negation.
class ConflictDetected : public std::runtime_error {
 public:
  explicit ConflictDetected(Lit lit)
      : std::runtime_error("unit propagation conflict on variable " +
                           std::to_string(lit.var())),
        lit_(lit) {}
  Lit literal() const { return lit_; }

 private:
  Lit lit_;
};

class Timeout : public std::runtime_error {
 public:
  Timeout() : std::runtime_error("time limit exceeded") {}
};

class TooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace bcd
