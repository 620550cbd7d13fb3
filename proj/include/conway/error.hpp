#pragma once

#include <stdexcept>
#include <string>

namespace conway {

/// Input text that does not match one of the value, continued-fraction,
/// form or path grammars.
class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

/// A well-formed request outside an operation's domain (wrong form class,
/// negative radicand, rational input to a periodic-only routine, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class DivisionByZero : public DomainError {
 public:
  explicit DivisionByZero(const std::string& what) : DomainError(what) {}
};

}  // namespace conway
