#ifndef FAIRDIV_ERRORS_HPP
#define FAIRDIV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fairdiv {

// Agent or object index outside the instance.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Input violates an operation's precondition (empty object set, zero row,
// inapplicable deal, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exhaustive work would exceed the configured budget.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed text input. The message names the offending token.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fairdiv

#endif  // FAIRDIV_ERRORS_HPP
