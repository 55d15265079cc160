#pragma once

#include <stdexcept>
#include <string>

namespace brex {

/// Argument outside the domain of a fidelity, generator or special function
/// (e.g. KL with z + b <= 0, Lambert W below -1/e).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative routine (bisection, Newton) failed to bracket or converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fidelity / generator pairing for which no exactness threshold exists.
class UnsupportedPairing : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Support enumeration would exceed the combinatorial guard.
class CombinatorialLimit : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed problem / report document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace brex
