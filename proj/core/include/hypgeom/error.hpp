#pragma once

#include <stdexcept>
#include <string>

namespace hypgeom {

/// Input violates a type invariant (off the hyperboloid, non-orthonormal frame, ...).
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input lies outside the domain of a formula (arcosh of x < 1, lambda out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace hypgeom
