#pragma once

#include <stdexcept>
#include <string>

namespace etale {

/// An input violates a documented precondition (bad modulus, gcd(m,n) != 1, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hensel lifting was asked to lift a root whose derivative vanishes mod p.
class LiftError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration would exceed the configured candidate budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural assumption of the counting argument failed on concrete data
/// (non-free eigenspace, wrong rank, non-integral count). Never recovered from.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace etale
