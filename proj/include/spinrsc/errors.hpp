#pragma once

#include <stdexcept>
#include <string>

namespace spinrsc {

/// Raised when an input violates a physical or mathematical precondition
/// (chain too short, unnormalized state, non-unitary transform, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a numerical routine fails to produce a result within its
/// accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spinrsc
