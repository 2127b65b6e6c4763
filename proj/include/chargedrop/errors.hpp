#ifndef CHARGEDROP_ERRORS_HPP
#define CHARGEDROP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chargedrop {

// Input outside the domain of a formula or a model's validity range.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A numerical procedure failed (singular system, no convergence, ...).
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// An object was used before it reached the required state.
class StateError : public std::logic_error {
public:
  explicit StateError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace chargedrop

#endif  // CHARGEDROP_ERRORS_HPP
