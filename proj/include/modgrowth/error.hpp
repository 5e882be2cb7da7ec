#pragma once

#include <stdexcept>
#include <string>

namespace modgrowth {

// Fixed-width arithmetic would have wrapped.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

// An operation was called outside its precondition (non-hyperbolic input,
// point off an axis, determinant not 1, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace modgrowth
