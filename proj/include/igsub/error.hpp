#pragma once

#include <stdexcept>
#include <string>

namespace igsub {

/// Raised when an argument lies outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require(bool condition, const char* what) {
  if (!condition) throw DomainError(what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) throw DomainError(what);
}

}  // namespace detail
}  // namespace igsub
