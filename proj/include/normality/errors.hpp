#pragma once

#include <stdexcept>
#include <string>

namespace normality {

/// Input outside the mathematical domain of an operation (bad base, p/q not in (0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A JSON/CSV document that does not follow the expected schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace normality
