#pragma once

#include <stdexcept>
#include <string>

namespace anisoq {

// Precondition on an argument was not met (non-Hermitian input, non-unit
// direction, non-unitary gate, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computed quantity broke an identity that must hold for valid inputs.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Bad option combination or unknown name at an API/CLI boundary.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed state/directions/counts file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Counts data missing settings or holding empty settings.
class IncompleteDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace anisoq
