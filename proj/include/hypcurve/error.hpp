#pragma once

#include <stdexcept>
#include <string>

namespace hypcurve {

/// Broad failure classes; the CLI maps them onto exit codes.
enum class ErrorKind {
  kInput,      // malformed or inadmissible input (exit 2)
  kNumerical,  // precision exhausted, genericity failure (exit 3)
  kInternal,   // broken invariant inside a construction (exit 3)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct InputError : Error {
  explicit InputError(const std::string& what) : Error(ErrorKind::kInput, what) {}
};

struct ParseError : InputError {
  using InputError::InputError;
};

struct CommonComponentError : InputError {
  using InputError::InputError;
};

struct NotRealContactError : InputError {
  using InputError::InputError;
};

struct SingularPointError : InputError {
  using InputError::InputError;
};

struct InconsistentInputError : InputError {
  using InputError::InputError;
};

struct NumericalError : Error {
  explicit NumericalError(const std::string& what) : Error(ErrorKind::kNumerical, what) {}
};

/// Raised when the working precision cannot separate nearby quantities; retry at higher precision.
struct PrecisionExhausted : NumericalError {
  using NumericalError::NumericalError;
};

struct GenericityFailure : NumericalError {
  using NumericalError::NumericalError;
};

struct DegenerateRepresentation : NumericalError {
  using NumericalError::NumericalError;
};

struct InternalConsistencyError : Error {
  explicit InternalConsistencyError(const std::string& what) : Error(ErrorKind::kInternal, what) {}
};

}  // namespace hypcurve
