#pragma once

#include <stdexcept>
#include <string>

namespace ciscat {

enum class ErrorKind {
  InvalidField,
  InvalidGrid,
  SingularBasis,
  Domain,
  ContractViolation,
  Config,
  Numerical,
  Quadrature,
  Truncation,
  DegenerateCI,
  NodalCrossing,
  Divergence,
  IllConditioned,
  Io,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the core carries a kind so the C API can map it to
// an error code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace ciscat
