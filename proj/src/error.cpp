#include "error.hpp"

namespace ciscat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidField: return "invalid_field";
    case ErrorKind::InvalidGrid: return "invalid_grid";
    case ErrorKind::SingularBasis: return "singular_basis";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::ContractViolation: return "contract_violation";
    case ErrorKind::Config: return "config";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Quadrature: return "quadrature";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::DegenerateCI: return "degenerate_ci";
    case ErrorKind::NodalCrossing: return "nodal_crossing";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::IllConditioned: return "ill_conditioned";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace ciscat
