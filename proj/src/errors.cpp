#include "schwarz/errors.hpp"

namespace schwarz {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "DomainError";
    case ErrorKind::derivative_unavailable: return "DerivativeUnavailable";
    case ErrorKind::non_integrable: return "NonIntegrable";
    case ErrorKind::out_of_range: return "OutOfRange";
    case ErrorKind::invalid_input: return "InvalidInput";
    case ErrorKind::outside_disk: return "OutsideDisk";
    case ErrorKind::stencil_outside_disk: return "StencilOutsideDisk";
    case ErrorKind::no_convergence: return "NoConvergence";
    case ErrorKind::precondition_violated: return "PreconditionViolated";
    case ErrorKind::parameter_out_of_range: return "ParameterOutOfRange";
    case ErrorKind::numeric_inversion_failure: return "NumericInversionFailure";
  }
  return "Error";
}

}  // namespace schwarz
