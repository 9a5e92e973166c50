#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schwarz {

enum class ErrorKind {
  domain,
  derivative_unavailable,
  non_integrable,
  out_of_range,
  invalid_input,
  outside_disk,
  stencil_outside_disk,
  no_convergence,
  precondition_violated,
  parameter_out_of_range,
  numeric_inversion_failure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every numeric/contract failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& what) : Error(K, what) {}
};

using DomainError = KindedError<ErrorKind::domain>;
using DerivativeUnavailable = KindedError<ErrorKind::derivative_unavailable>;
using NonIntegrable = KindedError<ErrorKind::non_integrable>;
using OutOfRange = KindedError<ErrorKind::out_of_range>;
using InvalidInput = KindedError<ErrorKind::invalid_input>;
using OutsideDisk = KindedError<ErrorKind::outside_disk>;
using StencilOutsideDisk = KindedError<ErrorKind::stencil_outside_disk>;
using NoConvergence = KindedError<ErrorKind::no_convergence>;
using PreconditionViolated = KindedError<ErrorKind::precondition_violated>;
using ParameterOutOfRange = KindedError<ErrorKind::parameter_out_of_range>;
using NumericInversionFailure = KindedError<ErrorKind::numeric_inversion_failure>;

}  // namespace schwarz
