#include "latspec/error.hpp"

namespace latspec {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidResolution: return "invalid-resolution";
    case ErrorCode::DegenerateDispersion: return "degenerate-dispersion";
    case ErrorCode::InvalidMass: return "invalid-mass";
    case ErrorCode::NotOnFiber: return "not-on-fiber";
    case ErrorCode::OutOfDomain: return "out-of-domain";
    case ErrorCode::SingularDenominator: return "singular-denominator";
    case ErrorCode::IncompatibleDiscretization: return "incompatible-discretization";
    case ErrorCode::ZInChannelSpectrum: return "z-in-channel-spectrum";
    case ErrorCode::NumericalFailure: return "numerical-failure";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::ValidationFailure: return "validation-failure";
  }
  return "unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationFailure:
    case ErrorCode::DegenerateDispersion:
      return 2;
    case ErrorCode::NumericalFailure:
      return 4;
    default:
      return 3;
  }
}

}  // namespace latspec
