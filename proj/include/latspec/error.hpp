#pragma once

#include <stdexcept>
#include <string>

namespace latspec {

enum class ErrorCode {
  InvalidResolution,
  DegenerateDispersion,
  InvalidMass,
  NotOnFiber,
  OutOfDomain,
  SingularDenominator,
  IncompatibleDiscretization,
  ZInChannelSpectrum,
  NumericalFailure,
  ParseError,
  ValidationFailure,
};

const char* to_string(ErrorCode code);

// Process exit code documented by the CLI: 2 config invalid, 3 precondition
// violated, 4 numerical failure.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace latspec
