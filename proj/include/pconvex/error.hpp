#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pconvex {

// Machine-readable failure categories. Each maps to a stable string code
// that the CLI writes into its error reports.
enum class ErrorCode {
  kInvalidInput,
  kInvalidFormat,
  kAtInfinity,
  kDegeneratePencil,
  kSingularMatrix,
  kNotProperlyConvex,
  kDegenerateChord,
  kNotOnFrontier,
  kInfiniteDistance,
  kProjectionUndefined,
  kOutsideDualCone,
  kConvergenceFailure,
  kDegenerateDomain,
  kNotHyperbolic,
  kAutomorphismInconsistency,
  kInvalidBasepoint,
  kTransversalityFailure,
  kCoplanarity,
  kNotCertified,
  kApproximationFailure,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string witness = {})
      : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  // Optional serialized witness (JSON text) explaining the failure.
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::string witness_;
};

}  // namespace pconvex
