#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vortexq {

/// Failure categories raised by the toolkit.
///
/// Domain kinds are answers about the mathematics (a Bradlow violation is
/// a perfectly good result for a query); the rest signal misuse or a
/// numerical breakdown.
enum class ErrorKind {
  // geometry
  InvalidModulus,
  InvalidResolution,
  InvalidArea,
  NonZeroMean,
  ShapeMismatch,
  // vortex equations
  InvalidDivisor,
  BradlowViolation,
  NewtonDivergence,
  InvalidTolerance,
  // moduli metric
  StencilInconsistent,
  BackgroundMismatch,
  InvalidModuliGrid,
  // cohomology / quantization
  NotPrequantizable,
  IdentityFailure,
  WrongDegreeContext,
  InvalidJump,
  HypothesisViolation,
  DegreeOutOfRange,
  InvalidArgument,
  // zeta
  ConvergenceDomain,
  MethodDisagreement,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for kinds that report a mathematical precondition of the query
/// (exit status 2 at the command line) rather than an internal failure.
bool is_domain_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  bool is_domain() const noexcept { return is_domain_error(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace vortexq
