#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polybench {

enum class ErrorKind {
  InvalidPolygon,
  DegenerateGeometry,
  InvalidParameter,
  GenerationFailed,
  RefinementFailed,
  SingularG,
  SolveFailed,
  ZeroNormalizer,
  NegativeQuadraticForm,
  InvalidSamples,
  ConstantColumn,
  MissingJoin,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers which
/// failure mode they hit so batch drivers can flag rows instead of aborting.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polybench
