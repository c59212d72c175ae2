#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nevlab {

enum class ErrorCode {
  PoleHit,
  Undefined,
  NotMeromorphic,
  ParseError,
  InvalidArgument,
  QuadratureNoConverge,
  WindingUnstable,
  TailTooShort,
  DegenerateDenominator,
  MixedKinds,
  StepUnderflow,
  NoneSatisfied,
  MissingSolutionBase,
  PredicateOscillation,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by the caller's input rather than by a numeric failure.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message);

  /// Zero-based character offset into the parsed text.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace nevlab
