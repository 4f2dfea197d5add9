#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace caustica {

enum class ErrorKind {
  InvalidScene,
  RadiantOnMirror,
  TotalInternalReflection,
  DegenerateConic,
  AOnCircleOrCenter,
  RNotOffAxis,
  DenominatorZero,
  AEqualsO,
  MNotOnOval,
  MAtFocus,
  NoConsistentScene,
  AbsNEqualsOne,
  AOnLine,
  IrrationalResult,
  DivByZero,
  ZeroPoly,
  BothConstantInV,
  ZeroResultant,
  EliminationCollapse,
  PipelineMismatch,
  UnsupportedMirror,
  ParseError,
  ConfigError,
  Internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace caustica
