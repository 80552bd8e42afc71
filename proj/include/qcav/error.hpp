#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "qcav/source_location.hpp"

namespace qcav {

enum class ErrorKind {
  // qasm frontend
  SyntaxError,
  UnknownGate,
  QubitOutOfRange,
  DuplicateRegister,
  MissingHeader,
  // signature database
  FormatError,
  DuplicateId,
  BadThresholds,
  BadArity,
  // scanner
  BindingExplosion,
  // simulator
  InvalidProbability,
  Unreachable,
  // anything that indicates a bug rather than bad input
  Internal,
};

const char *error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message,
        std::optional<SourceLocation> where = std::nullopt);

  ErrorKind kind() const { return kind_; }
  const std::optional<SourceLocation> &where() const { return where_; }

private:
  ErrorKind kind_;
  std::optional<SourceLocation> where_;
};

} // namespace qcav
