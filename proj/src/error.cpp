#include "qcav/error.hpp"

#include <ostream>
#include <sstream>

namespace qcav {

std::ostream &operator<<(std::ostream &os, const SourceLocation &loc) {
  return os << loc.line << ":" << loc.column;
}

const char *error_kind_name(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::SyntaxError:
    return "SyntaxError";
  case ErrorKind::UnknownGate:
    return "UnknownGate";
  case ErrorKind::QubitOutOfRange:
    return "QubitOutOfRange";
  case ErrorKind::DuplicateRegister:
    return "DuplicateRegister";
  case ErrorKind::MissingHeader:
    return "MissingHeader";
  case ErrorKind::FormatError:
    return "FormatError";
  case ErrorKind::DuplicateId:
    return "DuplicateId";
  case ErrorKind::BadThresholds:
    return "BadThresholds";
  case ErrorKind::BadArity:
    return "BadArity";
  case ErrorKind::BindingExplosion:
    return "BindingExplosion";
  case ErrorKind::InvalidProbability:
    return "InvalidProbability";
  case ErrorKind::Unreachable:
    return "Unreachable";
  case ErrorKind::Internal:
    return "Internal";
  }
  return "?";
}

namespace {

std::string format_message(ErrorKind kind, const std::string &message,
                           const std::optional<SourceLocation> &where) {
  std::ostringstream os;
  if (where)
    os << *where << ": ";
  os << error_kind_name(kind) << ": " << message;
  return os.str();
}

} // namespace

Error::Error(ErrorKind kind, const std::string &message,
             std::optional<SourceLocation> where)
    : std::runtime_error(format_message(kind, message, where)), kind_(kind),
      where_(where) {}

} // namespace qcav
