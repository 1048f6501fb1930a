#include "contnum/error.hpp"

namespace contnum {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnknownGenerator: return "unknown-generator";
    case ErrorCode::ExhaustedFamily: return "exhausted-family";
    case ErrorCode::Arity: return "arity";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::NotNormal: return "not-classification-normal";
    case ErrorCode::UnboundVariable: return "unbound-variable";
    case ErrorCode::Validation: return "validation";
    case ErrorCode::Incoherent: return "incoherent-recipe";
    case ErrorCode::Inconsistent: return "inconsistent";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

namespace {
std::string decorate(ErrorCode code, const std::string& what, std::optional<std::size_t> position) {
  std::string out = std::string(to_string(code)) + " error: " + what;
  if (position) out += " (at offset " + std::to_string(*position) + ")";
  return out;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& what, std::optional<std::size_t> position)
    : std::runtime_error(decorate(code, what, position)), code_(code), position_(position) {}

}  // namespace contnum
