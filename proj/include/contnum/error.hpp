#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace contnum {

enum class ErrorCode {
  Syntax,            // malformed formula code, descriptor or structure file
  UnknownGenerator,  // (gen NAME ...) with an unregistered NAME
  ExhaustedFamily,   // explicit family indexed past its end
  Arity,             // connective applied to the wrong number of arguments
  Domain,            // value outside the admissible range (non-dyadic, outside [0,1], ...)
  NotNormal,         // formula outside the classification-normal fragment
  UnboundVariable,   // evaluation hit a free variable with no binding
  Validation,        // a metric axiom failed
  Incoherent,        // recipe level/side inconsistent with its source
  Inconsistent,      // two numerals that cannot denote the same real
  Io,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above. Parse
/// failures also carry the byte offset at which they were detected.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<std::size_t> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace contnum
