#pragma once

#include <stdexcept>
#include <string>

namespace bellforge {

// Base of every domain error thrown by the library.
class BellError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BELLFORGE_DEFINE_ERROR(Name)      \
  class Name : public BellError {         \
   public:                                \
    using BellError::BellError;           \
  }

BELLFORGE_DEFINE_ERROR(InvalidPattern);
BELLFORGE_DEFINE_ERROR(InvalidInequality);
BELLFORGE_DEFINE_ERROR(OverlapError);
BELLFORGE_DEFINE_ERROR(LengthMismatch);
BELLFORGE_DEFINE_ERROR(NTooLarge);
BELLFORGE_DEFINE_ERROR(BlockIncomplete);
BELLFORGE_DEFINE_ERROR(WeightMismatch);
BELLFORGE_DEFINE_ERROR(ExtremesAbsent);
BELLFORGE_DEFINE_ERROR(DimensionMismatch);
BELLFORGE_DEFINE_ERROR(ConvergenceFailure);
BELLFORGE_DEFINE_ERROR(InvalidState);
BELLFORGE_DEFINE_ERROR(InvalidConfig);

#undef BELLFORGE_DEFINE_ERROR

// Input document could not be parsed; `where` names the offending field.
class ParseError : public BellError {
 public:
  ParseError(const std::string& where, const std::string& what)
      : BellError(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace bellforge
