#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace srcf {

enum class ErrorKind {
  MalformedSpec,
  UnknownFamily,
  BadParams,
  IndexOutOfRange,
  InvariantBreach,
  EnclosureFailed,
  PreconditionFailed,
  NotNCF,
  NotRCF,
  NotLCF,
  NoLargeTerm,
  IncompleteBlock,
  TruncationEmpty,
  DegenerateQ,
  ConditionNotVerified,
  BadTarget,
  BadPeriod,
  DivisibilityBreach,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace srcf
