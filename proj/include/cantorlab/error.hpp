#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cantorlab {

enum class ErrorKind {
  Domain,
  BoundExceeded,
  WidthBound,
  Parse,
  UnsupportedName,
  MalformedSequence,
  Unclassifiable,
  TypeMismatch,
  ZeroCondition,
  LengthMismatch,
  Precondition,
  BranchDepth,
  Usage,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// the CLI can report it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cantorlab
