#include "cantorlab/error.hpp"

namespace cantorlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::BoundExceeded: return "bound-exceeded";
    case ErrorKind::WidthBound: return "width-bound";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::UnsupportedName: return "unsupported-name";
    case ErrorKind::MalformedSequence: return "malformed-sequence";
    case ErrorKind::Unclassifiable: return "unclassifiable";
    case ErrorKind::TypeMismatch: return "type";
    case ErrorKind::ZeroCondition: return "zero-condition";
    case ErrorKind::LengthMismatch: return "length-mismatch";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::BranchDepth: return "branch-depth";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

}  // namespace cantorlab
