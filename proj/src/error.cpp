#include "pgs/error.hpp"

namespace pgs {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonDivisible: return "NonDivisible";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::Precision: return "Precision";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BadK: return "BadK";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::BadVariant: return "BadVariant";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace pgs
