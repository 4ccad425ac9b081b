#include "intranoise/error.hpp"

#include <algorithm>

namespace intranoise {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ComplexStateUnsupported: return "ComplexStateUnsupported";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::NoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kinds_{kind} {}

Error::Error(std::vector<ErrorKind> kinds, const std::string& what)
    : std::runtime_error(what), kinds_(std::move(kinds)) {
  if (kinds_.empty()) throw std::logic_error("Error: empty kind list");
}

bool Error::has(ErrorKind kind) const {
  return std::find(kinds_.begin(), kinds_.end(), kind) != kinds_.end();
}

}  // namespace intranoise
