#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace intranoise {

enum class ErrorKind {
  NotHermitian,
  NotPSD,
  TraceNotOne,
  ZeroVector,
  NotNormalized,
  ParamOutOfRange,
  IndexOutOfRange,
  ComplexStateUnsupported,
  InvalidParams,
  GridTooCoarse,
  NoConvergence,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying one or more failure kinds. Validation of a density
/// matrix can fail on several invariants at once; every other error path
/// reports exactly one kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  Error(std::vector<ErrorKind> kinds, const std::string& what);

  ErrorKind kind() const { return kinds_.front(); }
  const std::vector<ErrorKind>& kinds() const { return kinds_; }
  bool has(ErrorKind kind) const;

 private:
  std::vector<ErrorKind> kinds_;
};

}  // namespace intranoise
