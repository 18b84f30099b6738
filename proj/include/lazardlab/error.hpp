#pragma once

#include <stdexcept>
#include <string>

namespace lazard {

/// Error categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  InvalidArgument = 1,
  UnsupportedPrime,
  NotInGroup,
  NoConvergence,
  PrecisionExhausted,
  CompositionNonzero,
  ResourceCap,
  NotStabilized,
  NotUnimodular,
  NotProUnipotent,
  MissingSample,
  TensorMissing,
  Parse,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace lazard
