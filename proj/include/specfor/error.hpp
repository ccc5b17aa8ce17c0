#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specfor {

enum class ErrorCode {
  FileNotFound,
  UnsupportedFormat,
  CorruptData,
  TooSmall,
  BadWindow,
  BadKernel,
  NotSquare,
  BadGeometry,
  EmptyEnrollment,
  LengthMismatch,
  NoProfiles,
  InvalidArgument,
  IoError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure in the library surfaces as this exception. `code()` is the
/// stable machine-readable kind; `what()` carries a human-readable reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace specfor
