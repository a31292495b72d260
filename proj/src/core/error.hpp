#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gotcha {

// Closed set of failure categories. The C API and the HTTP service map these
// one-to-one onto their own codes, so adding a value here is a wire change.
enum class ErrorCode {
  Validation,
  DuplicateUser,
  UnknownSession,
  SessionExpired,
  LockedOut,
  BudgetExceeded,
  ContractViolation,
  StoreCorrupt,
  Io,
  Bind,
  NotFound,
  Internal,
};

std::string_view error_code_name(ErrorCode code) noexcept;

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

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::Validation, what);
}

}  // namespace gotcha
