#include "core/error.hpp"

namespace gotcha {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Validation: return "validation_error";
    case ErrorCode::DuplicateUser: return "duplicate_user";
    case ErrorCode::UnknownSession: return "unknown_session";
    case ErrorCode::SessionExpired: return "session_expired";
    case ErrorCode::LockedOut: return "locked_out";
    case ErrorCode::BudgetExceeded: return "budget_exceeded";
    case ErrorCode::ContractViolation: return "contract_violation";
    case ErrorCode::StoreCorrupt: return "store_corrupt";
    case ErrorCode::Io: return "io_error";
    case ErrorCode::Bind: return "bind_failure";
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::Internal: return "internal_error";
  }
  return "internal_error";
}

}  // namespace gotcha
