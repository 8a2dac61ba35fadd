#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sidon {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    NotPrime,
    NotPrimePower,
    FieldTooLarge,
    EnumerationTooLarge,
    RankDeficient,
    Singular,
    DuplicateElement,
    NotNormalized,
    NotCyclic,
    NotGenerating,
    SyndromeCollision,
    PreconditionViolated,
    BudgetExceeded,
    ParseError,
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::NotGenerating: return "NotGenerating";
    case ErrorCode::SyndromeCollision: return "SyndromeCollision";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) fail(code, message);
}

} // namespace sidon
