#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdic {

enum class ErrorCode {
    UnknownVariable,
    OverlappingSets,
    Degenerate,
    InvalidParams,
    InvalidZIC,
    BadSplit,
    SingularDenominator,
    WrongRegime,
    OrderingViolated,
    BadFactorization,
    GateViolated,
    InternalConsistency,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::OverlappingSets: return "OverlappingSets";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidZIC: return "InvalidZIC";
    case ErrorCode::BadSplit: return "BadSplit";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::OrderingViolated: return "OrderingViolated";
    case ErrorCode::BadFactorization: return "BadFactorization";
    case ErrorCode::GateViolated: return "GateViolated";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
    }
    return "Unknown";
}

/// Every domain failure in the library is raised as this type; `code()`
/// is what the CLI reports in its error JSON.
class DomainError : public std::runtime_error {
public:
    DomainError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace sdic
