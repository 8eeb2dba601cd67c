#pragma once

/**
 * @file error.hpp
 * @brief Error codes and the exception type thrown throughout prepkit.
 */

#include <stdexcept>
#include <string>
#include <string_view>

namespace prepkit {

enum class ErrorCode {
    CompositeModulus,
    BadPrecision,
    ZeroAtPrecision,
    NotAUnit,
    ZeroInput,
    NoUniformizer,
    UnsupportedRing,
    RingMismatch,
    NotAUnitSeries,
    NonzeroConstantInner,
    BadNormalization,
    InsufficientXPrecision,
    PointNotSmall,
    NonBinaryCoefficient,
    WindowTooSmall,
    NoUnitCoefficient,
    BothConstant,
    SpecViolation,
    HenselConditionFails,
    DegreeAboveOne,
    BudgetExceeded,
    PrecisionTooLow,
    NonPrimeBase,
    ParseError,
    UsageError,
    IoError,
    Internal,
};

inline std::string_view error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::CompositeModulus: return "CompositeModulus";
        case ErrorCode::BadPrecision: return "BadPrecision";
        case ErrorCode::ZeroAtPrecision: return "ZeroAtPrecision";
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::ZeroInput: return "ZeroInput";
        case ErrorCode::NoUniformizer: return "NoUniformizer";
        case ErrorCode::UnsupportedRing: return "UnsupportedRing";
        case ErrorCode::RingMismatch: return "RingMismatch";
        case ErrorCode::NotAUnitSeries: return "NotAUnitSeries";
        case ErrorCode::NonzeroConstantInner: return "NonzeroConstantInner";
        case ErrorCode::BadNormalization: return "BadNormalization";
        case ErrorCode::InsufficientXPrecision: return "InsufficientXPrecision";
        case ErrorCode::PointNotSmall: return "PointNotSmall";
        case ErrorCode::NonBinaryCoefficient: return "NonBinaryCoefficient";
        case ErrorCode::WindowTooSmall: return "WindowTooSmall";
        case ErrorCode::NoUnitCoefficient: return "NoUnitCoefficient";
        case ErrorCode::BothConstant: return "BothConstant";
        case ErrorCode::SpecViolation: return "SpecViolation";
        case ErrorCode::HenselConditionFails: return "HenselConditionFails";
        case ErrorCode::DegreeAboveOne: return "DegreeAboveOne";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::PrecisionTooLow: return "PrecisionTooLow";
        case ErrorCode::NonPrimeBase: return "NonPrimeBase";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UsageError: return "UsageError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
    throw Error(code, detail);
}

}  // namespace prepkit
