#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fluorsq {

enum class ErrorCode {
    InterferenceOutOfRange,
    NegativeRate,
    BadNormalization,
    SingularLiouvillian,
    UnsupportedTarget,
    StepSizeUnderflow,
    ResolventSingular,
    AscendingGridRequired,
    DegenerateSpectrum,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// Base class for every failure the library reports. The code lets callers
// (the CLI in particular) map failures onto exit statuses without parsing text.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    // Parameter and precondition problems, as opposed to numerical breakdowns.
    bool is_input_error() const noexcept {
        switch (code_) {
        case ErrorCode::InterferenceOutOfRange:
        case ErrorCode::NegativeRate:
        case ErrorCode::BadNormalization:
        case ErrorCode::UnsupportedTarget:
        case ErrorCode::AscendingGridRequired:
        case ErrorCode::InvalidArgument:
            return true;
        default:
            return false;
        }
    }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InterferenceOutOfRange: return "InterferenceOutOfRange";
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::BadNormalization: return "BadNormalization";
    case ErrorCode::SingularLiouvillian: return "SingularLiouvillian";
    case ErrorCode::UnsupportedTarget: return "UnsupportedTarget";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::ResolventSingular: return "ResolventSingular";
    case ErrorCode::AscendingGridRequired: return "AscendingGridRequired";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace fluorsq
