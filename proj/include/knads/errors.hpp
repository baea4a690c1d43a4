#pragma once

#include <stdexcept>
#include <string>

namespace knads {

enum class ErrorCode {
    InvalidParams,
    NoHorizon,
    InvalidRoots,
    OutsideExterior,
    DomainError,
    QuadratureFailure,
    IntegratorStall,
    NotLimitPoint,
    WindowTooWide,
    NotConfining,
    TooCloseToPhiPlus,
    GridTooCoarse,
    ExtremalUnsupported,
    NotSelfAdjoint,
};

const char* to_string(ErrorCode c);

// Validation errors map to CLI exit code 2, everything else to 3.
bool is_validation_error(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& msg)
        : std::runtime_error(std::string(to_string(c)) + ": " + msg), code_(c) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace knads
