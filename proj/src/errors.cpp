#include "knads/errors.hpp"

namespace knads {

const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::NoHorizon: return "NoHorizon";
        case ErrorCode::InvalidRoots: return "InvalidRoots";
        case ErrorCode::OutsideExterior: return "OutsideExterior";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::IntegratorStall: return "IntegratorStall";
        case ErrorCode::NotLimitPoint: return "NotLimitPoint";
        case ErrorCode::WindowTooWide: return "WindowTooWide";
        case ErrorCode::NotConfining: return "NotConfining";
        case ErrorCode::TooCloseToPhiPlus: return "TooCloseToPhiPlus";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::ExtremalUnsupported: return "ExtremalUnsupported";
        case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    }
    return "Unknown";
}

bool is_validation_error(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidParams:
        case ErrorCode::NoHorizon:
        case ErrorCode::InvalidRoots:
        case ErrorCode::OutsideExterior:
        case ErrorCode::DomainError:
        case ErrorCode::NotLimitPoint:
        case ErrorCode::WindowTooWide:
        case ErrorCode::NotConfining:
        case ErrorCode::TooCloseToPhiPlus:
        case ErrorCode::GridTooCoarse:
        case ErrorCode::ExtremalUnsupported:
        case ErrorCode::NotSelfAdjoint:
            return true;
        default:
            return false;
    }
}

}  // namespace knads
