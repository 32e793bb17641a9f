#include "compspec/error.hpp"

namespace compspec {

std::string_view error_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::CenterMismatch: return "CenterMismatch";
        case ErrorKind::OrderMismatch: return "OrderMismatch";
        case ErrorKind::OrderExceeded: return "OrderExceeded";
        case ErrorKind::ZeroConstantTerm: return "ZeroConstantTerm";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::PoleInDisc: return "PoleInDisc";
        case ErrorKind::NotSelfMap: return "NotSelfMap";
        case ErrorKind::NoInteriorFixedPoint: return "NoInteriorFixedPoint";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::NearUnitMultiplier: return "NearUnitMultiplier";
        case ErrorKind::NotAFixedPoint: return "NotAFixedPoint";
        case ErrorKind::NotSchroeder: return "NotSchroeder";
        case ErrorKind::SmallDivisor: return "SmallDivisor";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::IndexExceeded: return "IndexExceeded";
        case ErrorKind::EigenvalueCollision: return "EigenvalueCollision";
        case ErrorKind::ZeroLambda: return "ZeroLambda";
        case ErrorKind::LambdaTooSmall: return "LambdaTooSmall";
        case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
        case ErrorKind::IncompatibleRHS: return "IncompatibleRHS";
        case ErrorKind::SpectrumPoint: return "SpectrumPoint";
        case ErrorKind::AutomorphismSymbol: return "AutomorphismSymbol";
        case ErrorKind::NotRealMultiplier: return "NotRealMultiplier";
        case ErrorKind::InsufficientOrder: return "InsufficientOrder";
    }
    return "Unknown";
}

ErrorCategory error_category(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::InvalidArgument:
            return ErrorCategory::Usage;
        case ErrorKind::NonConvergence:
        case ErrorKind::ResidualTooLarge:
        case ErrorKind::SmallDivisor:
            return ErrorCategory::Numerical;
        default:
            return ErrorCategory::Domain;
    }
}

}  // namespace compspec
