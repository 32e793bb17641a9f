#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace compspec {

// Every failure mode the library reports. The names are part of the CLI's
// JSON error output and must stay stable.
enum class ErrorKind {
    CenterMismatch,
    OrderMismatch,
    OrderExceeded,
    ZeroConstantTerm,
    InvalidArgument,
    ParseError,
    PoleInDisc,
    NotSelfMap,
    NoInteriorFixedPoint,
    NonConvergence,
    NearUnitMultiplier,
    NotAFixedPoint,
    NotSchroeder,
    SmallDivisor,
    TooLarge,
    IndexExceeded,
    EigenvalueCollision,
    ZeroLambda,
    LambdaTooSmall,
    ResidualTooLarge,
    IncompatibleRHS,
    SpectrumPoint,
    AutomorphismSymbol,
    NotRealMultiplier,
    InsufficientOrder,
};

std::string_view error_name(ErrorKind kind) noexcept;

// Coarse grouping used for process exit codes.
enum class ErrorCategory { Usage, Domain, Numerical };

ErrorCategory error_category(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind), detail_(message) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return error_name(kind_); }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace compspec
