#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fusion {

enum class ErrorCode {
    NotSymmetric,
    NoConvergence,
    NotOrthonormal,
    SingularOperator,
    ShapeMismatch,
    AmbientMismatch,
    DimensionMismatch,
    Infeasible,
    InternalOverrun,
    OrthogonalityViolation,
    NontrivialIntersection,
    FullSubspace,
    NotParseval,
    UnitWeight,
    NoAdmissibleConstant,
    ParseError,
    InvariantViolation,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised by the constructions when a spectrum fails its feasibility check.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, std::vector<std::string> violations)
        : Error(ErrorCode::Infeasible, what), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

} // namespace fusion
