#pragma once

#include <stdexcept>
#include <string>

namespace fixfree {

// Every failure raised by the library carries one of these kinds so that
// callers (and the CLI) can map it to a stable name or exit code.
enum class ErrorKind {
    ConstantInput,
    ZeroInput,
    NotMonic,
    NotSquare,
    DimensionMismatch,
    EmptyGenerators,
    ZeroConstantTerm,
    NotAutomorphism,
    NotHomomorphism,
    InvalidGroup,
    SeriesNotInvariant,
    FactorNotElementaryAbelian,
    ConstantTermNotUnit,
    UnsupportedWordShape,
    HypothesisViolated,
    BoundExceeded,
    DimensionCap,
    SupportNotAF,
    DoesNotSplit,
    IdentityFails,
    NotPGroup,
    FactorsNotHomocyclic,
    ClassTooHigh,
    EvenModulus,
    InvalidLieRing,
    UnsupportedRing,
    SeriesNotNormal,
    InvalidArgument,
};

const char* error_kind_name(ErrorKind k);

class AlgebraError : public std::runtime_error {
public:
    AlgebraError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace fixfree
