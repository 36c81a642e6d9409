#pragma once

#include <stdexcept>
#include <string>

namespace dcg {

enum class ErrorCode {
    InvalidArgument,
    NonManifold,
    Disconnected,
    InconsistentOrientation,
    NotDisk,
    EmptySubcomplex,
    DegenerateInput,
    ViolatedTriangleInequality,
    OutsideDisk,
    DegenerateFace,
    ConditionViolated,
    NumericalFailure,
    ZeroWeightAtInterior,
    SingularSystem,
    NotHarmonic,
    DisconnectedTerminals,
    LeftDomain,
    WeightDegenerate,
    StepFailure,
    NoConvergence,
    TriangleCollapse,
    IterationLimit,
    HypothesisViolated,
    SeparationViolated,
    BadRadii,
    NotFlat,
    FoldOver,
    AngleHypothesisViolated,
    NotConformalPair,
    TheoremViolated,
    Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dcg
