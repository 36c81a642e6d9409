#include "dcg/error.hpp"

namespace dcg {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::NonManifold:
            return "NonManifold";
        case ErrorCode::Disconnected:
            return "Disconnected";
        case ErrorCode::InconsistentOrientation:
            return "InconsistentOrientation";
        case ErrorCode::NotDisk:
            return "NotDisk";
        case ErrorCode::EmptySubcomplex:
            return "EmptySubcomplex";
        case ErrorCode::DegenerateInput:
            return "DegenerateInput";
        case ErrorCode::ViolatedTriangleInequality:
            return "ViolatedTriangleInequality";
        case ErrorCode::OutsideDisk:
            return "OutsideDisk";
        case ErrorCode::DegenerateFace:
            return "DegenerateFace";
        case ErrorCode::ConditionViolated:
            return "ConditionViolated";
        case ErrorCode::NumericalFailure:
            return "NumericalFailure";
        case ErrorCode::ZeroWeightAtInterior:
            return "ZeroWeightAtInterior";
        case ErrorCode::SingularSystem:
            return "SingularSystem";
        case ErrorCode::NotHarmonic:
            return "NotHarmonic";
        case ErrorCode::DisconnectedTerminals:
            return "DisconnectedTerminals";
        case ErrorCode::LeftDomain:
            return "LeftDomain";
        case ErrorCode::WeightDegenerate:
            return "WeightDegenerate";
        case ErrorCode::StepFailure:
            return "StepFailure";
        case ErrorCode::NoConvergence:
            return "NoConvergence";
        case ErrorCode::TriangleCollapse:
            return "TriangleCollapse";
        case ErrorCode::IterationLimit:
            return "IterationLimit";
        case ErrorCode::HypothesisViolated:
            return "HypothesisViolated";
        case ErrorCode::SeparationViolated:
            return "SeparationViolated";
        case ErrorCode::BadRadii:
            return "BadRadii";
        case ErrorCode::NotFlat:
            return "NotFlat";
        case ErrorCode::FoldOver:
            return "FoldOver";
        case ErrorCode::AngleHypothesisViolated:
            return "AngleHypothesisViolated";
        case ErrorCode::NotConformalPair:
            return "NotConformalPair";
        case ErrorCode::TheoremViolated:
            return "TheoremViolated";
        case ErrorCode::Io:
            return "Io";
    }
    return "Unknown";
}

}  // namespace dcg
