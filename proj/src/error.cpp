#include "pfdeg/error.hpp"

#include "pfdeg/claims.hpp"

namespace pfdeg {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedInput: return "MalformedInput";
        case ErrorKind::NotMonic: return "NotMonic";
        case ErrorKind::NotSquarefree: return "NotSquarefree";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::NotInvertible: return "NotInvertible";
        case ErrorKind::ReduciblePoly: return "ReduciblePoly";
        case ErrorKind::Indeterminate: return "Indeterminate";
        case ErrorKind::RealConjugate: return "RealConjugate";
        case ErrorKind::NotPerron: return "NotPerron";
        case ErrorKind::NotUnit: return "NotUnit";
        case ErrorKind::NoDominantRealRoot: return "NoDominantRealRoot";
        case ErrorKind::EpsilonOutOfRange: return "EpsilonOutOfRange";
        case ErrorKind::ClaimViolated: return "ClaimViolated";
        case ErrorKind::HypothesisFailed: return "HypothesisFailed";
        case ErrorKind::NotQuadratic: return "NotQuadratic";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::NoComplexConjugate: return "NoComplexConjugate";
        case ErrorKind::DegenerateProjection: return "DegenerateProjection";
        case ErrorKind::InvalidMultiplier: return "InvalidMultiplier";
        case ErrorKind::TooFewPoints: return "TooFewPoints";
        case ErrorKind::NotInvariant: return "NotInvariant";
    }
    return "Unknown";
}

void ClaimReport::require_all() const {
    for (const auto& r : results) {
        if (!r.passed) throw Error(ErrorKind::ClaimViolated, r.claim + " failed: " + r.detail);
    }
}

}  // namespace pfdeg
