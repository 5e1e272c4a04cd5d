#include "luinv/errors.hpp"

namespace luinv {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::BadShape: return "BadShape";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::BadParams: return "BadParams";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::InvariantMismatch: return "InvariantMismatch";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::KInconsistent: return "KInconsistent";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
        case ErrorKind::Infeasible: return "Infeasible";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::RefinementFailed: return "RefinementFailed";
    }
    return "Unknown";
}

bool is_numerical(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::KInconsistent:
        case ErrorKind::NumericalFailure:
        case ErrorKind::Infeasible:
        case ErrorKind::NoConvergence:
        case ErrorKind::RefinementFailed:
            return true;
        default:
            return false;
    }
}

}  // namespace luinv
