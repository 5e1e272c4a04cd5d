// errors.hpp: error kinds raised by the library and their exit-code category

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace luinv {

enum class ErrorKind {
    NotNormalized,
    BadShape,
    DimensionMismatch,
    BadParams,
    OutOfRange,
    InvariantMismatch,
    IoError,
    KInconsistent,
    NumericalFailure,
    Infeasible,
    NoConvergence,
    RefinementFailed,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Input/validation errors are the caller's fault; everything else signals a
// numerical problem inside the library.
bool is_numerical(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Raised by the LU finder when the degenerate-spectrum refinement does not
// reach the required residual. Carries the best residual achieved.
class RefinementFailedError : public Error {
public:
    RefinementFailedError(const std::string& what, double achieved)
        : Error(ErrorKind::RefinementFailed, what), achieved_residual(achieved) {}

    double achieved_residual;
};

}  // namespace luinv
