// invariants.hpp: trace-power entanglement invariants I_n = Tr[rho_A^{n+1}]
// and the qutrit quantities derived from them.

#pragma once

#include "luinv/state.hpp"

#include <array>
#include <optional>
#include <vector>

namespace luinv {

struct QutritExtras {
    double I1_prime;  // (3/2)(1 - I_1)
    double I2_prime;  // (9/8)(1 - I_2)
    double K;         // kappa_1^2 kappa_2^2 kappa_3^2 = Det rho_A
};

struct InvariantSet {
    int d = 0;
    std::vector<double> I;              // I_0 .. I_{d-1}
    std::optional<QutritExtras> qutrit;  // present iff d == 3
};

/// Invariants of a state from the eigenvalues of rho_A. For d = 3 the K
/// invariant is taken from the identity I_2 - (3/2) I_1 + (1/2) I_0 = 3K and
/// cross-checked against Det rho_A; disagreement beyond 1e-8 raises
/// KInconsistent.
InvariantSet compute_invariants(const BipartiteState& state);

/// Same quantities by repeated matrix products of rho_A. Slower; kept as an
/// independent route for cross-checks.
std::vector<double> trace_power_invariants(const BipartiteState& state);

InvariantSet invariants_from_schmidt(const SchmidtVector& kappa);

/// Closed-form (I_0, I_1, I_2) of the qutrit canonical state with parameters
/// (p1, p2, p3, theta). Throws BadParams unless p_i >= 0 and sum p_i^2 = 1
/// within 1e-10.
std::array<double, 3> invariants_from_alt_params(double p1, double p2, double p3, double theta);

// Normalized coordinates (I'_1, I'_2) for a qutrit pair (I_1, I_2).
inline double normalized_I1(double I1) { return 1.5 * (1.0 - I1); }
inline double normalized_I2(double I2) { return 1.125 * (1.0 - I2); }

// K from (I_0, I_1, I_2), clamped to 0 when |K| <= 1e-12.
double k_from_invariants(double I0, double I1, double I2);

}  // namespace luinv
