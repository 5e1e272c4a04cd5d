// canonical.hpp: alternative canonical forms of two-qubit and two-qutrit pure
// states, and explicit local unitaries between LU-equivalent states.
//
// d = 2:  p1 (|00> + |11>)/sqrt2 + p2 |01>,                          p1^4 = 4 Det rho_A
// d = 3:  p1 (|00> + |11> + |22>)/sqrt3 + p2 (|01> + |12>)/sqrt2
//         + p3 e^{i theta} |02>,                                     p1^6 = 27 Det rho_A

#pragma once

#include "luinv/invariants.hpp"
#include "luinv/state.hpp"

#include <vector>

namespace luinv {

struct AltDecomposition {
    int d = 0;
    std::vector<double> p;  // p1 .. pd, non-negative, sum of squares 1
    double theta = 0.0;     // d = 3 only; 0 or pi on the canonical branch
    BipartiteState canonical_state;
};

// p1 = (2(I0 - I1))^{1/4}. Throws OutOfRange when 2(I0 - I1) is outside
// [-1e-10, 1 + 1e-10], BadParams unless inv.d == 2.
double solve_p1_qubit(const InvariantSet& inv);

AltDecomposition qubit_alt_decomposition(const BipartiteState& state);

// p1 = (27K)^{1/6}; K is clamped into [0, 1/27] within 1e-12.
double solve_p1_qutrit(double K);

struct P2Theta {
    double p2 = 0.0;
    double theta = 0.0;
    double p3 = 0.0;  // returned directly; recomputing it from p2 loses digits near 0
};

/// Solves I_1(p1, p2, p3, theta) = target_I1 on the canonical branch.
///
/// Let f(p3) be I_1 at theta = 0 with p2 eliminated. Both the theta = 0 and
/// theta = pi curves start from f(0) at p3 = 0. If target_I1 >= f(0) the
/// theta = 0 curve is bisected on its increasing segment [0, argmax];
/// otherwise the theta = pi curve is bisected on its decreasing segment
/// [0, argmin]. Either way the smallest such p3 is returned.
///
/// Throws Infeasible when target_I1 lies outside the closed-form range for
/// p1 by more than 1e-9, NoConvergence if bisection misses 1e-10.
P2Theta solve_p2_theta(double p1, double target_I1);

// Canonical state for (p, theta). d = 2 ignores theta. Throws BadParams.
BipartiteState build_alt_state(const std::vector<double>& p, double theta, int d);

AltDecomposition qutrit_alt_decomposition(const BipartiteState& state);

// Dispatches on the state dimension (2 or 3).
AltDecomposition alt_decomposition(const BipartiteState& state);

struct LocalUnitaryMap {
    UnitaryMatrix U_A;
    UnitaryMatrix U_B;
    double gamma = 0.0;     // global phase, radians
    double residual = 0.0;  // ||U_A A U_B^T - e^{i gamma} A_target||_max
    bool degenerate = false;
    bool refined = false;
};

/// Local unitaries taking `source` onto `target` (up to a global phase),
/// composed from the two Schmidt decompositions. On a degenerate spectrum the
/// map is refined by alternating unitary Procrustes steps (<= 500 sweeps).
///
/// Throws DimensionMismatch, InvariantMismatch (Schmidt spectra differ by
/// more than 1e-8), or RefinementFailedError (degenerate case still above
/// 1e-6 after refinement).
LocalUnitaryMap find_local_unitaries(const BipartiteState& source, const BipartiteState& target);

}  // namespace luinv
