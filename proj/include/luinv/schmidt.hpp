// schmidt.hpp: Schmidt decomposition with explicit local unitaries.

#pragma once

#include "luinv/state.hpp"

namespace luinv {

/// Schmidt form of a state: U_A * A * U_B^T = diag(kappa).
struct SchmidtDecomposition {
    SchmidtVector kappa;
    UnitaryMatrix U_A;
    UnitaryMatrix U_B;
};

/// Complex SVD A = U S V^dag, returned as U_A = U^dag, U_B = V^T.
///
/// Conventions, so repeated calls and composed decompositions are reproducible:
///  - singular values descending; values below 1e-12 are set to exactly 0;
///  - each left singular vector has its largest-magnitude entry (first such
///    index) real positive, the compensating phase moved into the right vector;
///  - within a cluster of singular values equal to 1e-10, pairs are ordered by
///    their left vectors, descending lexicographically on entries rounded to
///    1e-9 (real part, then imaginary part).
///
/// Throws NumericalFailure if the SVD does not converge or yields non-finite
/// values.
SchmidtDecomposition schmidt_decompose(const BipartiteState& state);

/// ||U_A A U_B^T - diag(kappa)||_max. Throws DimensionMismatch.
double schmidt_residual(const BipartiteState& state, const SchmidtDecomposition& dec);

}  // namespace luinv
