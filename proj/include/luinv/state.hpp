// state.hpp: bipartite pure states, local unitaries, reduced density matrices
// and seeded random sampling.
//
// Amplitude-matrix convention: entry (i, j) of A is the coefficient of
// |i>_A |j>_B. Acting with U_A (x) U_B maps A to U_A * A * U_B^T.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace luinv {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kIngestNormTol = 1e-9;
inline constexpr double kInternalNormTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;

class BipartiteState {
public:
    int dim() const noexcept { return static_cast<int>(amplitudes_.rows()); }
    const CMatrix& amplitudes() const noexcept { return amplitudes_; }

    friend BipartiteState make_state(int d, const CMatrix& amplitudes);
    friend BipartiteState make_state_strict(const CMatrix& amplitudes);

private:
    explicit BipartiteState(CMatrix a) : amplitudes_(std::move(a)) {}
    CMatrix amplitudes_;
};

// Validates shape (square, d >= 2, rows == d) and normalization within
// kIngestNormTol. Never renormalizes.
BipartiteState make_state(int d, const CMatrix& amplitudes);

// Same checks with the internal tolerance kInternalNormTol; used for states
// produced by the library itself.
BipartiteState make_state_strict(const CMatrix& amplitudes);

class UnitaryMatrix {
public:
    // Throws BadShape if non-square, BadParams if ||U U^dag - 1||_max > kUnitaryTol.
    explicit UnitaryMatrix(CMatrix u);

    static UnitaryMatrix identity(int d);

    int dim() const noexcept { return static_cast<int>(u_.rows()); }
    const CMatrix& matrix() const noexcept { return u_; }

private:
    CMatrix u_;
};

// ||U U^dag - 1||_max
double unitarity_defect(const CMatrix& u);

// Schmidt coefficients, non-negative and sorted descending, sum of squares 1.
class SchmidtVector {
public:
    // Throws BadParams / NotNormalized when an invariant fails. The default
    // tolerance is the internal one; decompositions of ingested states pass
    // kIngestNormTol.
    explicit SchmidtVector(RVector kappa, double norm_tol = kInternalNormTol);

    // Builds from squared coefficients lambda_j = kappa_j^2 (any order).
    static SchmidtVector from_squares(const RVector& lambda);

    int dim() const noexcept { return static_cast<int>(kappa_.size()); }
    const RVector& kappa() const noexcept { return kappa_; }
    RVector squares() const { return kappa_.array().square(); }

private:
    RVector kappa_;
};

// The state sum_j kappa_j |jj>.
BipartiteState diagonal_state(const SchmidtVector& kappa);

// rho_A = A A^dag
CMatrix reduced_density_A(const BipartiteState& state);

BipartiteState apply_local_unitaries(const BipartiteState& state, const UnitaryMatrix& ua,
                                     const UnitaryMatrix& ub);

// Seed of the index-th object drawn under a master seed (splitmix64 mix).
// Serial and parallel sampling both use it, so the outputs agree.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

// I.i.d. standard complex Gaussian amplitudes, normalized.
BipartiteState random_haar_state(int d, std::uint64_t seed);

// Haar unitary via QR of a complex Ginibre matrix with the R-diagonal phase fixed.
UnitaryMatrix random_unitary(int d, std::uint64_t seed);

// kappa^2 uniform on the probability simplex (normalized exponentials), sorted.
SchmidtVector random_schmidt_vector(int d, std::uint64_t seed);

}  // namespace luinv
