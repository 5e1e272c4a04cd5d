#include "luinv/invariants.hpp"

#include "luinv/errors.hpp"

#include <cmath>
#include <cstdio>

namespace luinv {

namespace {

constexpr double kKClampTol = 1e-12;
constexpr double kKConsistencyTol = 1e-8;

void fill_qutrit_extras(InvariantSet& inv) {
    if (inv.d != 3) return;
    const double I0 = inv.I[0], I1 = inv.I[1], I2 = inv.I[2];
    inv.qutrit = QutritExtras{normalized_I1(I1), normalized_I2(I2), k_from_invariants(I0, I1, I2)};
}

}  // namespace

double k_from_invariants(double I0, double I1, double I2) {
    const double k = (I2 - 1.5 * I1 + 0.5 * I0) / 3.0;
    return std::abs(k) <= kKClampTol ? 0.0 : k;
}

InvariantSet compute_invariants(const BipartiteState& state) {
    const CMatrix rho = reduced_density_A(state);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NumericalFailure, "Hermitian eigensolve of rho_A failed");
    }
    // rho_A is PSD; round-off can leave eigenvalues of order -1e-17.
    const RVector lambda = solver.eigenvalues().cwiseMax(0.0);

    InvariantSet inv;
    inv.d = state.dim();
    inv.I.resize(static_cast<std::size_t>(inv.d));
    RVector power = lambda;
    for (int n = 0; n < inv.d; ++n) {
        inv.I[static_cast<std::size_t>(n)] = power.sum();
        power = power.cwiseProduct(lambda);
    }
    fill_qutrit_extras(inv);
    if (inv.qutrit) {
        const double det = rho.determinant().real();
        if (std::abs(inv.qutrit->K - det) > kKConsistencyTol) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "K from invariants (%.3g) and Det rho_A (%.3g) disagree",
                          inv.qutrit->K, det);
            throw Error(ErrorKind::KInconsistent, buf);
        }
    }
    return inv;
}

std::vector<double> trace_power_invariants(const BipartiteState& state) {
    const CMatrix rho = reduced_density_A(state);
    std::vector<double> out;
    CMatrix power = rho;
    for (int n = 0; n < state.dim(); ++n) {
        out.push_back(power.trace().real());
        power = power * rho;
    }
    return out;
}

InvariantSet invariants_from_schmidt(const SchmidtVector& kappa) {
    const RVector lambda = kappa.squares();
    InvariantSet inv;
    inv.d = kappa.dim();
    RVector power = lambda;
    for (int n = 0; n < inv.d; ++n) {
        inv.I.push_back(power.sum());
        power = power.cwiseProduct(lambda);
    }
    fill_qutrit_extras(inv);
    return inv;
}

std::array<double, 3> invariants_from_alt_params(double p1, double p2, double p3, double theta) {
    if (!(p1 >= 0.0 && p2 >= 0.0 && p3 >= 0.0)) {
        throw Error(ErrorKind::BadParams, "alternative-decomposition weights must be non-negative");
    }
    if (std::abs(p1 * p1 + p2 * p2 + p3 * p3 - 1.0) > 1e-10) {
        throw Error(ErrorKind::BadParams, "p1^2 + p2^2 + p3^2 must equal 1");
    }
    const double sqrt3 = std::sqrt(3.0);
    const double p1sq = p1 * p1;
    const double p2sq = p2 * p2;
    const double p2q = p2sq * p2sq;
    const double cross = p1 * p2sq * p3 * std::cos(theta);
    const double I1 = 1.0 - (2.0 / 3.0) * p1sq - 0.5 * p2q + (2.0 / sqrt3) * cross;
    const double I2 = 1.0 - p1sq + p1sq * p1sq * p1sq / 9.0 - 0.75 * p2q + sqrt3 * cross;
    return {1.0, I1, I2};
}

}  // namespace luinv
