#include "luinv/canonical.hpp"

#include "luinv/errors.hpp"
#include "luinv/extremal.hpp"
#include "luinv/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace luinv {

namespace {

constexpr double kSpectrumTol = 1e-8;
constexpr double kFeasibilityTol = 1e-9;
constexpr double kBisectionTol = 1e-12;
constexpr double kSnapTol = 1e-15;
constexpr int kBisectionMaxIter = 200;
constexpr double kSolveTol = 1e-10;
constexpr double kRoundTripTol = 1e-9;
constexpr int kRefineMaxSweeps = 500;
constexpr double kRefineAccept = 1e-6;

std::string fmt(const char* format, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, format, a, b);
    return buf;
}

CMatrix polar_unitary(const CMatrix& m) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

struct PhaseResidual {
    double gamma;
    double residual;
};

// gamma from the largest-magnitude entry of the target.
PhaseResidual phase_residual(const CMatrix& mapped, const CMatrix& target) {
    Eigen::Index i = 0, j = 0;
    target.cwiseAbs().maxCoeff(&i, &j);
    const double gamma = std::arg(mapped(i, j) * std::conj(target(i, j)));
    const CMatrix diff = mapped - std::polar(1.0, gamma) * target;
    return {gamma, diff.cwiseAbs().maxCoeff()};
}

}  // namespace

double solve_p1_qubit(const InvariantSet& inv) {
    if (inv.d != 2) throw Error(ErrorKind::BadParams, "solve_p1_qubit needs d = 2 invariants");
    const double x = 2.0 * (inv.I[0] - inv.I[1]);
    if (!(x >= -1e-10 && x <= 1.0 + 1e-10)) {
        throw Error(ErrorKind::OutOfRange, fmt("2(I0 - I1) = %.17g outside [0, 1]", x));
    }
    return std::pow(std::clamp(x, 0.0, 1.0), 0.25);
}

AltDecomposition qubit_alt_decomposition(const BipartiteState& state) {
    if (state.dim() != 2) throw Error(ErrorKind::BadParams, "qubit decomposition needs d = 2");
    const double p1 = solve_p1_qubit(compute_invariants(state));
    const double p2 = std::sqrt(std::max(0.0, 1.0 - p1 * p1));
    std::vector<double> p{p1, p2};
    return AltDecomposition{2, p, 0.0, build_alt_state(p, 0.0, 2)};
}

double solve_p1_qutrit(double K) { return std::pow(27.0 * clamp_k(K), 1.0 / 6.0); }

P2Theta solve_p2_theta(double p1, double target_I1) {
    const ExtremalBounds bounds = p_form_bounds_for_p1(p1);
    p1 = bounds.p1;
    if (target_I1 < bounds.I1_min - kFeasibilityTol || target_I1 > bounds.I1_max + kFeasibilityTol) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "I1 = %.17g outside [%.17g, %.17g] for p1 = %.17g", target_I1,
                      bounds.I1_min, bounds.I1_max, p1);
        throw Error(ErrorKind::Infeasible, buf);
    }
    const double target = std::clamp(target_I1, bounds.I1_min, bounds.I1_max);
    const double r2 = std::max(0.0, 1.0 - p1 * p1);
    const double r = std::sqrt(r2);

    const double f0 = p_form_I1(p1, 0.0, 1.0);
    const bool upper = target >= f0;
    const double cos_theta = upper ? 1.0 : -1.0;
    const double hi_arg = upper ? p_form_max_argument(p1) : p_form_min_argument(p1);
    const double hi = std::clamp(hi_arg, 0.0, r);
    // Signed so that g is increasing on [0, hi] in both branches.
    auto g = [&](double p3) {
        const double v = p_form_I1(p1, p3, cos_theta) - target;
        return upper ? v : -v;
    };

    double p3 = 0.0;
    if (g(0.0) >= 0.0) {
        p3 = 0.0;
    } else if (g(hi) <= kSnapTol) {
        // I1 is flat at the extremum, so bisection would only pin p3 to ~1e-8 here.
        p3 = hi;
    } else {
        double a = 0.0, b = hi;
        int it = 0;
        for (; it < kBisectionMaxIter && b - a > kBisectionTol; ++it) {
            const double m = 0.5 * (a + b);
            (g(m) < 0.0 ? a : b) = m;
        }
        p3 = 0.5 * (a + b);
    }
    const double miss = std::abs(p_form_I1(p1, p3, cos_theta) - target);
    if (miss > kSolveTol) {
        throw Error(ErrorKind::NoConvergence, fmt("bisection missed I1 by %.3g (p3 = %.17g)", miss, p3));
    }
    P2Theta out;
    out.p3 = p3;
    out.p2 = std::sqrt(std::max(0.0, r2 - p3 * p3));
    out.theta = upper ? 0.0 : std::numbers::pi;
    return out;
}

BipartiteState build_alt_state(const std::vector<double>& p, double theta, int d) {
    if (d != 2 && d != 3) throw Error(ErrorKind::BadParams, "canonical forms exist for d = 2, 3");
    if (static_cast<int>(p.size()) != d) {
        throw Error(ErrorKind::BadParams, "expected " + std::to_string(d) + " weights");
    }
    double norm2 = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) throw Error(ErrorKind::BadParams, "weights must be non-negative");
        norm2 += x * x;
    }
    if (std::abs(norm2 - 1.0) > 1e-10) throw Error(ErrorKind::BadParams, "sum p_i^2 must equal 1");

    CMatrix a = CMatrix::Zero(d, d);
    if (d == 2) {
        const double diag = p[0] / std::sqrt(2.0);
        a(0, 0) = diag;
        a(1, 1) = diag;
        a(0, 1) = p[1];
    } else {
        const double diag = p[0] / std::sqrt(3.0);
        const double super = p[1] / std::sqrt(2.0);
        for (int i = 0; i < 3; ++i) a(i, i) = diag;
        a(0, 1) = super;
        a(1, 2) = super;
        a(0, 2) = std::polar(p[2], theta);
    }
    return make_state(d, a);
}

AltDecomposition qutrit_alt_decomposition(const BipartiteState& state) {
    if (state.dim() != 3) throw Error(ErrorKind::BadParams, "qutrit decomposition needs d = 3");
    const InvariantSet inv = compute_invariants(state);
    const double p1 = solve_p1_qutrit(inv.qutrit->K);
    const P2Theta sol = solve_p2_theta(p1, inv.I[1]);
    std::vector<double> p{p1, sol.p2, sol.p3};
    BipartiteState canonical = build_alt_state(p, sol.theta, 3);

    const InvariantSet check = compute_invariants(canonical);
    for (int n = 1; n <= 2; ++n) {
        const auto k = static_cast<std::size_t>(n);
        const double dev = std::abs(check.I[k] - inv.I[k]);
        if (dev > kRoundTripTol) {
            throw Error(ErrorKind::NumericalFailure,
                        "canonical state misses I_" + std::to_string(n) + fmt(" by %.3g", dev));
        }
    }
    return AltDecomposition{3, std::move(p), sol.theta, std::move(canonical)};
}

AltDecomposition alt_decomposition(const BipartiteState& state) {
    switch (state.dim()) {
        case 2: return qubit_alt_decomposition(state);
        case 3: return qutrit_alt_decomposition(state);
        default:
            throw Error(ErrorKind::BadParams,
                        "alternative decomposition is implemented for d = 2 and d = 3 only");
    }
}

LocalUnitaryMap find_local_unitaries(const BipartiteState& source, const BipartiteState& target) {
    if (source.dim() != target.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "source and target dimensions differ");
    }
    const SchmidtDecomposition ds = schmidt_decompose(source);
    const SchmidtDecomposition dt = schmidt_decompose(target);
    const RVector& ks = ds.kappa.kappa();
    const double spectrum_gap = (ks - dt.kappa.kappa()).cwiseAbs().maxCoeff();
    if (spectrum_gap > kSpectrumTol) {
        throw Error(ErrorKind::InvariantMismatch,
                    fmt("Schmidt spectra differ by %.3g; states are not LU-equivalent", spectrum_gap));
    }

    // Both decompositions map onto (nearly) the same diag(kappa), so
    // U_A = Ut_A^dag Us_A and U_B = Ut_B^dag Us_B.
    CMatrix ua = dt.U_A.matrix().adjoint() * ds.U_A.matrix();
    CMatrix ub = dt.U_B.matrix().adjoint() * ds.U_B.matrix();
    const CMatrix& as = source.amplitudes();
    const CMatrix& at = target.amplitudes();

    bool degenerate = false;
    for (Eigen::Index j = 1; j < ks.size(); ++j) {
        if (ks(j - 1) - ks(j) <= kSpectrumTol) degenerate = true;
    }

    PhaseResidual best = phase_residual(ua * as * ub.transpose(), at);
    bool refined = false;
    if (degenerate && best.residual > 1e-12) {
        refined = true;
        CMatrix ra = ua, rb = ub;
        double prev = best.residual;
        for (int sweep = 0; sweep < kRefineMaxSweeps; ++sweep) {
            ra = polar_unitary(at * (as * rb.transpose()).adjoint());
            rb = polar_unitary((ra * as).adjoint() * at).transpose();
            const PhaseResidual cur = phase_residual(ra * as * rb.transpose(), at);
            if (cur.residual < best.residual) {
                best = cur;
                ua = ra;
                ub = rb;
            }
            if (best.residual <= 1e-13 || prev - cur.residual <= 1e-16) break;
            prev = cur.residual;
        }
        if (best.residual > kRefineAccept) {
            throw RefinementFailedError(
                fmt("degenerate spectrum: residual %.3g after refinement exceeds 1e-6", best.residual),
                best.residual);
        }
    }
    return LocalUnitaryMap{UnitaryMatrix(std::move(ua)), UnitaryMatrix(std::move(ub)), best.gamma,
                           best.residual, degenerate, refined};
}

}  // namespace luinv
