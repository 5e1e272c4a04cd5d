#include "luinv/schmidt.hpp"

#include "luinv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace luinv {

namespace {

constexpr double kZeroClamp = 1e-12;
constexpr double kTieTol = 1e-10;
constexpr double kRoundQuantum = 1e-9;

double rounded(double x) { return std::round(x / kRoundQuantum) * kRoundQuantum; }

// true if column a of u should precede column b (descending lexicographic).
bool column_precedes(const CMatrix& u, Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        const double ra = rounded(u(i, a).real()), rb = rounded(u(i, b).real());
        if (ra != rb) return ra > rb;
        const double ia = rounded(u(i, a).imag()), ib = rounded(u(i, b).imag());
        if (ia != ib) return ia > ib;
    }
    return a < b;
}

}  // namespace

SchmidtDecomposition schmidt_decompose(const BipartiteState& state) {
    const CMatrix& a = state.amplitudes();
    const Eigen::Index d = a.rows();
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) {
        throw Error(ErrorKind::NumericalFailure, "SVD of the amplitude matrix did not converge");
    }
    CMatrix u = svd.matrixU();
    CMatrix v = svd.matrixV();
    RVector s = svd.singularValues();
    if (!u.allFinite() || !v.allFinite() || !s.allFinite()) {
        throw Error(ErrorKind::NumericalFailure, "SVD produced non-finite values");
    }

    for (Eigen::Index j = 0; j < d; ++j) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < d; ++i) {
            const double mag = std::abs(u(i, j));
            if (mag > best + kRoundQuantum) {
                best = mag;
                imax = i;
            }
        }
        const Complex phase = std::conj(u(imax, j)) / std::abs(u(imax, j));
        u.col(j) *= phase;
        v.col(j) *= phase;
        u(imax, j) = Complex(u(imax, j).real(), 0.0);
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    // Sort by value first, then break ties inside clusters.
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return s(x) > s(y); });
    std::size_t begin = 0;
    while (begin < order.size()) {
        std::size_t end = begin + 1;
        while (end < order.size() && s(order[begin]) - s(order[end]) <= kTieTol) ++end;
        std::sort(order.begin() + static_cast<std::ptrdiff_t>(begin),
                  order.begin() + static_cast<std::ptrdiff_t>(end),
                  [&](Eigen::Index x, Eigen::Index y) { return column_precedes(u, x, y); });
        begin = end;
    }

    CMatrix us(d, d), vs(d, d);
    RVector kappa(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const Eigen::Index src = order[static_cast<std::size_t>(j)];
        us.col(j) = u.col(src);
        vs.col(j) = v.col(src);
        kappa(j) = s(src) < kZeroClamp ? 0.0 : s(src);
    }
    // Tie reordering can swap values differing by < kTieTol; restore monotonicity.
    for (Eigen::Index j = 1; j < d; ++j) kappa(j) = std::min(kappa(j), kappa(j - 1));

    return SchmidtDecomposition{SchmidtVector(std::move(kappa), kIngestNormTol), UnitaryMatrix(us.adjoint()),
                                UnitaryMatrix(vs.transpose())};
}

double schmidt_residual(const BipartiteState& state, const SchmidtDecomposition& dec) {
    const int d = state.dim();
    if (dec.U_A.dim() != d || dec.U_B.dim() != d || dec.kappa.dim() != d) {
        throw Error(ErrorKind::DimensionMismatch, "decomposition and state dimensions differ");
    }
    const CMatrix transformed = dec.U_A.matrix() * state.amplitudes() * dec.U_B.matrix().transpose();
    const CMatrix target = dec.kappa.kappa().cast<Complex>().asDiagonal().toDenseMatrix();
    return (transformed - target).cwiseAbs().maxCoeff();
}

}  // namespace luinv
