#include "luinv/state.hpp"

#include "luinv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

namespace luinv {

namespace {

const CMatrix& checked(const CMatrix& a, double tol, int expected_d) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorKind::BadShape, "amplitude matrix is " + std::to_string(a.rows()) + "x" +
                                             std::to_string(a.cols()) + ", expected square");
    }
    if (a.rows() < 2) {
        throw Error(ErrorKind::BadShape, "dimension d must be >= 2");
    }
    if (expected_d >= 0 && a.rows() != expected_d) {
        throw Error(ErrorKind::BadShape, "declared d = " + std::to_string(expected_d) +
                                             " but amplitude matrix has " +
                                             std::to_string(a.rows()) + " rows");
    }
    if (!a.allFinite()) {
        throw Error(ErrorKind::BadParams, "amplitudes contain non-finite values");
    }
    const double norm2 = a.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "sum |a_ij|^2 = %.17g differs from 1", norm2);
        throw Error(ErrorKind::NotNormalized, buf);
    }
    return a;
}

}  // namespace

BipartiteState make_state(int d, const CMatrix& amplitudes) {
    if (d < 2) throw Error(ErrorKind::BadShape, "dimension d must be >= 2");
    return BipartiteState(checked(amplitudes, kIngestNormTol, d));
}

BipartiteState make_state_strict(const CMatrix& amplitudes) {
    return BipartiteState(checked(amplitudes, kInternalNormTol, -1));
}

double unitarity_defect(const CMatrix& u) {
    const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
    return (u * u.adjoint() - id).cwiseAbs().maxCoeff();
}

UnitaryMatrix::UnitaryMatrix(CMatrix u) : u_(std::move(u)) {
    if (u_.rows() != u_.cols() || u_.rows() == 0) {
        throw Error(ErrorKind::BadShape, "unitary must be a non-empty square matrix");
    }
    const double defect = unitarity_defect(u_);
    if (!(defect <= kUnitaryTol)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "||U U^dag - 1||_max = %.3g exceeds 1e-10", defect);
        throw Error(ErrorKind::BadParams, buf);
    }
}

UnitaryMatrix UnitaryMatrix::identity(int d) { return UnitaryMatrix(CMatrix::Identity(d, d)); }

SchmidtVector::SchmidtVector(RVector kappa, double norm_tol) : kappa_(std::move(kappa)) {
    if (kappa_.size() < 1) throw Error(ErrorKind::BadParams, "empty Schmidt vector");
    for (Eigen::Index j = 0; j < kappa_.size(); ++j) {
        if (!(kappa_(j) >= 0.0)) throw Error(ErrorKind::BadParams, "negative Schmidt coefficient");
        if (j > 0 && kappa_(j) > kappa_(j - 1)) {
            throw Error(ErrorKind::BadParams, "Schmidt coefficients not sorted descending");
        }
    }
    if (std::abs(kappa_.squaredNorm() - 1.0) > norm_tol) {
        throw Error(ErrorKind::NotNormalized, "sum kappa_j^2 differs from 1");
    }
}

SchmidtVector SchmidtVector::from_squares(const RVector& lambda) {
    std::vector<double> v(lambda.data(), lambda.data() + lambda.size());
    for (double& x : v) {
        if (x < 0.0) throw Error(ErrorKind::BadParams, "negative squared Schmidt coefficient");
        x = std::sqrt(x);
    }
    std::sort(v.begin(), v.end(), std::greater<>());
    return SchmidtVector(Eigen::Map<RVector>(v.data(), static_cast<Eigen::Index>(v.size())));
}

BipartiteState diagonal_state(const SchmidtVector& kappa) {
    return make_state_strict(kappa.kappa().cast<Complex>().asDiagonal().toDenseMatrix());
}

CMatrix reduced_density_A(const BipartiteState& state) {
    const CMatrix& a = state.amplitudes();
    return a * a.adjoint();
}

BipartiteState apply_local_unitaries(const BipartiteState& state, const UnitaryMatrix& ua,
                                     const UnitaryMatrix& ub) {
    if (ua.dim() != state.dim() || ub.dim() != state.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "unitary and state dimensions differ");
    }
    // Unitaries are only accepted to 1e-10, so the result is checked at the
    // ingestion tolerance.
    CMatrix out = ua.matrix() * state.amplitudes() * ub.matrix().transpose();
    return make_state(state.dim(), out);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(master) ^ (index * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL));
}

namespace {

CMatrix ginibre(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

}  // namespace

BipartiteState random_haar_state(int d, std::uint64_t seed) {
    if (d < 2) throw Error(ErrorKind::BadShape, "dimension d must be >= 2");
    std::mt19937_64 rng(seed);
    CMatrix g = ginibre(d, rng);
    g /= g.norm();
    return make_state_strict(g);
}

UnitaryMatrix random_unitary(int d, std::uint64_t seed) {
    if (d < 1) throw Error(ErrorKind::BadShape, "dimension d must be >= 1");
    std::mt19937_64 rng(seed);
    const CMatrix g = ginibre(d, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return UnitaryMatrix(std::move(q));
}

SchmidtVector random_schmidt_vector(int d, std::uint64_t seed) {
    if (d < 2) throw Error(ErrorKind::BadShape, "dimension d must be >= 2");
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    RVector lambda(d);
    for (int j = 0; j < d; ++j) lambda(j) = expo(rng);
    lambda /= lambda.sum();
    return SchmidtVector::from_squares(lambda);
}

}  // namespace luinv
