// explorer.hpp: the qutrit invariant region in (I'_1, I'_2) coordinates and the
// numerical coverage check of the nested-subspace ansatz for d = 4.

#pragma once

#include "luinv/invariants.hpp"
#include "luinv/state.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace luinv {

struct RegionSample {
    double I1_prime = 0.0;
    double I2_prime = 0.0;
};

// Vertices of the region: product state, subspace Bell state, full GHZ state.
inline constexpr RegionSample kVertexO{0.0, 0.0};
inline constexpr RegionSample kVertexB{0.75, 27.0 / 32.0};
inline constexpr RegionSample kVertexG{1.0, 1.0};

RegionSample region_point(const SchmidtVector& kappa);

/// n samples; sample i uses random_schmidt_vector(3, derive_seed(seed, i)).
std::vector<RegionSample> sample_invariant_region(std::int64_t n, std::uint64_t seed);

/// Point-in-region test along the fixed-K line through the sample: K must lie
/// in [0, 1/27] and I_1 in [I1_min(K), I1_max(K)], each with `slack`.
bool region_contains(const RegionSample& s, double slack = 1e-9);

struct BoundaryCurves {
    // K = 0 edge O-B: kappa^2 = (s, 1 - s, 0), s from 1 down to 1/2.
    std::vector<RegionSample> straight_edge;
    // kappa_1^2 = u in [0, 1], kappa_2^2 = kappa_3^2 = (1 - u)/2: B (u=0), G (u=1/3), O (u=1).
    std::vector<RegionSample> curved_edge;
};

// Point of the curved edge at kappa_1^2 = u.
RegionSample curved_edge_point(double u);

// resolution >= 2 points per edge; BadParams otherwise.
BoundaryCurves boundary_curves(int resolution);

// CSV with header "I1_prime,I2_prime" and 17 significant digits.
void write_region_csv(std::ostream& out, const std::vector<RegionSample>& samples);
std::vector<RegionSample> read_region_csv(const std::filesystem::path& path);

/// SVG scatter of the samples in a CSV file plus the boundary polylines and
/// labelled O/B/G markers. Each sample is one <circle> element; nothing else
/// in the image is a circle. Output is byte-deterministic. Throws IoError.
void emit_region_plot(const std::filesystem::path& samples_csv,
                      const BoundaryCurves& curves, const std::filesystem::path& out_path);

// Same rendering into a stream.
void render_region_svg(std::ostream& out, const std::vector<RegionSample>& samples,
                       const BoundaryCurves& curves);

/// Nested-subspace ansatz: block M = 1..d carries weight p_{d-M+1} and places
/// e^{i theta^M_m} / sqrt(M) at (m, d - M + m), m = 0..M-1. The phases of
/// blocks d and d-1 are fixed to 0; the remaining (d-1)(d-2)/2 phases are
/// listed block by block (M = 1, 2, ..., d-2), m ascending.
struct QuditAnsatz {
    int d = 4;
    std::vector<double> p;            // p_1 .. p_d
    std::vector<double> free_phases;  // size (d-1)(d-2)/2
};

int ansatz_free_phase_count(int d);

// Throws BadParams (d < 2, wrong sizes, negative p, sum p^2 != 1 within 1e-10).
BipartiteState ansatz_state(const QuditAnsatz& a);

InvariantSet invariants_of_ansatz(const QuditAnsatz& a);

struct D4Failure {
    std::int64_t index = 0;
    std::vector<double> kappa;
    double residual = 0.0;
};

struct D4Report {
    std::int64_t samples = 0;
    std::int64_t success_count = 0;
    std::int64_t solved_in_retry = 0;
    double worst_residual = 0.0;  // max over targets of the best residual found
    // max over solved targets of |p1^8 - 4^4 Det rho_A|; recorded, not asserted.
    double max_det_identity_dev = 0.0;
    std::vector<D4Failure> failures;  // sorted by index
};

struct D4Solution {
    QuditAnsatz ansatz;
    double residual = 0.0;  // max_n |I_n(ansatz) - I_n(target)|, n = 1..3
    bool retried = false;
};

/// Searches the ansatz for one matching the invariants of the d = 4 Schmidt
/// vector `kappa`. First stage: `starts` Nelder-Mead runs over the six free
/// parameters (three hyperspherical angles for p, three phases) from seeded
/// random points, each polished with Levenberg-Marquardt. If none reaches
/// `tol`, a retry stage of `starts` more runs pins p1 to the value forced by
/// Det of the upper-triangular ansatz, (p1/2)^8 = Det rho_A.
D4Solution solve_d4_target(const SchmidtVector& kappa, std::uint64_t seed, double tol,
                           int starts = 8);

/// Runs solve_d4_target on n_samples random Schmidt vectors, target i seeded by
/// derive_seed(seed, i).
D4Report verify_d4_conjecture(std::int64_t n_samples, std::uint64_t seed, double tol = 1e-8);

}  // namespace luinv
