#include "luinv/explorer.hpp"

#include "luinv/errors.hpp"
#include "luinv/extremal.hpp"
#include "luinv/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace luinv {

RegionSample region_point(const SchmidtVector& kappa) {
    if (kappa.dim() != 3) throw Error(ErrorKind::BadParams, "region points need d = 3");
    const InvariantSet inv = invariants_from_schmidt(kappa);
    return {inv.qutrit->I1_prime, inv.qutrit->I2_prime};
}

std::vector<RegionSample> sample_invariant_region(std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorKind::BadParams, "sample count must be >= 1");
    std::vector<RegionSample> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        out.push_back(region_point(random_schmidt_vector(3, derive_seed(seed, static_cast<std::uint64_t>(i)))));
    }
    return out;
}

bool region_contains(const RegionSample& s, double slack) {
    const double I1 = 1.0 - s.I1_prime / 1.5;
    const double I2 = 1.0 - s.I2_prime / 1.125;
    const double K = (I2 - 1.5 * I1 + 0.5) / 3.0;
    if (K < -slack || K > kKMax + slack) return false;
    const ExtremalBounds b = schmidt_bounds_for_K(std::clamp(K, 0.0, kKMax));
    return I1 >= b.I1_min - slack && I1 <= b.I1_max + slack;
}

namespace {

RegionSample point_from_squares(double a, double b, double c) {
    const double I1 = a * a + b * b + c * c;
    const double I2 = a * a * a + b * b * b + c * c * c;
    return {normalized_I1(I1), normalized_I2(I2)};
}

}  // namespace

RegionSample curved_edge_point(double u) {
    const double rest = 0.5 * (1.0 - u);
    return point_from_squares(u, rest, rest);
}

BoundaryCurves boundary_curves(int resolution) {
    if (resolution < 2) throw Error(ErrorKind::BadParams, "resolution must be >= 2");
    BoundaryCurves curves;
    for (int i = 0; i < resolution; ++i) {
        const double f = static_cast<double>(i) / (resolution - 1);
        const double s = 1.0 - 0.5 * f;
        curves.straight_edge.push_back(point_from_squares(s, 1.0 - s, 0.0));
        curves.curved_edge.push_back(curved_edge_point(f));
    }
    return curves;
}

void write_region_csv(std::ostream& out, const std::vector<RegionSample>& samples) {
    out << "I1_prime,I2_prime\n";
    char buf[64];
    for (const RegionSample& s : samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.I1_prime, s.I2_prime);
        out << buf;
    }
}

std::vector<RegionSample> read_region_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "I1_prime,I2_prime") {
        throw Error(ErrorKind::IoError, path.string() + ": missing header I1_prime,I2_prime");
    }
    std::vector<RegionSample> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const char* begin = line.c_str();
        char* end = nullptr;
        RegionSample s;
        s.I1_prime = std::strtod(begin, &end);
        if (end == begin || *end != ',') {
            throw Error(ErrorKind::IoError, path.string() + ": malformed line " + std::to_string(lineno));
        }
        const char* second = end + 1;
        s.I2_prime = std::strtod(second, &end);
        if (end == second || *end != '\0') {
            throw Error(ErrorKind::IoError, path.string() + ": malformed line " + std::to_string(lineno));
        }
        out.push_back(s);
    }
    return out;
}

namespace {

constexpr double kCanvas = 640.0;
constexpr double kMargin = 60.0;
constexpr double kSpan = 1.05;

double sx(double v) { return kMargin + v / kSpan * (kCanvas - 2.0 * kMargin); }
double sy(double v) { return kCanvas - kMargin - v / kSpan * (kCanvas - 2.0 * kMargin); }

void polyline(std::ostream& out, const std::vector<RegionSample>& pts, const char* colour) {
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    char buf[48];
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", i ? " " : "", sx(pts[i].I1_prime), sy(pts[i].I2_prime));
        out << buf;
    }
    out << "\"/>\n";
}

}  // namespace

void render_region_svg(std::ostream& out, const std::vector<RegionSample>& samples,
                       const BoundaryCurves& curves) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.0f %.0f\">\n",
                  kCanvas, kCanvas, kCanvas, kCanvas);
    out << buf;
    out << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<path d=\"M%.3f,%.3f L%.3f,%.3f M%.3f,%.3f L%.3f,%.3f\" stroke=\"black\"/>\n", sx(0),
                  sy(0), sx(kSpan), sy(0), sx(0), sy(0), sx(0), sy(kSpan));
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.3f\" y=\"%.3f\" font-size=\"14\" text-anchor=\"middle\">I'1</text>\n",
                  sx(0.5), kCanvas - 20.0);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"20\" y=\"%.3f\" font-size=\"14\" text-anchor=\"middle\">I'2</text>\n", sy(0.5));
    out << buf;

    out << "<g fill=\"#d62728\" fill-opacity=\"0.5\">\n";
    for (const RegionSample& s : samples) {
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"0.8\"/>\n", sx(s.I1_prime),
                      sy(s.I2_prime));
        out << buf;
    }
    out << "</g>\n";
    polyline(out, curves.straight_edge, "#1f77b4");
    polyline(out, curves.curved_edge, "#2ca02c");

    const std::array<std::pair<const char*, RegionSample>, 3> vertices{
        {{"O", kVertexO}, {"B", kVertexB}, {"G", kVertexG}}};
    for (const auto& [label, v] : vertices) {
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.3f\" y=\"%.3f\" width=\"6\" height=\"6\" fill=\"black\"/>\n"
                      "<text x=\"%.3f\" y=\"%.3f\" font-size=\"14\">%s</text>\n",
                      sx(v.I1_prime) - 3.0, sy(v.I2_prime) - 3.0, sx(v.I1_prime) + 6.0,
                      sy(v.I2_prime) - 6.0, label);
        out << buf;
    }
    out << "</svg>\n";
}

void emit_region_plot(const std::filesystem::path& samples_csv, const BoundaryCurves& curves,
                      const std::filesystem::path& out_path) {
    const std::vector<RegionSample> samples = read_region_csv(samples_csv);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + out_path.string());
    render_region_svg(out, samples, curves);
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + out_path.string());
}

int ansatz_free_phase_count(int d) { return (d - 1) * (d - 2) / 2; }

namespace {

void validate_ansatz(const QuditAnsatz& a) {
    if (a.d < 2) throw Error(ErrorKind::BadParams, "ansatz dimension must be >= 2");
    if (static_cast<int>(a.p.size()) != a.d) {
        throw Error(ErrorKind::BadParams, "ansatz needs " + std::to_string(a.d) + " weights");
    }
    if (static_cast<int>(a.free_phases.size()) != ansatz_free_phase_count(a.d)) {
        throw Error(ErrorKind::BadParams, "ansatz needs " + std::to_string(ansatz_free_phase_count(a.d)) +
                                              " free phases");
    }
    double norm2 = 0.0;
    for (double x : a.p) {
        if (!(x >= 0.0)) throw Error(ErrorKind::BadParams, "ansatz weights must be non-negative");
        norm2 += x * x;
    }
    if (std::abs(norm2 - 1.0) > 1e-10) throw Error(ErrorKind::BadParams, "sum p_i^2 must equal 1");
}

// Fills the amplitude matrix of the ansatz; `phase(M, m)` yields theta^M_m.
template <typename Matrix, typename Phase>
void fill_ansatz(Matrix& a, int d, const double* p, Phase&& phase) {
    a.setZero();
    for (int block = 1; block <= d; ++block) {
        const double weight = p[d - block] / std::sqrt(static_cast<double>(block));
        for (int m = 0; m < block; ++m) {
            a(m, d - block + m) += std::polar(weight, phase(block, m));
        }
    }
}

}  // namespace

BipartiteState ansatz_state(const QuditAnsatz& a) {
    validate_ansatz(a);
    CMatrix amp(a.d, a.d);
    fill_ansatz(amp, a.d, a.p.data(), [&](int block, int m) {
        if (block >= a.d - 1) return 0.0;
        // Blocks 1 .. block-1 hold 1 + 2 + ... + (block-1) phases.
        return a.free_phases[static_cast<std::size_t>(block * (block - 1) / 2 + m)];
    });
    return make_state(a.d, amp);
}

InvariantSet invariants_of_ansatz(const QuditAnsatz& a) { return compute_invariants(ansatz_state(a)); }

namespace {

using Mat4 = Eigen::Matrix<Complex, 4, 4>;
using std::numbers::pi;

constexpr int kNmBudget = 3000;
constexpr double kLmResidualTol = 1e-14;

struct D4Problem {
    Eigen::Vector3d target;
    double pinned_p1 = -1.0;  // < 0: p1 is free

    std::array<double, 4> weights(const Eigen::VectorXd& x, int& next) const {
        std::array<double, 4> p{};
        double r = 1.0;
        if (pinned_p1 < 0.0) {
            p[0] = std::abs(std::cos(x(0)));
            r = std::sin(x(0));
            next = 1;
        } else {
            p[0] = pinned_p1;
            r = std::sqrt(std::max(0.0, 1.0 - pinned_p1 * pinned_p1));
            next = 0;
        }
        const double b = x(next), c = x(next + 1);
        p[1] = std::abs(r * std::cos(b));
        p[2] = std::abs(r * std::sin(b) * std::cos(c));
        p[3] = std::abs(r * std::sin(b) * std::sin(c));
        next += 2;
        return p;
    }

    QuditAnsatz ansatz(const Eigen::VectorXd& x) const {
        int next = 0;
        const std::array<double, 4> p = weights(x, next);
        QuditAnsatz a{4, {p.begin(), p.end()}, {x(next), x(next + 1), x(next + 2)}};
        // Remove the O(1e-16) normalization drift of the angle parameterization.
        double n = 0.0;
        for (double v : a.p) n += v * v;
        for (double& v : a.p) v /= std::sqrt(n);
        return a;
    }

    Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
        int next = 0;
        const std::array<double, 4> p = weights(x, next);
        const std::array<double, 3> phases{x(next), x(next + 1), x(next + 2)};
        Mat4 a;
        fill_ansatz(a, 4, p.data(), [&](int block, int m) {
            return block >= 3 ? 0.0 : phases[static_cast<std::size_t>(block * (block - 1) / 2 + m)];
        });
        const Mat4 rho = a * a.adjoint();
        const Mat4 rho2 = rho * rho;
        Eigen::VectorXd out(3);
        out(0) = rho.squaredNorm();
        out(1) = (rho2.cwiseProduct(rho.transpose())).sum().real();
        out(2) = rho2.squaredNorm();
        return out - target;
    }

    int dim() const { return pinned_p1 < 0.0 ? 6 : 5; }
};

Eigen::VectorXd random_start(const D4Problem& prob, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, pi / 2.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
    Eigen::VectorXd x(prob.dim());
    const int n_angles = prob.dim() - 3;
    for (int k = 0; k < n_angles; ++k) x(k) = angle(rng);
    for (int k = n_angles; k < prob.dim(); ++k) x(k) = phase(rng);
    return x;
}

struct RunResult {
    Eigen::VectorXd x;
    double residual;
};

RunResult run_stage(const D4Problem& prob, std::uint64_t seed, double tol, int starts,
                    RunResult best) {
    std::mt19937_64 rng(seed);
    auto cost = [&](const Eigen::VectorXd& x) { return prob.residual(x).squaredNorm(); };
    auto res = [&](const Eigen::VectorXd& x) { return prob.residual(x); };
    NelderMeadOptions nm;
    nm.max_evaluations = kNmBudget;
    nm.initial_step = 0.3;
    nm.f_target = 1e-24;
    nm.x_tol = 1e-10;
    LevenbergMarquardtOptions lm;
    lm.residual_tol = kLmResidualTol;
    for (int s = 0; s < starts && best.residual > tol; ++s) {
        const MinimizeResult coarse = nelder_mead(cost, random_start(prob, rng), nm);
        const MinimizeResult fine = levenberg_marquardt(res, coarse.x, lm);
        const double r = prob.residual(fine.x).cwiseAbs().maxCoeff();
        if (r < best.residual) best = {fine.x, r};
    }
    return best;
}

}  // namespace

D4Solution solve_d4_target(const SchmidtVector& kappa, std::uint64_t seed, double tol, int starts) {
    if (kappa.dim() != 4) throw Error(ErrorKind::BadParams, "d = 4 Schmidt vector required");
    if (!(tol > 0.0)) throw Error(ErrorKind::BadParams, "tolerance must be positive");
    const InvariantSet inv = invariants_from_schmidt(kappa);

    D4Problem free_prob;
    free_prob.target = Eigen::Vector3d(inv.I[1], inv.I[2], inv.I[3]);
    RunResult best{Eigen::VectorXd::Zero(6), std::numeric_limits<double>::infinity()};
    best = run_stage(free_prob, derive_seed(seed, 0), tol, starts, best);
    D4Solution sol{free_prob.ansatz(best.x), best.residual, false};
    if (best.residual <= tol) return sol;

    D4Problem pinned = free_prob;
    const double det = kappa.squares().prod();
    pinned.pinned_p1 = std::min(1.0, 2.0 * std::pow(det, 0.125));
    RunResult retry{Eigen::VectorXd::Zero(5), std::numeric_limits<double>::infinity()};
    retry = run_stage(pinned, derive_seed(seed, 1), tol, starts, retry);
    if (retry.residual < sol.residual) sol = {pinned.ansatz(retry.x), retry.residual, true};
    return sol;
}

D4Report verify_d4_conjecture(std::int64_t n_samples, std::uint64_t seed, double tol) {
    if (n_samples < 1) throw Error(ErrorKind::BadParams, "sample count must be >= 1");
    if (!(tol > 0.0)) throw Error(ErrorKind::BadParams, "tolerance must be positive");
    D4Report rep;
    rep.samples = n_samples;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        const std::uint64_t target_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
        const SchmidtVector kappa = random_schmidt_vector(4, target_seed);
        const D4Solution sol = solve_d4_target(kappa, derive_seed(target_seed, 0x5eed), tol);
        rep.worst_residual = std::max(rep.worst_residual, sol.residual);
        if (sol.residual <= tol) {
            ++rep.success_count;
            if (sol.retried) ++rep.solved_in_retry;
            const double p1 = sol.ansatz.p[0];
            const double lhs = std::pow(p1, 8.0);
            rep.max_det_identity_dev =
                std::max(rep.max_det_identity_dev, std::abs(lhs - 256.0 * kappa.squares().prod()));
        } else {
            const RVector& k = kappa.kappa();
            rep.failures.push_back({i, {k.data(), k.data() + k.size()}, sol.residual});
        }
    }
    return rep;
}

}  // namespace luinv
