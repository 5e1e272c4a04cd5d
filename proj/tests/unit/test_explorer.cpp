#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "luinv/errors.hpp"
#include "luinv/explorer.hpp"
#include "luinv/extremal.hpp"
#include "luinv/invariants.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace luinv;
namespace fs = std::filesystem;

namespace {

double dist(const RegionSample& a, const RegionSample& b) {
    return std::hypot(a.I1_prime - b.I1_prime, a.I2_prime - b.I2_prime);
}

RegionSample of_state(const CMatrix& a) {
    const InvariantSet inv = compute_invariants(make_state(3, a));
    return {inv.qutrit->I1_prime, inv.qutrit->I2_prime};
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("luinv_test_" + name); }

}  // namespace

TEST_CASE("vertices O, B, G") {
    CMatrix a = CMatrix::Zero(3, 3);
    a(0, 0) = 1.0;
    CHECK(dist(of_state(a), kVertexO) <= 1e-12);
    a(0, 0) = a(1, 1) = 1.0 / std::sqrt(2.0);
    CHECK(dist(of_state(a), kVertexB) <= 1e-12);
    CHECK(dist(of_state(CMatrix::Identity(3, 3) / std::sqrt(3.0)), kVertexG) <= 1e-12);
}

TEST_CASE("boundary curve examples") {
    CHECK(dist(curved_edge_point(1.0 / 3), kVertexG) <= 1e-12);
    CHECK(dist(curved_edge_point(0.0), kVertexB) <= 1e-12);
    CHECK(dist(curved_edge_point(1.0), kVertexO) <= 1e-12);
    const BoundaryCurves c = boundary_curves(101);
    CHECK(dist(c.straight_edge.front(), kVertexO) <= 1e-12);
    CHECK(dist(c.straight_edge.back(), kVertexB) <= 1e-12);
    for (const RegionSample& s : c.straight_edge) CHECK(std::abs(s.I2_prime - 1.125 * s.I1_prime) <= 1e-12);
    CHECK(c.curved_edge.size() == 101);
    CHECK_THROWS_AS(boundary_curves(1), Error);
}

TEST_CASE("curved edge meets the fixed-K extremes") {
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> u(0.0, 1.0 / 27);
    for (int k = 0; k < 100; ++k) {
        const double K = u(gen);
        const ExtremalBounds b = schmidt_bounds_for_K(K);
        for (auto [t, I1] : {std::pair{b.t_minus, b.I1_min}, std::pair{b.t_plus, b.I1_max}}) {
            const RegionSample on_curve = curved_edge_point(t);
            const RegionSample mapped{normalized_I1(I1), normalized_I2(1.5 * I1 - 0.5 + 3.0 * K)};
            CHECK(dist(on_curve, mapped) <= 1e-10);
        }
    }
}

TEST_CASE("region samples") {
    const std::vector<RegionSample> s = sample_invariant_region(100000, 0);
    REQUIRE(s.size() == 100000);
    double dO = 1e300, dB = 1e300, dG = 1e300;
    std::size_t outside = 0;
    for (const RegionSample& x : s) {
        CHECK(x.I1_prime <= 1.0);
        CHECK(x.I2_prime <= 1.0);
        if (!region_contains(x)) ++outside;
        dO = std::min(dO, dist(x, kVertexO));
        dB = std::min(dB, dist(x, kVertexB));
        dG = std::min(dG, dist(x, kVertexG));
    }
    CHECK(outside == 0);
    CHECK(dG <= 0.05);
    CHECK(dO <= 0.05);
    CHECK(dB <= 0.05);

    // Coarse independent simulation of the GHZ corner: uniform simplex points
    // from sorted uniforms, mapped straight to (I'_1, I'_2).
    std::mt19937 gen(1);
    std::uniform_real_distribution<double> u01;
    double oracle_dG = 1e300;
    for (int k = 0; k < 100000; ++k) {
        double a = u01(gen), b = u01(gen);
        if (a > b) std::swap(a, b);
        const double l[3] = {a, b - a, 1.0 - b};
        const double i1 = l[0] * l[0] + l[1] * l[1] + l[2] * l[2];
        const double i2 = l[0] * l[0] * l[0] + l[1] * l[1] * l[1] + l[2] * l[2] * l[2];
        oracle_dG = std::min(oracle_dG, std::hypot(1.5 * (1 - i1) - 1.0, 1.125 * (1 - i2) - 1.0));
    }
    CHECK(oracle_dG <= 0.05);

    const std::vector<RegionSample> again = sample_invariant_region(1000, 0);
    for (std::size_t i = 0; i < again.size(); ++i) {
        CHECK(again[i].I1_prime == s[i].I1_prime);
        CHECK(again[i].I2_prime == s[i].I2_prime);
    }
}

TEST_CASE("region test rejects outside points") {
    CHECK_FALSE(region_contains({0.5, 0.1}));
    CHECK_FALSE(region_contains({1.0, 0.9}));
    CHECK_FALSE(region_contains({1.1, 1.1}));
    CHECK(region_contains(kVertexO));
    CHECK(region_contains(kVertexB));
    CHECK(region_contains(kVertexG));
}

TEST_CASE("CSV round trip and errors") {
    const std::vector<RegionSample> s = sample_invariant_region(100, 3);
    const fs::path p = temp_path("rt.csv");
    {
        std::ofstream out(p, std::ios::binary);
        write_region_csv(out, s);
    }
    const std::vector<RegionSample> back = read_region_csv(p);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(back[i].I1_prime == s[i].I1_prime);
        CHECK(back[i].I2_prime == s[i].I2_prime);
    }
    CHECK(slurp(p).rfind("I1_prime,I2_prime\n", 0) == 0);

    const fs::path bad = temp_path("bad.csv");
    {
        std::ofstream out(bad);
        out << "x,y\n0.1,0.2\n";
    }
    CHECK_THROWS_AS(read_region_csv(bad), Error);
    {
        std::ofstream out(bad);
        out << "I1_prime,I2_prime\n0.1;0.2\n";
    }
    CHECK_THROWS_AS(read_region_csv(bad), Error);
    CHECK_THROWS_AS(read_region_csv(temp_path("missing.csv")), Error);
    fs::remove(p);
    fs::remove(bad);
}

TEST_CASE("SVG output") {
    const BoundaryCurves curves = boundary_curves(201);
    const fs::path csv = temp_path("svg.csv"), svg1 = temp_path("a.svg"), svg2 = temp_path("b.svg");
    {
        std::ofstream out(csv, std::ios::binary);
        write_region_csv(out, sample_invariant_region(1000, 9));
    }
    emit_region_plot(csv, curves, svg1);
    emit_region_plot(csv, curves, svg2);
    const std::string a = slurp(svg1);
    CHECK(a == slurp(svg2));
    CHECK(count(a, "<circle") == 1000);
    CHECK(count(a, "<polyline") == 2);
    CHECK(a.find(">O</text>") != std::string::npos);
    CHECK(a.find(">B</text>") != std::string::npos);
    CHECK(a.find(">G</text>") != std::string::npos);

    {
        std::ofstream out(csv, std::ios::binary);
        write_region_csv(out, {});
    }
    emit_region_plot(csv, curves, svg1);
    const std::string empty = slurp(svg1);
    CHECK(count(empty, "<circle") == 0);
    CHECK(count(empty, "<polyline") == 2);
    CHECK(empty.find(">G</text>") != std::string::npos);

    CHECK_THROWS_AS(emit_region_plot(csv, curves, "/nonexistent-dir/x.svg"), Error);
    fs::remove(csv);
    fs::remove(svg1);
    fs::remove(svg2);
}

TEST_CASE("ansatz examples") {
    CHECK(ansatz_free_phase_count(4) == 3);
    CHECK(ansatz_free_phase_count(3) == 1);

    const InvariantSet ghz = invariants_of_ansatz({4, {1, 0, 0, 0}, {0, 0, 0}});
    for (int n = 0; n < 4; ++n) CHECK(std::abs(ghz.I[n] - std::pow(4.0, -n)) <= 1e-14);
    const InvariantSet prod = invariants_of_ansatz({4, {0, 0, 0, 1}, {0, 0, 0}});
    for (int n = 0; n < 4; ++n) CHECK(std::abs(prod.I[n] - 1.0) <= 1e-14);

    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const SchmidtVector w = random_schmidt_vector(3, derive_seed(44, k));
        const double theta = 2.0 * 3.141592653589793 * u(gen);
        const std::vector<double> p{w.kappa()(2), w.kappa()(0), w.kappa()(1)};
        const InvariantSet a = invariants_of_ansatz({3, p, {theta}});
        const auto b = invariants_from_alt_params(p[0], p[1], p[2], theta);
        for (int n = 0; n < 3; ++n) CHECK(std::abs(a.I[n] - b[n]) <= 1e-12);
    }

    CHECK_THROWS_AS(ansatz_state({4, {1, 0, 0}, {0, 0, 0}}), Error);
    CHECK_THROWS_AS(ansatz_state({4, {1, 0, 0, 0}, {0, 0}}), Error);
    CHECK_THROWS_AS(ansatz_state({4, {0.5, 0.5, 0.5, 0.6}, {0, 0, 0}}), Error);
}

TEST_CASE("d = 4 ansatz triangular determinant") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const SchmidtVector w = random_schmidt_vector(4, derive_seed(45, k));
        const std::vector<double> p{w.kappa()(3), w.kappa()(1), w.kappa()(0), w.kappa()(2)};
        const BipartiteState s = ansatz_state({4, p, {6 * u(gen), 6 * u(gen), 6 * u(gen)}});
        const double det = reduced_density_A(s).determinant().real();
        CHECK(std::abs(det - std::pow(p[0] / 2.0, 8)) <= 1e-15);
    }
}

TEST_CASE("d = 4 solver reaches the extreme targets") {
    const D4Solution ghz = solve_d4_target(SchmidtVector(RVector::Constant(4, 0.5)), 1, 1e-8);
    CHECK(ghz.residual <= 1e-8);
    CHECK(std::abs(ghz.ansatz.p[0] - 1.0) <= 1e-3);

    RVector one = RVector::Zero(4);
    one(0) = 1.0;
    const D4Solution prod = solve_d4_target(SchmidtVector(one), 2, 1e-8);
    CHECK(prod.residual <= 1e-8);
    CHECK(std::abs(prod.ansatz.p[3] - 1.0) <= 1e-3);
}

TEST_CASE("d = 4 residual agrees with the general invariant path") {
    for (std::uint64_t k = 0; k < 30; ++k) {
        const SchmidtVector kappa = random_schmidt_vector(4, derive_seed(46, k));
        const D4Solution sol = solve_d4_target(kappa, k, 1e-8);
        const InvariantSet got = invariants_of_ansatz(sol.ansatz);
        const InvariantSet want = invariants_from_schmidt(kappa);
        double dev = 0.0;
        for (int n = 1; n < 4; ++n) dev = std::max(dev, std::abs(got.I[n] - want.I[n]));
        CHECK(std::abs(dev - sol.residual) <= 1e-13);
        CHECK(dev <= 1e-8);
    }
}

TEST_CASE("d = 4 coverage on a small batch") {
    const D4Report a = verify_d4_conjecture(30, 7);
    CHECK(a.samples == 30);
    CHECK(a.success_count == 30);
    CHECK(a.failures.empty());
    CHECK(a.worst_residual <= 1e-8);
    const D4Report b = verify_d4_conjecture(30, 7);
    CHECK(a.worst_residual == b.worst_residual);
    CHECK_THROWS_AS(verify_d4_conjecture(0, 7), Error);
}
