#include "luinv/cli.hpp"

#include "luinv/canonical.hpp"
#include "luinv/errors.hpp"
#include "luinv/explorer.hpp"
#include "luinv/extremal.hpp"
#include "luinv/invariants.hpp"
#include "luinv/io.hpp"
#include "luinv/schmidt.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace luinv::cli {

namespace {

constexpr double kRangeCheckTol = 1e-8;

BipartiteState read_state(const std::string& path, std::istream& in) {
    Json j;
    try {
        if (path == "-") {
            j = Json::parse(in);
        } else {
            std::ifstream file(path);
            if (!file) throw Error(ErrorKind::IoError, "cannot open " + path);
            j = Json::parse(file);
        }
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::BadParams, "malformed JSON in " + path + ": " + e.what());
    }
    return state_from_json(j);
}

Json invariants_json(const InvariantSet& inv) {
    Json j;
    j["I"] = inv.I;
    if (inv.qutrit) {
        j["I1_prime"] = inv.qutrit->I1_prime;
        j["I2_prime"] = inv.qutrit->I2_prime;
        j["K"] = inv.qutrit->K;
    }
    return j;
}

Json bounds_json(const ExtremalBounds& b) {
    Json j;
    j["K"] = b.K;
    j["p1"] = b.p1;
    j["phi1"] = b.phi1;
    j["phi2"] = b.phi2;
    j["phi3"] = b.phi3;
    j["t_minus"] = b.t_minus;
    j["t_plus"] = b.t_plus;
    j["I1_min"] = b.I1_min;
    j["I1_max"] = b.I1_max;
    return j;
}

std::vector<double> to_vector(const RVector& v) { return {v.data(), v.data() + v.size()}; }

struct Options {
    bool pretty = false;
    std::string file = "-";
    std::string file2;
    bool emit_unitaries = false;
    std::optional<double> k_value;
    std::optional<double> p1_value;
    int grid = 1001;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string svg_path;
    double tol = 1e-8;
    int d = 3;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local-unitary invariants and canonical forms of bipartite pure states", "luinv"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--pretty", o.pretty, "Indent JSON output");

    auto* invariants = app.add_subcommand("invariants", "Print the trace-power invariants of a state");
    invariants->add_option("file", o.file, "State JSON ('-' reads stdin)");

    auto* schmidt = app.add_subcommand("schmidt", "Schmidt coefficients of a state");
    schmidt->add_option("file", o.file, "State JSON ('-' reads stdin)");
    schmidt->add_flag("--emit-unitaries", o.emit_unitaries, "Include U_A, U_B with U_A A U_B^T = diag(kappa)");

    auto* decompose = app.add_subcommand("decompose", "Alternative canonical form (d = 2 or 3)");
    decompose->add_option("file", o.file, "State JSON ('-' reads stdin)");
    decompose->add_flag("--emit-unitaries", o.emit_unitaries, "Include U_A, U_B and the global phase gamma");

    auto* lu_find = app.add_subcommand("lu-find", "Local unitaries mapping one state onto another");
    lu_find->add_option("source", o.file, "Source state JSON")->required();
    lu_find->add_option("target", o.file2, "Target state JSON")->required();

    auto* bounds = app.add_subcommand("bounds", "Closed-form range of I_1 at fixed K or fixed p1");
    auto* k_opt = bounds->add_option("--K", o.k_value, "K in [0, 1/27]");
    auto* p1_opt = bounds->add_option("--p1", o.p1_value, "p1 in [0, 1]");
    k_opt->excludes(p1_opt);
    bounds->require_option(1);

    auto* appendix = app.add_subcommand("verify-appendix", "Compare the two closed-form I_1 ranges on a p1 grid");
    appendix->add_option("--grid", o.grid, "Number of p1 grid points")->check(CLI::Range(2, 100000000));

    auto* region = app.add_subcommand("region", "Sample the qutrit invariant region");
    region->add_option("--samples", o.samples, "Number of samples")->default_val(100000)->check(CLI::PositiveNumber);
    region->add_option("--seed", o.seed, "Master seed")->default_val(0);
    region->add_option("--out", o.out_path, "CSV output path")->required();
    region->add_option("--svg", o.svg_path, "Optional SVG plot path");

    auto* d4 = app.add_subcommand("verify-d4", "Check that the d = 4 ansatz reaches random Schmidt invariants");
    d4->add_option("--samples", o.samples, "Number of targets")->default_val(1000)->check(CLI::PositiveNumber);
    d4->add_option("--seed", o.seed, "Master seed")->default_val(0);
    d4->add_option("--tol", o.tol, "Residual tolerance")->default_val(1e-8)->check(CLI::PositiveNumber);

    auto* random = app.add_subcommand("random", "Print a Haar-random state");
    random->add_option("--d", o.d, "Dimension")->default_val(3)->check(CLI::Range(2, 64));
    random->add_option("--seed", o.seed, "Seed")->default_val(0);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    const int indent = o.pretty ? 2 : -1;
    auto emit = [&](const Json& j) { out << dump_json(j, indent) << "\n"; };

    try {
        if (invariants->parsed()) {
            emit(invariants_json(compute_invariants(read_state(o.file, in))));
            return kOk;
        }
        if (schmidt->parsed()) {
            const BipartiteState s = read_state(o.file, in);
            const SchmidtDecomposition dec = schmidt_decompose(s);
            Json j;
            j["kappa"] = to_vector(dec.kappa.kappa());
            j["residual"] = schmidt_residual(s, dec);
            if (o.emit_unitaries) {
                j["U_A"] = matrix_to_json(dec.U_A.matrix());
                j["U_B"] = matrix_to_json(dec.U_B.matrix());
            }
            emit(j);
            return kOk;
        }
        if (decompose->parsed()) {
            const BipartiteState s = read_state(o.file, in);
            const AltDecomposition dec = alt_decomposition(s);
            const LocalUnitaryMap map = find_local_unitaries(s, dec.canonical_state);
            Json j;
            j["p"] = dec.p;
            j["theta"] = dec.theta;
            j["residual"] = map.residual;
            if (o.emit_unitaries) {
                j["U_A"] = matrix_to_json(map.U_A.matrix());
                j["U_B"] = matrix_to_json(map.U_B.matrix());
                j["gamma"] = map.gamma;
            }
            emit(j);
            return kOk;
        }
        if (lu_find->parsed()) {
            const BipartiteState source = read_state(o.file, in);
            const BipartiteState target = read_state(o.file2, in);
            const LocalUnitaryMap map = find_local_unitaries(source, target);
            Json j;
            j["U_A"] = matrix_to_json(map.U_A.matrix());
            j["U_B"] = matrix_to_json(map.U_B.matrix());
            j["gamma"] = map.gamma;
            j["residual"] = map.residual;
            j["degenerate"] = map.degenerate;
            emit(j);
            return kOk;
        }
        if (bounds->parsed()) {
            emit(bounds_json(o.k_value ? schmidt_bounds_for_K(*o.k_value) : p_form_bounds_for_p1(*o.p1_value)));
            return kOk;
        }
        if (appendix->parsed()) {
            const RangeEqualityReport rep = verify_range_equality(o.grid);
            Json j;
            j["points"] = rep.points;
            j["max_dev_min"] = rep.max_dev_min;
            j["max_dev_max"] = rep.max_dev_max;
            j["max_identity_residual"] = rep.max_identity_residual;
            emit(j);
            const double worst = std::max({rep.max_dev_min, rep.max_dev_max, rep.max_identity_residual});
            if (worst > kRangeCheckTol) {
                err << "verify-appendix: deviation " << worst << " exceeds 1e-8\n";
                return kNumericalError;
            }
            return kOk;
        }
        if (region->parsed()) {
            const std::vector<RegionSample> samples = sample_invariant_region(o.samples, o.seed);
            {
                std::ofstream csv(o.out_path, std::ios::binary);
                if (!csv) throw Error(ErrorKind::IoError, "cannot write " + o.out_path);
                write_region_csv(csv, samples);
                if (!csv) throw Error(ErrorKind::IoError, "write failed for " + o.out_path);
            }
            const auto outside = std::count_if(samples.begin(), samples.end(),
                                               [](const RegionSample& s) { return !region_contains(s); });
            if (!o.svg_path.empty()) emit_region_plot(o.out_path, boundary_curves(201), o.svg_path);
            Json j;
            j["samples"] = o.samples;
            j["seed"] = o.seed;
            j["outside_region"] = outside;
            j["csv"] = o.out_path;
            if (!o.svg_path.empty()) j["svg"] = o.svg_path;
            emit(j);
            return kOk;
        }
        if (d4->parsed()) {
            const D4Report rep = verify_d4_conjecture(o.samples, o.seed, o.tol);
            Json j;
            j["samples"] = rep.samples;
            j["success_count"] = rep.success_count;
            j["solved_in_retry"] = rep.solved_in_retry;
            j["worst_residual"] = rep.worst_residual;
            j["max_det_identity_dev"] = rep.max_det_identity_dev;
            Json failures = Json::array();
            for (const D4Failure& f : rep.failures) {
                failures.push_back({{"index", f.index}, {"kappa", f.kappa}, {"residual", f.residual}});
            }
            j["failures"] = failures;
            emit(j);
            if (!rep.failures.empty()) {
                err << "verify-d4: " << rep.failures.size() << " target(s) not reached at tol\n";
                return kNumericalError;
            }
            return kOk;
        }
        if (random->parsed()) {
            emit(state_to_json(random_haar_state(o.d, o.seed)));
            return kOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_numerical(e.kind()) ? kNumericalError : kInputError;
    }
    return kInputError;
}

}  // namespace luinv::cli
