#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcgeom/report.hpp"

namespace {

using namespace qcgeom;

struct CommonArgs {
    std::string surface_file;
    std::size_t samples = 32;
    std::uint64_t seed = 1;
    double tol_sp1 = 1e-8;
    double tol_const = 1e-6;
    bool json = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-s,--surface", args.surface_file, "surface file")->required();
    cmd->add_option("--samples", args.samples, "number of sample points");
    cmd->add_option("--seed", args.seed, "sampling RNG seed");
    cmd->add_option("--tol-sp1", args.tol_sp1, "Sp(1)-invariance tolerance");
    cmd->add_option("--tol-const", args.tol_const, "parallelism tolerance");
    cmd->add_flag("--json", args.json, "machine-readable report on stdout");
}

int emit(const Report& report, bool json, int code) {
    if (json) {
        std::cout << to_json(report);
        std::cerr << to_table(report);
    } else {
        std::cout << to_table(report);
    }
    return code;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open surface file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs `body` with the parsed surface; maps errors onto the exit-code contract
// (0 OK, 1 input, 2 geometric rejection).
int run_command(const CommonArgs& args, const std::string& command,
                const std::function<void(const SurfaceSpec&, Report&)>& body) {
    Report report;
    report.command = command;
    report.surface_file = args.surface_file;
    report.points_used = 0;
    report.rng_seed = args.seed;

    SurfaceSpec spec;
    try {
        spec = parse_surface(read_file(args.surface_file));
        report.dim = spec.dim;
        report.rho = print_expr(*spec.rho);
    } catch (const InputError& e) {
        report.outcome = "Error";
        report.message = e.what();
        return emit(report, args.json, 1);
    }

    try {
        body(spec, report);
        if (report.outcome.empty()) report.outcome = "OK";
        return emit(report, args.json, report.outcome == "OK" ? 0 : 2);
    } catch (const NotQCHypersurface& e) {
        report.outcome = "Rejected";
        report.message = e.what();
        report.diagnostics.emplace_back("sp1_residual", e.diag.sp1_residual);
        report.diagnostics.emplace_back("min_abs_ii_eigen", e.diag.min_abs_ii_eigen);
        return emit(report, args.json, 2);
    } catch (const GeomError& e) {
        report.outcome = "Rejected";
        report.message = e.what();
        return emit(report, args.json, 2);
    } catch (const InputError& e) {
        report.outcome = "Error";
        report.message = e.what();
        return emit(report, args.json, 1);
    }
}

std::vector<double> parse_point_reals(const std::string& text) {
    std::vector<double> vals;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',')) ++pos;
        if (pos >= text.size()) break;
        std::size_t used = 0;
        try {
            vals.push_back(std::stod(text.substr(pos), &used));
        } catch (const std::exception&) {
            throw InputError("--point: expected comma-separated reals");
        }
        pos += used;
    }
    return vals;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcgeom: quaternionic-contact hypersurface classifier for H^{n+1}"};
    app.require_subcommand(1);

    CommonArgs classify_args, verify_args, frame_args, normalize_args;
    std::string battery = "all";
    std::string point_text;

    CLI::App* cmd_classify =
        app.add_subcommand("classify", "classify the surface into its model hyperquadric");
    add_common(cmd_classify, classify_args);

    CLI::App* cmd_verify = app.add_subcommand("verify", "run the invariant batteries");
    add_common(cmd_verify, verify_args);
    cmd_verify->add_option("--battery", battery, "battery name or 'all'");

    CLI::App* cmd_frame = app.add_subcommand("frame", "dump the induced structure at a point");
    add_common(cmd_frame, frame_args);
    cmd_frame->add_option("--point", point_text, "comma-separated point coordinates")
        ->required();

    CLI::App* cmd_normalize =
        app.add_subcommand("normalize", "classify and emit the normalized surface");
    add_common(cmd_normalize, normalize_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (cmd_classify->parsed()) {
        const CommonArgs& args = classify_args;
        return run_command(args, "classify", [&](const SurfaceSpec& spec, Report& report) {
            ClassifyOptions opts;
            opts.samples = args.samples;
            opts.rng_seed = args.seed;
            opts.tol_sp1 = args.tol_sp1;
            opts.tol_const = args.tol_const;
            fill_classification(report, classify(spec, opts));
        });
    }

    if (cmd_verify->parsed()) {
        const CommonArgs& args = verify_args;
        return run_command(args, "verify", [&](const SurfaceSpec& spec, Report& report) {
            VerifyOptions opts;
            opts.samples = args.samples;
            opts.rng_seed = args.seed;
            opts.tol_sp1 = args.tol_sp1;
            opts.tol_const = args.tol_const;
            const std::vector<std::string> names =
                battery == "all" ? kAllBatteries : std::vector<std::string>{battery};
            report.batteries = run_batteries(spec, names, opts);
            report.points_used = args.samples;
            bool all_pass = true;
            for (const BatteryResult& b : report.batteries) all_pass = all_pass && b.pass;
            report.outcome = all_pass ? "OK" : "Rejected";
        });
    }

    if (cmd_frame->parsed()) {
        const CommonArgs& args = frame_args;
        return run_command(args, "frame", [&](const SurfaceSpec& spec, Report& report) {
            const std::vector<double> coords = parse_point_reals(point_text);
            if (coords.size() != spec.real_dim())
                throw InputError("--point needs " + std::to_string(spec.real_dim()) +
                                 " coordinates");
            const QVector p = project_to_surface(spec, QVector(coords));
            const HatFrame fr = hat_structure(spec, p, args.tol_sp1);
            const CalibratedFrame cf = calibrate(fr);
            const RealMatrix delta = assemble_delta(cf);

            report.has_frame = true;
            report.frame_point = p.coords();
            report.frame_normal = fr.N.coords();
            report.frame_eta.resize(3);
            for (int s = 0; s < 3; ++s) report.frame_eta[s] = fr.JN[s].coords();
            report.frame_ii_eigenvalues = sym_eigen(fr.II_H).values;
            report.frame_r = cf.r.coords();
            for (std::size_t i = 0; i < delta.rows(); ++i)
                for (std::size_t j = 0; j < delta.cols(); ++j)
                    report.frame_delta.push_back(delta(i, j));
            report.diagnostics.emplace_back("f", cf.f);
            report.diagnostics.emplace_back("mu", cf.mu);
            report.diagnostics.emplace_back("S", cf.S);
            report.diagnostics.emplace_back("S_spread", cf.S_spread);
            report.diagnostics.emplace_back("sp1_residual", fr.diag.sp1_residual);
            report.points_used = 1;
        });
    }

    const CommonArgs& args = normalize_args;
    return run_command(args, "normalize", [&](const SurfaceSpec& spec, Report& report) {
        ClassifyOptions opts;
        opts.samples = args.samples;
        opts.rng_seed = args.seed;
        opts.tol_sp1 = args.tol_sp1;
        opts.tol_const = args.tol_const;
        const Classification c = classify(spec, opts);
        fill_classification(report, c);
        report.normalized_surface = surface_to_text(transform_surface(spec, c.normalizer));
    });
}
