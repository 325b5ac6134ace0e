// ebclab: command-line front end for the thin-layer / effective-boundary
// laboratory.  Subcommands: classify, dtn, solve-full, solve-ebc, converge,
// selftest.  Exit codes: 0 success, 1 usage/config error, 2 infeasible
// regime, 3 selftest failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebc/config.hpp"
#include "ebc/ebc_solver.hpp"
#include "ebc/full_solver.hpp"
#include "ebc/harness.hpp"
#include "ebc/io.hpp"
#include "ebc/regimes.hpp"
#include "ebc/selftest.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitSelftestFailed = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    int threads = 1;
};

void ensure_out_dir(const std::string& dir) {
    if (!dir.empty() && dir != ".") fs::create_directories(dir);
}

int cmd_classify(const CommonOpts& opts) {
    const ebc::json root = ebc::load_json_file(opts.config_path);
    const ebc::ClassifyConfig cfg = ebc::parse_classify_config(root);
    const ebc::RegimeCell cell =
        cfg.has_law ? ebc::classify(cfg.law) : ebc::classify_triple(cfg.limits);
    std::cout << ebc::regime_cell_to_json(cell).dump(2) << "\n";
    return cell.feasible ? kExitOk : kExitInfeasible;
}

int cmd_dtn(int lmax, const std::string& h_text, double r1, const std::string& out_dir,
            bool write_file) {
    if (lmax < 0) throw ebc::ConfigError("dtn: lmax must be >= 0");
    ebc::Height H = (h_text == "inf") ? ebc::Height::infinite()
                                      : ebc::Height(std::stod(h_text));
    const ebc::SphereGeometry geom(r1, 2.0 * r1);
    std::string csv = "l,lambda,j_combined,j1,j2\n";
    for (int l = 0; l <= lmax; ++l) {
        const double lam = ebc::lb_eigenvalue(l, geom);
        csv += std::to_string(l) + ',' + ebc::format_double(lam) + ',' +
               ebc::format_double(ebc::dtn_mode_multiplier(ebc::DtnKind::Combined, lam, H)) +
               ',' +
               ebc::format_double(ebc::dtn_mode_multiplier(ebc::DtnKind::FirstKind, lam, H)) +
               ',' +
               ebc::format_double(ebc::dtn_mode_multiplier(ebc::DtnKind::SecondKind, lam, H)) +
               '\n';
    }
    std::cout << csv;
    if (write_file) {
        ensure_out_dir(out_dir);
        ebc::atomic_write_file(fs::path(out_dir) / "dtn.csv", csv);
    }
    return kExitOk;
}

int cmd_solve_full(const CommonOpts& opts) {
    const ebc::json root = ebc::load_json_file(opts.config_path);
    const ebc::SolveFullConfig cfg = ebc::parse_solve_full_config(root);
    const ebc::RadialMesh mesh =
        ebc::build_mesh(cfg.layer, cfg.n_inner, cfg.n_layer, cfg.n_outer, cfg.grading);
    const auto u0 = ebc::make_initial_profiles(cfg.initial, cfg.lmax, mesh,
                                               cfg.layer.geom);
    ebc::SolveOptions sopt;
    sopt.T = cfg.time.T;
    sopt.dt = cfg.time.dt;
    sopt.theta = cfg.time.theta;
    sopt.snapshot_stride = cfg.snapshot_stride;
    sopt.threads = opts.threads;
    const auto t0 = std::chrono::steady_clock::now();
    const auto solutions =
        ebc::solve_full(cfg.layer, mesh, u0, ebc::make_forcing(cfg.forcing), sopt);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    ensure_out_dir(opts.out_dir);
    ebc::atomic_write_file(fs::path(opts.out_dir) / "snapshots.csv",
                           ebc::snapshots_to_csv(solutions, mesh));
    const ebc::json summary =
        ebc::solve_summary_json(solutions, mesh, sopt.T, sopt.dt, seconds);
    ebc::atomic_write_file(fs::path(opts.out_dir) / "summary.json",
                           summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_solve_ebc(const CommonOpts& opts) {
    const ebc::json root = ebc::load_json_file(opts.config_path);
    const ebc::SolveEbcConfig cfg = ebc::parse_solve_ebc_config(root);
    const ebc::RadialMesh mesh = ebc::build_two_region_mesh(
        cfg.effective.geom, cfg.n_inner, cfg.n_outer, cfg.grading);
    const auto u0 = ebc::make_initial_profiles(cfg.initial, cfg.lmax, mesh,
                                               cfg.effective.geom);
    ebc::SolveOptions sopt;
    sopt.T = cfg.time.T;
    sopt.dt = cfg.time.dt;
    sopt.theta = cfg.time.theta;
    sopt.snapshot_stride = cfg.snapshot_stride;
    sopt.threads = opts.threads;
    const auto t0 = std::chrono::steady_clock::now();
    const auto solutions = ebc::solve_effective(cfg.effective, mesh, cfg.family, u0,
                                                ebc::make_forcing(cfg.forcing), sopt);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    ensure_out_dir(opts.out_dir);
    ebc::atomic_write_file(fs::path(opts.out_dir) / "snapshots.csv",
                           ebc::snapshots_to_csv(solutions, mesh));
    const ebc::json summary =
        ebc::solve_summary_json(solutions, mesh, sopt.T, sopt.dt, seconds);
    ebc::atomic_write_file(fs::path(opts.out_dir) / "summary.json",
                           summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_converge(const CommonOpts& opts, bool want_json, bool want_csv) {
    const ebc::json root = ebc::load_json_file(opts.config_path);
    ebc::ExperimentConfig cfg = ebc::parse_converge_config(root);
    cfg.threads = opts.threads;

    const ebc::RegimeCell cell = ebc::classify(cfg.law);
    if (!cell.feasible) {
        std::cerr << "infeasible regime: " << cell.reason << "\n";
        std::cout << ebc::regime_cell_to_json(cell).dump(2) << "\n";
        return kExitInfeasible;
    }
    if (cell.requires_sigma_delta_cubed && !cell.sigma_delta_cubed_ok)
        std::cerr << "warning: sigma*delta^3 -> 0 side condition violated; "
                     "rows are flagged in the report\n";

    const ebc::ConvergenceReport report = ebc::run_experiment(cfg);
    ensure_out_dir(opts.out_dir);
    if (!want_json && !want_csv) want_csv = true; // default output
    if (want_csv) {
        ebc::atomic_write_file(fs::path(opts.out_dir) / "report.csv",
                               ebc::emit_report(report, ebc::ReportFormat::Csv));
        ebc::atomic_write_file(fs::path(opts.out_dir) / "plot.gp",
                               ebc::emit_report(report, ebc::ReportFormat::Gnuplot));
    }
    if (want_json)
        ebc::atomic_write_file(fs::path(opts.out_dir) / "report.json",
                               ebc::emit_report(report, ebc::ReportFormat::Json));
    std::cout << ebc::emit_report(report, ebc::ReportFormat::Csv);
    return kExitOk;
}

int cmd_selftest(unsigned long long seed, const std::string& fault_name) {
    ebc::SelftestFault fault = ebc::SelftestFault::None;
    if (fault_name == "dtn-sign")
        fault = ebc::SelftestFault::DtnSign;
    else if (!fault_name.empty())
        throw ebc::ConfigError("unknown fault: " + fault_name);
    const ebc::SelftestReport report = ebc::run_selftest(seed, fault);
    for (const auto& check : report.checks)
        std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name
                  << (check.detail.empty() ? "" : " (" + check.detail + ")") << "\n";
    if (!report.all_pass()) {
        std::cerr << "selftest failed: " << report.first_failure() << "\n";
        return kExitSelftestFailed;
    }
    std::cout << "selftest: all invariants hold\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"thin-layer heat problem laboratory"};
    app.require_subcommand(1);

    CommonOpts opts;
    int threads = 1;
    unsigned long long seed = 12345;

    auto* classify = app.add_subcommand("classify", "map a scaling law to its Table-1 cell");
    classify->add_option("--config", opts.config_path, "JSON config")->required();

    auto* dtn = app.add_subcommand("dtn", "tabulate DtN mode multipliers to CSV");
    int lmax = 8;
    std::string h_text = "1";
    double r1 = 1.0;
    bool dtn_write = false;
    dtn->add_option("--lmax", lmax, "maximum degree");
    dtn->add_option("--H", h_text, "strip height (number or 'inf')");
    dtn->add_option("--R1", r1, "interface radius");
    dtn->add_flag("--write", dtn_write, "also write dtn.csv under --out");

    auto* solve_full = app.add_subcommand("solve-full", "solve the layered problem");
    solve_full->add_option("--config", opts.config_path, "JSON config")->required();

    auto* solve_ebc = app.add_subcommand("solve-ebc", "solve an effective problem");
    solve_ebc->add_option("--config", opts.config_path, "JSON config")->required();

    auto* converge = app.add_subcommand("converge", "run a delta-convergence experiment");
    converge->add_option("--config", opts.config_path, "JSON config")->required();
    bool want_json = false, want_csv = false;
    converge->add_flag("--json", want_json, "write report.json");
    converge->add_flag("--csv", want_csv, "write report.csv and plot.gp");

    auto* selftest = app.add_subcommand("selftest", "run the fast invariant suite");
    std::string fault;
    selftest->add_option("--seed", seed, "seed for randomized property draws");
    selftest->add_option("--inject-fault", fault, "test fixture: break an invariant")
        ->group(""); // hidden

    app.add_option("--out", opts.out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads for per-mode solves");
    app.add_option("--seed", seed, "seed for randomized property draws");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    opts.threads = threads;
    try {
        if (classify->parsed()) return cmd_classify(opts);
        if (dtn->parsed()) return cmd_dtn(lmax, h_text, r1, opts.out_dir, dtn_write);
        if (solve_full->parsed()) return cmd_solve_full(opts);
        if (solve_ebc->parsed()) return cmd_solve_ebc(opts);
        if (converge->parsed()) return cmd_converge(opts, want_json, want_csv);
        if (selftest->parsed()) return cmd_selftest(seed, fault);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitConfigError;
}
