#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebc/ebc_solver.hpp"
#include "ebc/full_solver.hpp"
#include "ebc/mesh.hpp"
#include "ebc/presets.hpp"
#include "ebc/regimes.hpp"

namespace ebc {

struct MeshCounts {
    int n_inner = 48;
    int n_layer = 32;
    int n_outer = 48;
    int n_inner_effective = 64;
    int n_outer_effective = 64;
    double grading = 3.0;
};

struct ExperimentConfig {
    ScalingLaw law;
    std::vector<double> delta_sequence; // strictly decreasing, positive
    SphereGeometry geom;
    double k1 = 1.0;
    double k2 = 1.0;
    int lmax = 8;
    InitialDataPreset initial;
    ForcingPreset forcing;
    double T = 0.5;
    double dt = 1e-3;
    double theta = 1.0;
    MeshCounts mesh;
    int snapshot_stride = 10;
    int threads = 1;

    void validate() const {
        if (delta_sequence.empty())
            throw std::invalid_argument("ExperimentConfig: empty delta sequence");
        for (std::size_t i = 0; i < delta_sequence.size(); ++i) {
            if (!(delta_sequence[i] > 0.0) ||
                !(delta_sequence[i] < geom.r2 - geom.r1))
                throw std::invalid_argument("ExperimentConfig: delta outside (0, r2-r1)");
            if (i > 0 && !(delta_sequence[i] < delta_sequence[i - 1]))
                throw std::invalid_argument("ExperimentConfig: deltas must decrease");
        }
        if (!(k1 > 0.0) || !(k2 > 0.0))
            throw std::invalid_argument("ExperimentConfig: conductivities must be positive");
        if (lmax < 0) throw std::invalid_argument("ExperimentConfig: lmax >= 0");
    }
};

struct ConvergenceRow {
    double delta = 0.0;
    double sup_t_error = 0.0;
    double sup_t_error_layer_included = 0.0;
    double max_full_layer_mass = 0.0; // sup_t L2 mass of the full solution in the layer
    double full_runtime_s = 0.0;
    double effective_runtime_s = 0.0;
};

struct ConvergenceReport {
    RegimeCell cell;
    std::vector<ConvergenceRow> rows; // sorted by delta, descending
    // run metadata
    ScalingLaw law;
    SphereGeometry geom;
    double k1 = 1.0, k2 = 1.0;
    int lmax = 8;
    double T = 0.5, dt = 1e-3, theta = 1.0;
    MeshCounts mesh;
    int snapshot_stride = 10;
    std::string initial_preset, forcing_preset;
    bool sigma_delta_cubed_warning = false;
    std::string version = "1";
};

namespace detail {

// Piecewise-linear interpolant over one region block of the effective
// solution (cell centers, plus the known zero value at the outer wall for
// the outer block).  Linear extrapolation from the edge pair outside the
// covered range.
struct BlockInterpolant {
    std::vector<double> r, v;

    double operator()(double x) const {
        const std::size_t n = r.size();
        if (n == 1) return v[0];
        std::size_t hi =
            static_cast<std::size_t>(std::lower_bound(r.begin(), r.end(), x) - r.begin());
        if (hi == 0) hi = 1;
        if (hi == n) hi = n - 1;
        const double t = (x - r[hi - 1]) / (r[hi] - r[hi - 1]);
        return v[hi - 1] + t * (v[hi] - v[hi - 1]);
    }
};

struct EffectiveBlocks {
    BlockInterpolant inner, outer;
};

inline EffectiveBlocks make_blocks(const RadialMesh& eff_mesh,
                                   const std::vector<double>& values, double r2) {
    EffectiveBlocks b;
    for (std::size_t i = 0; i < eff_mesh.cell_count(); ++i) {
        if (eff_mesh.region[i] == Region::Inner) {
            b.inner.r.push_back(eff_mesh.centers[i]);
            b.inner.v.push_back(values[i]);
        } else {
            b.outer.r.push_back(eff_mesh.centers[i]);
            b.outer.v.push_back(values[i]);
        }
    }
    b.outer.r.push_back(r2); // Dirichlet wall
    b.outer.v.push_back(0.0);
    return b;
}

struct CtL2Breakdown {
    double sup_error = 0.0;                // layer excluded
    double sup_error_layer_included = 0.0; // effective extended from r1+delta
    double max_full_layer_mass = 0.0;
    double max_eff_extension_layer_mass = 0.0;
};

inline void check_time_alignment(const std::vector<ModeSolution>& full,
                                 const std::vector<ModeSolution>& effective) {
    if (full.size() != effective.size())
        throw std::invalid_argument("error_ct_l2: mode sets differ");
    if (full.empty()) return;
    const std::size_t n_times = full[0].times.size();
    for (std::size_t mi = 0; mi < full.size(); ++mi) {
        if (!(full[mi].mode == effective[mi].mode))
            throw std::invalid_argument("error_ct_l2: mode sets differ");
        if (full[mi].times.size() != n_times ||
            effective[mi].times.size() != n_times)
            throw std::invalid_argument("error_ct_l2: time grids misaligned");
        for (std::size_t s = 0; s < n_times; ++s)
            if (std::abs(full[mi].times[s] - effective[mi].times[s]) > 1e-12)
                throw std::invalid_argument("error_ct_l2: time grids misaligned");
    }
}

} // namespace detail

// sup over common snapshot times of the L2 difference on
// (0, r1) union (r1+delta, r2); the shrinking layer is excluded (its
// measure vanishes with delta).  The breakdown also carries the
// layer-included variant (effective solution extended inward with its value
// at r1+delta) and the layer masses, for the exclusion-consistency check.
inline detail::CtL2Breakdown compute_ct_l2_breakdown(
    const std::vector<ModeSolution>& full, const RadialMesh& full_mesh,
    const std::vector<ModeSolution>& effective, const RadialMesh& eff_mesh,
    const SphereGeometry& geom, double delta) {
    detail::check_time_alignment(full, effective);
    detail::CtL2Breakdown out;
    if (full.empty()) return out;
    const double layer_edge = geom.r1 + delta;
    const std::size_t n_times = full[0].times.size();
    for (std::size_t s = 0; s < n_times; ++s) {
        double err2 = 0.0, err2_layer = 0.0, mass2 = 0.0, ext2 = 0.0;
        for (std::size_t mi = 0; mi < full.size(); ++mi) {
            const auto blocks =
                detail::make_blocks(eff_mesh, effective[mi].snapshots[s], geom.r2);
            const double v_ext = blocks.outer(layer_edge);
            const std::vector<double>& uf = full[mi].snapshots[s];
            for (std::size_t i = 0; i < full_mesh.cell_count(); ++i) {
                const double rc = full_mesh.centers[i];
                const double vol = full_mesh.volumes[i];
                switch (full_mesh.region[i]) {
                    case Region::Inner: {
                        const double d = uf[i] - blocks.inner(rc);
                        err2 += vol * d * d;
                        break;
                    }
                    case Region::Outer: {
                        const double d = uf[i] - blocks.outer(rc);
                        err2 += vol * d * d;
                        break;
                    }
                    case Region::Layer: {
                        const double d = uf[i] - v_ext;
                        err2_layer += vol * d * d;
                        mass2 += vol * uf[i] * uf[i];
                        ext2 += vol * v_ext * v_ext;
                        break;
                    }
                }
            }
        }
        out.sup_error = std::max(out.sup_error, std::sqrt(err2));
        out.sup_error_layer_included =
            std::max(out.sup_error_layer_included, std::sqrt(err2 + err2_layer));
        out.max_full_layer_mass = std::max(out.max_full_layer_mass, std::sqrt(mass2));
        out.max_eff_extension_layer_mass =
            std::max(out.max_eff_extension_layer_mass, std::sqrt(ext2));
    }
    return out;
}

inline double error_ct_l2(const std::vector<ModeSolution>& full,
                          const RadialMesh& full_mesh,
                          const std::vector<ModeSolution>& effective,
                          const RadialMesh& eff_mesh, const SphereGeometry& geom,
                          double delta) {
    return compute_ct_l2_breakdown(full, full_mesh, effective, eff_mesh, geom, delta)
        .sup_error;
}

// Runs the full solver over the delta sequence against one effective solve,
// reporting sup-in-time L2 errors per delta.  Throws on an infeasible
// regime; a missing sigma*delta^3 side condition only sets the warning flag.
inline ConvergenceReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    const RegimeCell cell = classify(config.law);
    if (!cell.feasible)
        throw std::invalid_argument("run_experiment: infeasible regime: " + cell.reason);

    ConvergenceReport report;
    report.cell = cell;
    report.law = config.law;
    report.geom = config.geom;
    report.k1 = config.k1;
    report.k2 = config.k2;
    report.lmax = config.lmax;
    report.T = config.T;
    report.dt = config.dt;
    report.theta = config.theta;
    report.mesh = config.mesh;
    report.snapshot_stride = config.snapshot_stride;
    report.initial_preset = config.initial.id;
    report.forcing_preset = config.forcing.id;
    report.sigma_delta_cubed_warning =
        cell.requires_sigma_delta_cubed && !cell.sigma_delta_cubed_ok;

    SolveOptions opt;
    opt.T = config.T;
    opt.dt = config.dt;
    opt.theta = config.theta;
    opt.snapshot_stride = config.snapshot_stride;
    opt.threads = config.threads;

    using clock = std::chrono::steady_clock;

    // The effective problem does not depend on delta; solve it once.
    const EffectiveConfig eff_cfg(config.geom, config.k1, config.k2);
    const RadialMesh eff_mesh = build_two_region_mesh(
        config.geom, config.mesh.n_inner_effective, config.mesh.n_outer_effective,
        config.mesh.grading);
    const auto eff_u0 =
        make_initial_profiles(config.initial, config.lmax, eff_mesh, config.geom);
    const ModeForcing forcing = make_forcing(config.forcing);
    const auto t0 = clock::now();
    const auto eff_solutions =
        solve_effective(eff_cfg, eff_mesh, cell.family, eff_u0, forcing, opt);
    const double eff_seconds =
        std::chrono::duration<double>(clock::now() - t0).count();

    std::vector<double> deltas = config.delta_sequence; // validated decreasing
    for (double delta : deltas) {
        const LayerConfig layer_cfg(config.geom, delta, config.law.sigma(delta),
                                    config.law.mu(delta), config.k1, config.k2);
        const RadialMesh full_mesh =
            build_mesh(layer_cfg, config.mesh.n_inner, config.mesh.n_layer,
                       config.mesh.n_outer, config.mesh.grading);
        const auto u0 =
            make_initial_profiles(config.initial, config.lmax, full_mesh, config.geom);
        const auto t1 = clock::now();
        const auto full_solutions = solve_full(layer_cfg, full_mesh, u0, forcing, opt);
        const double full_seconds =
            std::chrono::duration<double>(clock::now() - t1).count();

        const auto breakdown = compute_ct_l2_breakdown(
            full_solutions, full_mesh, eff_solutions, eff_mesh, config.geom, delta);
        ConvergenceRow row;
        row.delta = delta;
        row.sup_t_error = breakdown.sup_error;
        row.sup_t_error_layer_included = breakdown.sup_error_layer_included;
        row.max_full_layer_mass = breakdown.max_full_layer_mass;
        row.full_runtime_s = full_seconds;
        row.effective_runtime_s = eff_seconds;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace ebc
