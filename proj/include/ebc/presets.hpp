#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebc/full_solver.hpp"
#include "ebc/grid.hpp"
#include "ebc/mesh.hpp"
#include "ebc/surface.hpp"

namespace ebc {

// Analytic initial-data presets, sampled per mode on a radial mesh.
//   zero            : identically zero (single (0,0) profile)
//   mode_bump       : one (l, m) mode, radial shape sin(pi r / r2)
//   offset_gaussian : 3-D Gaussian centered at radius center_r along a ray
//                     tilted by center_alpha from the polar axis, windowed
//                     by (1 - (r/r2)^2); expanded over all modes l <= lmax
struct InitialDataPreset {
    std::string id = "zero";
    double amplitude = 1.0;
    int l = 0, m = 0;              // mode_bump
    double center_r = 0.8;         // offset_gaussian
    double center_alpha = 0.0;
    double width = 0.4;
};

// Time-dependent forcing presets (per-mode coefficient of f).
//   zero           : no forcing
//   gaussian_pulse : amplitude * exp(-t/tau) * exp(-((r-r0)/width)^2) on one mode
struct ForcingPreset {
    std::string id = "zero";
    int l = 0, m = 0;
    double amplitude = 1.0;
    double r0 = 0.5;
    double width = 0.2;
    double tau = 0.1;
};

inline std::vector<ModeProfile> make_initial_profiles(const InitialDataPreset& preset,
                                                      int lmax,
                                                      const RadialMesh& mesh,
                                                      const SphereGeometry& geom) {
    const std::size_t n = mesh.cell_count();
    if (preset.id == "zero") {
        std::vector<ModeProfile> out(1);
        out[0].mode = ModeIndex(0, 0);
        out[0].values.assign(n, 0.0);
        return out;
    }
    if (preset.id == "mode_bump") {
        std::vector<ModeProfile> out(1);
        out[0].mode = ModeIndex(preset.l, preset.m);
        out[0].values.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            out[0].values[i] =
                preset.amplitude *
                std::sin(std::numbers::pi * mesh.centers[i] / geom.r2);
        return out;
    }
    if (preset.id == "offset_gaussian") {
        const QuadratureGrid grid = QuadratureGrid::for_degree(lmax);
        std::vector<ModeProfile> out(coeff_count(lmax));
        for (int l = 0; l <= lmax; ++l)
            for (int m = -l; m <= l; ++m) {
                ModeIndex mode(l, m);
                out[mode.flat()].mode = mode;
                out[mode.flat()].values.assign(n, 0.0);
            }
        const double c = preset.center_r;
        const double ca = std::cos(preset.center_alpha);
        const double sa = std::sin(preset.center_alpha);
        const double inv_w2 = 1.0 / (preset.width * preset.width);
        std::vector<double> field(grid.point_count());
        for (std::size_t i = 0; i < n; ++i) {
            const double r = mesh.centers[i];
            const double window =
                preset.amplitude * (1.0 - (r / geom.r2) * (r / geom.r2));
            for (int it = 0; it < grid.n_theta; ++it) {
                const double ct = grid.cos_theta[it];
                const double st = std::sqrt(1.0 - ct * ct);
                for (int jp = 0; jp < grid.n_phi; ++jp) {
                    const double dot = sa * st * std::cos(grid.phi[jp]) + ca * ct;
                    const double d2 = r * r + c * c - 2.0 * r * c * dot;
                    field[static_cast<std::size_t>(it) * grid.n_phi + jp] =
                        std::exp(-d2 * inv_w2);
                }
            }
            const SurfaceFunction coeffs = analyze(field, grid, lmax);
            for (std::size_t k = 0; k < out.size(); ++k)
                out[k].values[i] = window * coeffs.coeffs[k];
        }
        return out;
    }
    throw std::invalid_argument("unknown initial-data preset: " + preset.id);
}

inline ModeForcing make_forcing(const ForcingPreset& preset) {
    if (preset.id == "zero") return {};
    if (preset.id == "gaussian_pulse") {
        const ModeIndex target(preset.l, preset.m);
        const double amp = preset.amplitude, r0 = preset.r0, tau = preset.tau;
        const double inv_w2 = 1.0 / (preset.width * preset.width);
        return [=](const ModeIndex& mode, double r, double t) {
            if (!(mode == target)) return 0.0;
            const double dr = r - r0;
            return amp * std::exp(-t / tau) * std::exp(-dr * dr * inv_w2);
        };
    }
    throw std::invalid_argument("unknown forcing preset: " + preset.id);
}

} // namespace ebc
