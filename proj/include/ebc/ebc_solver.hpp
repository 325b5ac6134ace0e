#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ebc/ebc_families.hpp"
#include "ebc/full_solver.hpp"
#include "ebc/mesh.hpp"

namespace ebc {

// The effective problem has no layer: A0 = k1 inside the interface sphere,
// k2 outside, coupled at r1 by a Table-1 family.
struct EffectiveConfig {
    SphereGeometry geom;
    double k1 = 1.0;
    double k2 = 1.0;

    EffectiveConfig() = default;
    EffectiveConfig(SphereGeometry g, double k1_, double k2_)
        : geom(g), k1(k1_), k2(k2_) {
        if (!(k1 > 0.0) || !(k2 > 0.0))
            throw std::invalid_argument("EffectiveConfig: conductivities must be positive");
    }
};

namespace detail {

// Index of the mesh node sitting exactly on the interface sphere.
inline std::size_t interface_node(const RadialMesh& mesh, double r1) {
    for (std::size_t i = 1; i + 1 < mesh.nodes.size(); ++i)
        if (mesh.nodes[i] == r1) return i;
    throw std::invalid_argument("effective solver: mesh has no node at r1");
}

// Linear forms of the two one-sided interface fluxes in the adjacent cell
// unknowns, after eliminating the interface traces:
//   F_left  = k1 v1'(r1-) * r1^2 = fl_l * uL + fl_r * uR
//   F_right = k2 v2'(r1+) * r1^2 = fr_l * uL + fr_r * uR
struct InterfaceStencil {
    double fl_l = 0.0, fl_r = 0.0;
    double fr_l = 0.0, fr_r = 0.0;
};

struct InterfaceGeometry {
    std::size_t cell_left, cell_right;
    double d1, d2;   // center-to-interface distances
    double a1, a2;   // k1/d1, k2/d2
    double k1, k2;
    double area;
};

inline InterfaceGeometry interface_geometry(const RadialMesh& mesh,
                                            const EffectiveConfig& cfg) {
    const double r1 = cfg.geom.r1;
    const std::size_t node = interface_node(mesh, r1);
    InterfaceGeometry g;
    g.cell_left = node - 1;
    g.cell_right = node;
    g.d1 = r1 - mesh.centers[g.cell_left];
    g.d2 = mesh.centers[g.cell_right] - r1;
    g.a1 = cfg.k1 / g.d1;
    g.a2 = cfg.k2 / g.d2;
    g.k1 = cfg.k1;
    g.k2 = cfg.k2;
    g.area = r1 * r1;
    return g;
}

inline InterfaceStencil interface_stencil(const ModeBoundaryCoupling& c,
                                          const InterfaceGeometry& g) {
    InterfaceStencil s;
    const double a1 = g.a1, a2 = g.a2, area = g.area;
    using Form = ModeBoundaryCoupling::Form;
    switch (c.form) {
        case Form::DirichletZeroBoth:
            s.fl_l = -area * a1;
            s.fr_r = area * a2;
            return s;
        case Form::ValueContinuity: {
            if (c.flux_jump == 0.0) {
                // bit-identical to the plain two-material face formula
                const double t = area / (g.d1 / g.k1 + g.d2 / g.k2);
                s.fl_l = -t; s.fl_r = t;
                s.fr_l = -t; s.fr_r = t;
                return s;
            }
            const double inv_s = 1.0 / (a1 + a2 + c.flux_jump);
            s.fl_l = -area * a1 * (a2 + c.flux_jump) * inv_s;
            s.fl_r = area * a1 * a2 * inv_s;
            s.fr_l = -area * a2 * a1 * inv_s;
            s.fr_r = area * a2 * (a1 + c.flux_jump) * inv_s;
            return s;
        }
        case Form::Coefficients: {
            const double det = (a1 - c.c11) * (a2 + c.c22) + c.c12 * c.c21;
            if (det == 0.0)
                throw std::runtime_error("interface_stencil: singular trace elimination");
            s.fl_l = area * a1 * (c.c11 * (a2 + c.c22) - c.c12 * c.c21) / det;
            s.fl_r = area * a1 * c.c12 * a2 / det;
            s.fr_l = area * a2 * c.c21 * a1 / det;
            s.fr_r = area * a2 * ((a1 - c.c11) * c.c22 + c.c12 * c.c21) / det;
            return s;
        }
    }
    throw std::logic_error("interface_stencil: unknown form");
}

} // namespace detail

// Finite-volume operator of the two-region effective problem for degree l.
// All faces except the interface are standard; the interface face flux is
// the trace-eliminated form of the family's coupling.
inline ModeOperator assemble_effective_mode_operator(
    const RadialMesh& mesh, const EffectiveConfig& cfg, const EbcFamily& family,
    int l, OuterBc outer = OuterBc::DirichletZero) {
    const std::size_t n = mesh.cell_count();
    std::vector<double> k_normal(n), k_tangent(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = (mesh.region[i] == Region::Inner) ? cfg.k1 : cfg.k2;
        k_normal[i] = k;
        k_tangent[i] = k;
    }

    const auto geom = detail::interface_geometry(mesh, cfg);
    ModeOperator op;
    op.k = Tridiagonal(n);
    op.volumes = mesh.volumes;

    // plain faces everywhere except the interface
    for (std::size_t f = 1; f < n; ++f) {
        if (f == geom.cell_right) continue;
        const double rf = mesh.nodes[f];
        const double dl = rf - mesh.centers[f - 1];
        const double dr = mesh.centers[f] - rf;
        const double t = rf * rf / (dl / k_normal[f - 1] + dr / k_normal[f]);
        op.k.diag[f - 1] -= t;
        op.k.upper[f - 1] += t;
        op.k.diag[f] -= t;
        op.k.lower[f] += t;
    }
    if (outer == OuterBc::DirichletZero) {
        const std::size_t i = n - 1;
        const double rb = mesh.outer_radius();
        op.k.diag[i] -= rb * rb * k_normal[i] / (rb - mesh.centers[i]);
    }
    detail::add_reaction(op.k, mesh, k_tangent, l);

    const auto coupling = mode_boundary_conditions(family, l, cfg.geom);
    const auto s = detail::interface_stencil(coupling, geom);
    const std::size_t L = geom.cell_left, R = geom.cell_right;
    op.k.diag[L] += s.fl_l;   // cell L budget gains its right-face flux
    op.k.upper[L] += s.fl_r;
    op.k.diag[R] -= s.fr_r;   // cell R budget loses its left-face flux
    op.k.lower[R] -= s.fr_l;
    return op;
}

// Interface traces (v1, v2) at r1 recovered from a snapshot, consistent with
// the trace elimination used in assembly.
inline std::pair<double, double> effective_interface_traces(
    const RadialMesh& mesh, const EffectiveConfig& cfg, const EbcFamily& family,
    int l, const std::vector<double>& values) {
    const auto geom = detail::interface_geometry(mesh, cfg);
    const double uL = values[geom.cell_left];
    const double uR = values[geom.cell_right];
    const auto c = mode_boundary_conditions(family, l, cfg.geom);
    using Form = ModeBoundaryCoupling::Form;
    switch (c.form) {
        case Form::DirichletZeroBoth:
            return {0.0, 0.0};
        case Form::ValueContinuity: {
            const double w = (geom.a1 * uL + geom.a2 * uR) / (geom.a1 + geom.a2 + c.flux_jump);
            return {w, w};
        }
        case Form::Coefficients: {
            const double det = (geom.a1 - c.c11) * (geom.a2 + c.c22) + c.c12 * c.c21;
            const double w1 = ((geom.a2 + c.c22) * geom.a1 * uL + c.c12 * geom.a2 * uR) / det;
            const double w2 = (-c.c21 * geom.a1 * uL + (geom.a1 - c.c11) * geom.a2 * uR) / det;
            return {w1, w2};
        }
    }
    throw std::logic_error("effective_interface_traces: unknown form");
}

// Advances every mode of the effective problem on [0, T].
inline std::vector<ModeSolution> solve_effective(const EffectiveConfig& cfg,
                                                 const RadialMesh& mesh,
                                                 const EbcFamily& family,
                                                 const std::vector<ModeProfile>& u0,
                                                 const ModeForcing& forcing,
                                                 const SolveOptions& opt) {
    return detail::run_modes(
        mesh,
        [&](int l) { return assemble_effective_mode_operator(mesh, cfg, family, l, opt.outer); },
        u0, forcing, opt);
}

} // namespace ebc
