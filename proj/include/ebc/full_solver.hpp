#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ebc/mesh.hpp"
#include "ebc/sphere.hpp"
#include "ebc/tridiag.hpp"

namespace ebc {

enum class OuterBc { DirichletZero, NeumannZero };

// Semi-discrete mode operator in integrated (finite-volume) form:
//   V_i du_i/dt = (K u)_i + V_i f_i.
// K collects face fluxes and the tangential reaction term; it is symmetric
// and negative semidefinite, so theta >= 1/2 stepping is unconditionally
// stable.
struct ModeOperator {
    Tridiagonal k;
    std::vector<double> volumes;

    std::size_t size() const { return volumes.size(); }
};

struct ModeState {
    ModeIndex mode;
    std::vector<double> values; // amplitude at cell centers
    double time = 0.0;
};

struct ModeSolution {
    ModeIndex mode;
    std::vector<double> times;
    std::vector<std::vector<double>> snapshots;
};

namespace detail {

// Face fluxes with distance-weighted harmonic conductivity.  Placing the
// material interfaces on faces makes the single-valued face flux enforce
// continuity of temperature and of k * u_r across them.
inline void add_face_fluxes(Tridiagonal& k, const RadialMesh& mesh,
                            const std::vector<double>& k_normal, OuterBc outer) {
    const std::size_t n = mesh.cell_count();
    for (std::size_t f = 1; f < n; ++f) {
        const double rf = mesh.nodes[f];
        const double dl = rf - mesh.centers[f - 1];
        const double dr = mesh.centers[f] - rf;
        const double t = rf * rf / (dl / k_normal[f - 1] + dr / k_normal[f]);
        k.diag[f - 1] -= t;
        k.upper[f - 1] += t;
        k.diag[f] -= t;
        k.lower[f] += t;
    }
    // r = 0 face has zero area, hence zero flux; nothing to add there.
    if (outer == OuterBc::DirichletZero) {
        const std::size_t i = n - 1;
        const double rb = mesh.outer_radius();
        const double t = rb * rb * k_normal[i] / (rb - mesh.centers[i]);
        k.diag[i] -= t;
    }
}

inline void add_reaction(Tridiagonal& k, const RadialMesh& mesh,
                         const std::vector<double>& k_tangent, int l) {
    if (l == 0) return;
    const double ll1 = static_cast<double>(l) * (l + 1);
    for (std::size_t i = 0; i < mesh.cell_count(); ++i)
        k.diag[i] -= ll1 * k_tangent[i] * (mesh.nodes[i + 1] - mesh.nodes[i]);
}

} // namespace detail

// Discretization of the full three-region problem for mode degree l:
// conduction k(r) (1/r^2)(r^2 u_r)_r minus the tangential term
// k_t(r) l(l+1)/r^2 u, with (k, k_t) = (k1, k1) | (sigma, mu) | (k2, k2)
// by region.  Outer boundary u = 0 unless NeumannZero is requested
// (test configuration).
inline ModeOperator assemble_mode_operator(const RadialMesh& mesh,
                                           const LayerConfig& config, int l,
                                           OuterBc outer = OuterBc::DirichletZero) {
    config.validate();
    if (l < 0) throw std::invalid_argument("assemble_mode_operator: l >= 0");
    const std::size_t n = mesh.cell_count();
    std::vector<double> k_normal(n), k_tangent(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (mesh.region[i]) {
            case Region::Inner: k_normal[i] = config.k1; k_tangent[i] = config.k1; break;
            case Region::Layer: k_normal[i] = config.sigma; k_tangent[i] = config.mu; break;
            case Region::Outer: k_normal[i] = config.k2; k_tangent[i] = config.k2; break;
        }
    }
    ModeOperator op;
    op.k = Tridiagonal(n);
    op.volumes = mesh.volumes;
    detail::add_face_fluxes(op.k, mesh, k_normal, outer);
    detail::add_reaction(op.k, mesh, k_tangent, l);
    return op;
}

// Factorized theta-method stepper for a fixed (operator, dt, theta):
//   (V - theta dt K) u_new = (V + (1-theta) dt K) u_old + dt V f.
class ThetaStepper {
  public:
    ThetaStepper(const ModeOperator& op, double dt, double theta)
        : op_(&op), dt_(dt), theta_(theta) {
        if (!(dt > 0.0)) throw std::invalid_argument("ThetaStepper: dt > 0 required");
        if (theta < 0.5 || theta > 1.0)
            throw std::invalid_argument("ThetaStepper: theta in [0.5, 1] required");
        const std::size_t n = op.size();
        Tridiagonal lhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            lhs.diag[i] = op.volumes[i] - theta * dt * op.k.diag[i];
            lhs.lower[i] = -theta * dt * op.k.lower[i];
            lhs.upper[i] = -theta * dt * op.k.upper[i];
        }
        lu_.factor(lhs);
    }

    // Advances in place; f (optional) is the forcing density per cell.
    void advance(std::vector<double>& u, const std::vector<double>* f = nullptr) const {
        const std::size_t n = op_->size();
        rhs_.assign(n, 0.0);
        const double c = (1.0 - theta_) * dt_;
        for (std::size_t i = 0; i < n; ++i) {
            double v = op_->volumes[i] * u[i];
            if (c != 0.0) {
                double ku = op_->k.diag[i] * u[i];
                if (i > 0) ku += op_->k.lower[i] * u[i - 1];
                if (i + 1 < n) ku += op_->k.upper[i] * u[i + 1];
                v += c * ku;
            }
            if (f) v += dt_ * op_->volumes[i] * (*f)[i];
            rhs_[i] = v;
        }
        lu_.solve_in_place(rhs_);
        u.swap(rhs_);
    }

  private:
    const ModeOperator* op_;
    double dt_;
    double theta_;
    TridiagonalLU lu_;
    mutable std::vector<double> rhs_;
};

// One theta step of the standalone kind used in tests; forcing profile is
// already evaluated at the appropriate time blend by the caller.
inline ModeState step_theta(const ModeState& state, const ModeOperator& op,
                            double dt, double theta,
                            const std::vector<double>* f_mode = nullptr) {
    ThetaStepper stepper(op, dt, theta);
    ModeState next = state;
    stepper.advance(next.values, f_mode);
    next.time += dt;
    return next;
}

// Steady state: 0 = K u + V f, i.e. K u = -V f.
inline std::vector<double> steady_solve(const ModeOperator& op,
                                        const std::vector<double>& f) {
    const std::size_t n = op.size();
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -op.volumes[i] * f[i];
    return TridiagonalLU(op.k).solve(rhs);
}

struct ModeProfile {
    ModeIndex mode;
    std::vector<double> values;
};

// Forcing coefficient as a function of (mode, radius, time); empty means zero.
using ModeForcing = std::function<double(const ModeIndex&, double, double)>;

struct SolveOptions {
    double T = 1.0;
    double dt = 1e-3;
    double theta = 1.0;
    int snapshot_stride = 1;
    OuterBc outer = OuterBc::DirichletZero;
    int threads = 1;
};

namespace detail {

inline std::size_t step_count(double T, double dt) {
    auto n = static_cast<std::size_t>(std::llround(T / dt));
    if (n < 1 || std::abs(n * dt - T) > 1e-9 * T)
        throw std::invalid_argument("solve: T must be an integral number of steps");
    return n;
}

template <typename AssembleFn>
std::vector<ModeSolution> run_modes(const RadialMesh& mesh, AssembleFn&& assemble,
                                    const std::vector<ModeProfile>& u0,
                                    const ModeForcing& forcing,
                                    const SolveOptions& opt) {
    const std::size_t n_steps = step_count(opt.T, opt.dt);
    const std::size_t n_modes = u0.size();
    std::vector<ModeSolution> out(n_modes);

    auto solve_one = [&](std::size_t mi) {
        const ModeProfile& init = u0[mi];
        if (init.values.size() != mesh.cell_count())
            throw std::invalid_argument("solve: initial profile size does not match mesh");
        ModeOperator op = assemble(init.mode.l);
        ThetaStepper stepper(op, opt.dt, opt.theta);

        ModeSolution sol;
        sol.mode = init.mode;
        std::vector<double> u = init.values;
        sol.times.push_back(0.0);
        sol.snapshots.push_back(u);

        std::vector<double> f_blend;
        for (std::size_t s = 1; s <= n_steps; ++s) {
            const double t_old = (s - 1) * opt.dt;
            const double t_new = s * opt.dt;
            const std::vector<double>* f_ptr = nullptr;
            if (forcing) {
                f_blend.resize(mesh.cell_count());
                for (std::size_t i = 0; i < mesh.cell_count(); ++i) {
                    const double r = mesh.centers[i];
                    f_blend[i] = (1.0 - opt.theta) * forcing(init.mode, r, t_old) +
                                 opt.theta * forcing(init.mode, r, t_new);
                }
                f_ptr = &f_blend;
            }
            stepper.advance(u, f_ptr);
            if (s % static_cast<std::size_t>(opt.snapshot_stride) == 0 || s == n_steps) {
                sol.times.push_back(t_new);
                sol.snapshots.push_back(u);
            }
        }
        out[mi] = std::move(sol);
    };

    const int threads = std::max(1, opt.threads);
    if (threads == 1 || n_modes <= 1) {
        for (std::size_t mi = 0; mi < n_modes; ++mi) solve_one(mi);
    } else {
        std::vector<std::thread> pool;
        std::size_t next = 0;
        const std::size_t chunk = (n_modes + threads - 1) / threads;
        for (int t = 0; t < threads && next < n_modes; ++t) {
            const std::size_t begin = next;
            const std::size_t end = std::min(n_modes, begin + chunk);
            next = end;
            pool.emplace_back([&, begin, end] {
                for (std::size_t mi = begin; mi < end; ++mi) solve_one(mi);
            });
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

} // namespace detail

// Advances every mode of the full layered problem independently on [0, T].
inline std::vector<ModeSolution> solve_full(const LayerConfig& config,
                                            const RadialMesh& mesh,
                                            const std::vector<ModeProfile>& u0,
                                            const ModeForcing& forcing,
                                            const SolveOptions& opt) {
    return detail::run_modes(
        mesh,
        [&](int l) { return assemble_mode_operator(mesh, config, l, opt.outer); },
        u0, forcing, opt);
}

// sqrt of the discrete L^2(ball) norm squared at snapshot time t.
inline double ball_l2_norm(const std::vector<ModeSolution>& solutions,
                           const RadialMesh& mesh, double t) {
    double sum = 0.0;
    for (const ModeSolution& sol : solutions) {
        std::size_t idx = sol.times.size();
        for (std::size_t s = 0; s < sol.times.size(); ++s)
            if (std::abs(sol.times[s] - t) <= 1e-12 * std::max(1.0, std::abs(t))) {
                idx = s;
                break;
            }
        if (idx == sol.times.size())
            throw std::invalid_argument("ball_l2_norm: time not stored");
        const std::vector<double>& u = sol.snapshots[idx];
        for (std::size_t i = 0; i < u.size(); ++i)
            sum += mesh.volumes[i] * u[i] * u[i];
    }
    return std::sqrt(sum);
}

} // namespace ebc
