#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ebc/full_solver.hpp"
#include "ebc/grid.hpp"
#include "ebc/mesh.hpp"
#include "ebc/selftest.hpp"
#include "ebc/surface.hpp"

#include "support.hpp"

using namespace ebc;
using Catch::Approx;

namespace {

// Manufactured solution u(r, t) = e^{-t} p(r) with p piecewise quadratic
// satisfying the transmission conditions at both interfaces; the forcing
// f = -e^{-t} (p + L p) is applied symbolically.
struct Manufactured {
    LayerConfig cfg;
    int l;
    double pa, pb;    // inner: pa + pb r^2 (pa = 0 for l >= 1)
    double c, d, e;   // layer: c + d (r-r1) + e (r-r1)^2
    double g, h;      // outer: g (r2-r) + h (r2-r)^2

    Manufactured(const LayerConfig& cfg_, int l_) : cfg(cfg_), l(l_) {
        const double r1 = cfg.geom.r1, rd = r1 + cfg.delta, r2 = cfg.geom.r2;
        pa = (l == 0) ? 1.0 : 0.0;
        pb = -0.3;
        c = pa + pb * r1 * r1;
        d = 2.0 * cfg.k1 * pb * r1 / cfg.sigma;
        e = 0.25;
        const double value_rd = c + d * cfg.delta + e * cfg.delta * cfg.delta;
        const double flux_rd = cfg.sigma * (d + 2.0 * e * cfg.delta);
        const double w = r2 - rd;
        h = -(value_rd + flux_rd * w / cfg.k2) / (w * w);
        g = -flux_rd / cfg.k2 - 2.0 * h * w;
    }

    double p(double r) const {
        const double r1 = cfg.geom.r1, rd = r1 + cfg.delta, r2 = cfg.geom.r2;
        if (r <= r1) return pa + pb * r * r;
        if (r <= rd) {
            const double s = r - r1;
            return c + d * s + e * s * s;
        }
        const double w = r2 - r;
        return g * w + h * w * w;
    }

    // L p = k_n (p'' + 2 p'/r) - k_t l(l+1) p / r^2 in each region
    double lp(double r) const {
        const double r1 = cfg.geom.r1, rd = r1 + cfg.delta, r2 = cfg.geom.r2;
        const double ll1 = static_cast<double>(l) * (l + 1);
        if (r <= r1) {
            const double dp = 2.0 * pb * r;
            return cfg.k1 * (2.0 * pb + 2.0 * dp / r) -
                   cfg.k1 * ll1 * (pa + pb * r * r) / (r * r);
        }
        if (r <= rd) {
            const double s = r - r1;
            const double dp = d + 2.0 * e * s;
            return cfg.sigma * (2.0 * e + 2.0 * dp / r) -
                   cfg.mu * ll1 * (c + d * s + e * s * s) / (r * r);
        }
        const double w = r2 - r;
        const double dp = -g - 2.0 * h * w;
        return cfg.k2 * (2.0 * h + 2.0 * dp / r) - cfg.k2 * ll1 * (g * w + h * w * w) / (r * r);
    }

    double forcing(double r, double t) const { return -std::exp(-t) * (p(r) + lp(r)); }

    double max_error(int scale, double big_t) const {
        const RadialMesh mesh = build_mesh(cfg, 20 * scale, 16 * scale, 20 * scale);
        std::vector<ModeProfile> u0(1);
        u0[0].mode = ModeIndex(l, 0);
        u0[0].values.resize(mesh.cell_count());
        for (std::size_t i = 0; i < mesh.cell_count(); ++i)
            u0[0].values[i] = p(mesh.centers[i]);
        SolveOptions opt;
        opt.T = big_t;
        opt.dt = big_t / (20.0 * scale);
        opt.theta = 0.5;
        opt.snapshot_stride = 1000000; // keep only start and end
        const auto sols = solve_full(
            cfg, mesh, u0,
            [this](const ModeIndex&, double r, double t) { return forcing(r, t); }, opt);
        const auto& u = sols[0].snapshots.back();
        double err = 0.0;
        const double decay = std::exp(-big_t);
        for (std::size_t i = 0; i < mesh.cell_count(); ++i)
            err = std::max(err, std::abs(u[i] - decay * p(mesh.centers[i])));
        return err;
    }
};

} // namespace

TEST_CASE("uniform-medium mode operator is the standard radial stencil", "[fullsolver]") {
    const SphereGeometry geom(1.0, 2.0);
    const double k = 1.7;
    const LayerConfig cfg(geom, 0.25, k, k, k, k);
    const RadialMesh mesh = build_mesh(cfg, 8, 16, 8, 1.0);
    const ModeOperator op = assemble_mode_operator(mesh, cfg, 0);
    for (std::size_t i = 1; i + 1 < mesh.cell_count(); ++i) {
        const double rf = mesh.nodes[i];
        const double t = rf * rf * k / (mesh.centers[i] - mesh.centers[i - 1]);
        REQUIRE(op.k.lower[i] == Approx(t).epsilon(1e-13));
        // interior row sums vanish: pure conservation, no reaction at l = 0
        REQUIRE(op.k.lower[i] + op.k.diag[i] + op.k.upper[i] ==
                Approx(0.0).margin(1e-9));
    }
    REQUIRE(op.k.diag[0] + op.k.upper[0] == Approx(0.0).margin(1e-10));
}

TEST_CASE("steady three-region transmission solution", "[fullsolver][oracle]") {
    const SphereGeometry geom(1.0, 2.0);
    const LayerConfig cfg(geom, 0.1, 0.05, 0.3, 1.0, 2.0);
    const SteadyTransmissionOracle oracle(cfg, 0.5, 3.0);

    const double e80 = oracle.max_relative_error(build_mesh(cfg, 32, 16, 32));
    const double e160 = oracle.max_relative_error(build_mesh(cfg, 64, 32, 64));
    const double e320 = oracle.max_relative_error(build_mesh(cfg, 128, 64, 128));
    REQUIRE(e80 <= 1e-3);
    REQUIRE(e80 / e160 > 3.2);
    REQUIRE(e80 / e160 < 4.8);
    REQUIRE(e160 / e320 > 3.2);
    REQUIRE(e160 / e320 < 4.8);
}

TEST_CASE("theta stepping basics", "[fullsolver]") {
    const SphereGeometry geom(1.0, 2.0);
    const LayerConfig cfg(geom, 0.1, 2.0, 0.5, 1.0, 3.0);
    const RadialMesh mesh = build_mesh(cfg, 16, 16, 16);
    const ModeOperator op = assemble_mode_operator(mesh, cfg, 2);

    SECTION("zero stays zero") {
        ModeState s{ModeIndex(2, 0), std::vector<double>(mesh.cell_count(), 0.0), 0.0};
        const ModeState next = step_theta(s, op, 1e-2, 1.0);
        for (double v : next.values) REQUIRE(v == 0.0);
        REQUIRE(next.time == Approx(1e-2));
    }
    SECTION("theta outside the unconditionally stable range is rejected") {
        ModeState s{ModeIndex(2, 0), std::vector<double>(mesh.cell_count(), 1.0), 0.0};
        REQUIRE_THROWS_AS(step_theta(s, op, 1e-2, 0.4), std::invalid_argument);
        REQUIRE_THROWS_AS(step_theta(s, op, -1e-2, 1.0), std::invalid_argument);
    }
    SECTION("implicit Euler decays the discrete norm") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        ModeState s{ModeIndex(2, 0), std::vector<double>(mesh.cell_count()), 0.0};
        for (auto& v : s.values) v = dist(rng);
        auto norm = [&](const std::vector<double>& u) {
            double acc = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i)
                acc += mesh.volumes[i] * u[i] * u[i];
            return std::sqrt(acc);
        };
        double prev = norm(s.values);
        for (int step = 0; step < 20; ++step) {
            s = step_theta(s, op, 5e-3, 1.0);
            const double cur = norm(s.values);
            REQUIRE(cur <= prev * (1.0 + 1e-14));
            prev = cur;
        }
    }
}

TEST_CASE("manufactured-solution convergence is second order", "[fullsolver][oracle]") {
    const SphereGeometry geom(1.0, 2.0);
    const LayerConfig cfg(geom, 0.15, 0.4, 2.5, 1.0, 2.0);
    for (int l : {0, 2}) {
        const Manufactured mms(cfg, l);
        const double e1 = mms.max_error(1, 0.25);
        const double e2 = mms.max_error(2, 0.25);
        const double e4 = mms.max_error(4, 0.25);
        const double order12 = std::log2(e1 / e2);
        const double order24 = std::log2(e2 / e4);
        CAPTURE(l, e1, e2, e4);
        REQUIRE(order12 > 1.7);
        REQUIRE(order12 < 2.2);
        REQUIRE(order24 > 1.7);
        REQUIRE(order24 < 2.2);
    }
}

TEST_CASE("solve_full trivial and analytic cases", "[fullsolver]") {
    const SphereGeometry geom(1.0, 2.0);

    SECTION("zero data stays zero") {
        const LayerConfig cfg(geom, 0.1, 2.0, 0.5, 1.0, 3.0);
        const RadialMesh mesh = build_mesh(cfg, 16, 16, 16);
        std::vector<ModeProfile> u0(2);
        u0[0] = {ModeIndex(0, 0), std::vector<double>(mesh.cell_count(), 0.0)};
        u0[1] = {ModeIndex(3, 1), std::vector<double>(mesh.cell_count(), 0.0)};
        SolveOptions opt;
        opt.T = 0.05;
        opt.dt = 1e-2;
        const auto sols = solve_full(cfg, mesh, u0, {}, opt);
        for (const auto& sol : sols)
            for (const auto& snap : sol.snapshots)
                for (double v : snap) REQUIRE(v == 0.0);
    }

    SECTION("uniform ball decays at the first Dirichlet eigenrate") {
        const double k = 0.8;
        const LayerConfig cfg(geom, 0.1, k, k, k, k);
        const RadialMesh mesh = build_mesh(cfg, 64, 16, 64);
        std::vector<ModeProfile> u0(1);
        u0[0].mode = ModeIndex(0, 0);
        u0[0].values.resize(mesh.cell_count());
        for (std::size_t i = 0; i < mesh.cell_count(); ++i) {
            const double r = mesh.centers[i];
            u0[0].values[i] = std::sin(std::numbers::pi * r / geom.r2) / r;
        }
        SolveOptions opt;
        opt.T = 0.2;
        opt.dt = 1e-3;
        opt.theta = 0.5;
        opt.snapshot_stride = 200;
        const auto sols = solve_full(cfg, mesh, u0, {}, opt);
        const double rate = k * std::numbers::pi * std::numbers::pi / (geom.r2 * geom.r2);
        const double expected = std::exp(-rate * opt.T);
        const double n0 = ball_l2_norm(sols, mesh, 0.0);
        const double nT = ball_l2_norm(sols, mesh, opt.T);
        REQUIRE(nT / n0 == Approx(expected).epsilon(2e-3));
    }
}

TEST_CASE("discrete energy decay across stiff configurations", "[fullsolver]") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 6; ++rep) {
        const double r1 = 0.5 + unit(rng);
        const SphereGeometry geom(r1, r1 + 0.5 + unit(rng));
        const double delta = 0.02 + 0.1 * unit(rng);
        const double sigma = std::pow(10.0, -4.0 + 8.0 * unit(rng));
        const double mu = std::pow(10.0, -2.0 + 4.0 * unit(rng));
        const LayerConfig cfg(geom, delta, sigma, mu, 0.5 + unit(rng), 0.5 + unit(rng));
        const RadialMesh mesh = build_mesh(cfg, 12, 16, 12);
        const int l = static_cast<int>(unit(rng) * 6);
        std::vector<ModeProfile> u0(1);
        u0[0].mode = ModeIndex(l, 0);
        u0[0].values.resize(mesh.cell_count());
        for (auto& v : u0[0].values) v = 2.0 * unit(rng) - 1.0;
        SolveOptions opt;
        opt.T = 0.05;
        opt.dt = 1e-3;
        opt.theta = 1.0;
        opt.snapshot_stride = 1;
        const auto sols = solve_full(cfg, mesh, u0, {}, opt);
        double prev = ball_l2_norm(sols, mesh, 0.0);
        for (std::size_t s = 1; s < sols[0].times.size(); ++s) {
            const double cur = ball_l2_norm(sols, mesh, sols[0].times[s]);
            REQUIRE(cur <= prev * (1.0 + 1e-13));
            prev = cur;
        }
    }
}

TEST_CASE("zero-flux configuration conserves heat content", "[fullsolver]") {
    const SphereGeometry geom(1.0, 2.0);
    const LayerConfig cfg(geom, 0.1, 0.01, 5.0, 1.0, 2.0);
    const RadialMesh mesh = build_mesh(cfg, 16, 16, 16);
    std::vector<ModeProfile> u0(1);
    u0[0].mode = ModeIndex(0, 0);
    u0[0].values.resize(mesh.cell_count());
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& v : u0[0].values) v = dist(rng);
    SolveOptions opt;
    opt.T = 0.02;
    opt.dt = 1e-3;
    opt.theta = 1.0;
    opt.snapshot_stride = 1;
    opt.outer = OuterBc::NeumannZero;
    const auto sols = solve_full(cfg, mesh, u0, {}, opt);
    auto content = [&](const std::vector<double>& u) {
        double acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) acc += mesh.volumes[i] * u[i];
        return acc;
    };
    const double c0 = content(sols[0].snapshots.front());
    for (const auto& snap : sols[0].snapshots)
        REQUIRE(content(snap) == Approx(c0).margin(1e-12 * std::abs(c0) + 1e-14));
}

TEST_CASE("mode order and thread count change no output bit", "[fullsolver]") {
    const SphereGeometry geom(1.0, 2.0);
    const LayerConfig cfg(geom, 0.1, 0.3, 4.0, 1.0, 2.0);
    const RadialMesh mesh = build_mesh(cfg, 16, 16, 16);
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<ModeProfile> u0;
    for (int l : {0, 1, 2, 4})
        for (int m = -std::min(l, 1); m <= std::min(l, 1); ++m) {
            ModeProfile p;
            p.mode = ModeIndex(l, m);
            p.values.resize(mesh.cell_count());
            for (auto& v : p.values) v = dist(rng);
            u0.push_back(p);
        }
    SolveOptions opt;
    opt.T = 0.02;
    opt.dt = 2e-3;
    const auto base = solve_full(cfg, mesh, u0, {}, opt);

    std::vector<ModeProfile> reversed(u0.rbegin(), u0.rend());
    const auto perm = solve_full(cfg, mesh, reversed, {}, opt);
    SolveOptions threaded = opt;
    threaded.threads = 3;
    const auto par = solve_full(cfg, mesh, u0, {}, threaded);

    for (std::size_t i = 0; i < base.size(); ++i) {
        const auto& rev = perm[perm.size() - 1 - i];
        REQUIRE(rev.mode == base[i].mode);
        REQUIRE(par[i].mode == base[i].mode);
        for (std::size_t s = 0; s < base[i].snapshots.size(); ++s)
            for (std::size_t j = 0; j < base[i].snapshots[s].size(); ++j) {
                REQUIRE(rev.snapshots[s][j] == base[i].snapshots[s][j]);
                REQUIRE(par[i].snapshots[s][j] == base[i].snapshots[s][j]);
            }
    }
}

TEST_CASE("ball L2 norm", "[fullsolver]") {
    const SphereGeometry geom(1.0, 2.0);
    const LayerConfig cfg(geom, 0.1, 1.0, 1.0, 1.0, 1.0);
    const RadialMesh mesh = build_mesh(cfg, 16, 16, 16);

    SECTION("zero field") {
        std::vector<ModeSolution> sols(1);
        sols[0].mode = ModeIndex(0, 0);
        sols[0].times = {0.0};
        sols[0].snapshots = {std::vector<double>(mesh.cell_count(), 0.0)};
        REQUIRE(ball_l2_norm(sols, mesh, 0.0) == 0.0);
    }
    SECTION("unit amplitude fills the ball volume") {
        std::vector<ModeSolution> sols(1);
        sols[0].mode = ModeIndex(2, 1);
        sols[0].times = {0.0};
        sols[0].snapshots = {std::vector<double>(mesh.cell_count(), 1.0)};
        REQUIRE(ball_l2_norm(sols, mesh, 0.0) ==
                Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-13));
    }
    SECTION("unknown snapshot time is an error") {
        std::vector<ModeSolution> sols(1);
        sols[0].mode = ModeIndex(0, 0);
        sols[0].times = {0.0};
        sols[0].snapshots = {std::vector<double>(mesh.cell_count(), 0.0)};
        REQUIRE_THROWS_AS(ball_l2_norm(sols, mesh, 0.5), std::invalid_argument);
    }
    SECTION("agrees with direct 3-D quadrature of the synthesized field") {
        const int lmax = 3;
        std::mt19937_64 rng(61);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<ModeSolution> sols;
        for (const ModeIndex mode : {ModeIndex(0, 0), ModeIndex(1, 1), ModeIndex(3, -2)}) {
            ModeSolution sol;
            sol.mode = mode;
            sol.times = {0.0};
            sol.snapshots.emplace_back(mesh.cell_count());
            for (auto& v : sol.snapshots[0]) v = dist(rng);
            sols.push_back(std::move(sol));
        }
        const QuadratureGrid grid = QuadratureGrid::for_degree(lmax);
        double acc = 0.0;
        for (std::size_t i = 0; i < mesh.cell_count(); ++i) {
            SurfaceFunction slice(lmax);
            for (const auto& sol : sols)
                slice.coeffs[sol.mode.flat()] = sol.snapshots[0][i];
            const auto values = synthesize_on_grid(slice, grid);
            double shell = 0.0;
            for (int it = 0; it < grid.n_theta; ++it)
                for (int jp = 0; jp < grid.n_phi; ++jp) {
                    const double v =
                        values[static_cast<std::size_t>(it) * grid.n_phi + jp];
                    shell += grid.weight(it) * v * v;
                }
            acc += shell * mesh.volumes[i];
        }
        REQUIRE(ball_l2_norm(sols, mesh, 0.0) == Approx(std::sqrt(acc)).margin(1e-8));
    }
}
