#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "ebc/grid.hpp"
#include "ebc/sphere.hpp"
#include "ebc/surface.hpp"

#include "support.hpp"

using namespace ebc;
using Catch::Approx;

TEST_CASE("Laplace-Beltrami eigenvalues", "[surface]") {
    REQUIRE(lb_eigenvalue(0, SphereGeometry(1, 2)) == 0.0);
    REQUIRE(lb_eigenvalue(1, SphereGeometry(1, 2)) == 2.0);
    REQUIRE(lb_eigenvalue(3, SphereGeometry(2, 4)) == Approx(3.0));

    SECTION("nonnegative and strictly increasing in l") {
        const SphereGeometry geom(0.7, 2.0);
        double prev = -1.0;
        for (int l = 0; l <= 20; ++l) {
            const double lam = lb_eigenvalue(l, geom);
            REQUIRE(lam >= 0.0);
            REQUIRE(lam > prev);
            prev = lam;
        }
    }
}

TEST_CASE("sphere geometry invariants", "[surface]") {
    REQUIRE_THROWS_AS(SphereGeometry(1.0, 0.5), std::invalid_argument);
    REQUIRE_THROWS_AS(SphereGeometry(-1.0, 2.0), std::invalid_argument);
    const SphereGeometry geom(2.0, 3.0);
    REQUIRE(geom.mean_curvature() == Approx(0.5));
    REQUIRE(geom.gaussian_curvature() == Approx(0.25));
    REQUIRE_THROWS_AS(ModeIndex(2, 3), std::invalid_argument);
}

TEST_CASE("synthesize point values", "[surface]") {
    SECTION("zero coefficients") {
        SurfaceFunction f(4);
        REQUIRE(synthesize(f, 1.2, 0.3) == 0.0);
    }
    SECTION("constant mode normalization") {
        const SurfaceFunction f = SurfaceFunction::single_mode(3, 0, 0);
        const double y00 = 1.0 / std::sqrt(4.0 * std::numbers::pi);
        REQUIRE(synthesize(f, 0.1, 0.0) == Approx(y00).epsilon(1e-12));
        REQUIRE(synthesize(f, 2.0, 4.0) == Approx(y00).epsilon(1e-12));
        REQUIRE(y00 == Approx(0.2820948).margin(1e-7));
    }
    SECTION("Y_10 at the pole, checked against its quadrature normalization") {
        const SurfaceFunction f = SurfaceFunction::single_mode(2, 1, 0);
        REQUIRE(synthesize(f, 0.0, 0.0) == Approx(0.4886025).margin(1e-7));
        // oracle: integral of Y_10^2 over the grid must be 1
        const QuadratureGrid grid = QuadratureGrid::for_degree(2);
        const auto values = synthesize_on_grid(f, grid);
        double integral = 0.0;
        for (int i = 0; i < grid.n_theta; ++i)
            for (int j = 0; j < grid.n_phi; ++j) {
                const double v = values[static_cast<std::size_t>(i) * grid.n_phi + j];
                integral += grid.weight(i) * v * v;
            }
        REQUIRE(integral == Approx(1.0).epsilon(1e-12));
    }
    SECTION("theta out of range") {
        SurfaceFunction f(1);
        REQUIRE_THROWS_AS(synthesize(f, -0.1, 0.0), std::invalid_argument);
    }
}

TEST_CASE("analyze is the left inverse of synthesize", "[surface]") {
    const int lmax = 8;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    SurfaceFunction f(lmax);
    for (auto& c : f.coeffs) c = dist(rng);
    const QuadratureGrid grid = QuadratureGrid::for_degree(lmax);
    const SurfaceFunction g = analyze(synthesize_on_grid(f, grid), grid, lmax);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        REQUIRE(g.coeffs[i] == Approx(f.coeffs[i]).margin(1e-12));
}

TEST_CASE("analyze special fields", "[surface]") {
    const int lmax = 5;
    const QuadratureGrid grid = QuadratureGrid::for_degree(lmax);
    SECTION("constant field projects onto (0,0) only") {
        const double c = 3.25;
        const std::vector<double> values(grid.point_count(), c);
        const SurfaceFunction f = analyze(values, grid, lmax);
        REQUIRE(f(0, 0) == Approx(c * std::sqrt(4.0 * std::numbers::pi)).epsilon(1e-13));
        for (int l = 1; l <= lmax; ++l)
            for (int m = -l; m <= l; ++m)
                REQUIRE(std::abs(f(l, m)) < 1e-12);
    }
    SECTION("sampled Y_21 gives a unit (2,1) coefficient") {
        const SurfaceFunction y21 = SurfaceFunction::single_mode(lmax, 2, 1);
        const SurfaceFunction f = analyze(synthesize_on_grid(y21, grid), grid, lmax);
        for (int l = 0; l <= lmax; ++l)
            for (int m = -l; m <= l; ++m) {
                if (l == 2 && m == 1)
                    REQUIRE(f(l, m) == Approx(1.0).epsilon(1e-12));
                else
                    REQUIRE(std::abs(f(l, m)) < 1e-12);
            }
    }
    SECTION("grid too coarse is rejected") {
        const std::vector<double> values(grid.point_count(), 0.0);
        REQUIRE_THROWS_AS(analyze(values, grid, lmax + 1), std::invalid_argument);
    }
}

TEST_CASE("surface inner product", "[surface]") {
    const SphereGeometry unit(1.0, 2.0);
    SECTION("single unit coefficient") {
        const SurfaceFunction f = SurfaceFunction::single_mode(3, 2, -1);
        REQUIRE(surface_inner_product(f, f, unit) == Approx(1.0));
    }
    SECTION("orthogonal single modes") {
        const SurfaceFunction f = SurfaceFunction::single_mode(3, 2, -1);
        const SurfaceFunction g = SurfaceFunction::single_mode(3, 3, 0);
        REQUIRE(surface_inner_product(f, g, unit) == 0.0);
    }
    SECTION("lmax mismatch") {
        REQUIRE_THROWS_AS(
            surface_inner_product(SurfaceFunction(2), SurfaceFunction(3), unit),
            std::invalid_argument);
    }
    SECTION("agrees with grid quadrature of the product") {
        const SphereGeometry geom(1.7, 3.0);
        const int lmax = 6;
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        SurfaceFunction f(lmax), g(lmax);
        for (auto& c : f.coeffs) c = dist(rng);
        for (auto& c : g.coeffs) c = dist(rng);
        const QuadratureGrid grid = QuadratureGrid::for_degree(lmax);
        const auto fv = synthesize_on_grid(f, grid);
        const auto gv = synthesize_on_grid(g, grid);
        double integral = 0.0;
        for (int i = 0; i < grid.n_theta; ++i)
            for (int j = 0; j < grid.n_phi; ++j) {
                const std::size_t k = static_cast<std::size_t>(i) * grid.n_phi + j;
                integral += grid.weight(i) * fv[k] * gv[k];
            }
        integral *= geom.r1 * geom.r1;
        REQUIRE(surface_inner_product(f, g, geom) == Approx(integral).margin(1e-10));
    }
    SECTION("symmetric and bilinear on random vectors") {
        const SphereGeometry geom(1.3, 2.0);
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (int rep = 0; rep < 20; ++rep) {
            SurfaceFunction f(4), g(4), h(4);
            for (auto& c : f.coeffs) c = dist(rng);
            for (auto& c : g.coeffs) c = dist(rng);
            for (auto& c : h.coeffs) c = dist(rng);
            const double a = dist(rng), b = dist(rng);
            REQUIRE(surface_inner_product(f, g, geom) ==
                    Approx(surface_inner_product(g, f, geom)).margin(1e-13));
            SurfaceFunction combo(4);
            for (std::size_t i = 0; i < combo.coeffs.size(); ++i)
                combo.coeffs[i] = a * f.coeffs[i] + b * g.coeffs[i];
            REQUIRE(surface_inner_product(combo, h, geom) ==
                    Approx(a * surface_inner_product(f, h, geom) +
                           b * surface_inner_product(g, h, geom))
                        .margin(1e-12));
        }
    }
}

TEST_CASE("Parseval identity on the physical surface", "[surface]") {
    const SphereGeometry geom(2.5, 4.0);
    const int lmax = 5;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    SurfaceFunction f(lmax);
    for (auto& c : f.coeffs) c = dist(rng);
    double sum = 0.0;
    for (double c : f.coeffs) sum += c * c;
    REQUIRE(surface_l2_norm(f, geom) == Approx(geom.r1 * std::sqrt(sum)).epsilon(1e-13));
}
