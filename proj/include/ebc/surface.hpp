#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ebc/grid.hpp"
#include "ebc/sphere.hpp"

namespace ebc {

// Normalization convention (used everywhere in this library): real
// spherical harmonics Y_lm orthonormal with respect to the *unit* sphere
// measure dOmega,
//   Y_l0      = S_l0(cos theta),
//   Y_lm, m>0 = sqrt(2) * S_lm(cos theta) * cos(m phi),
//   Y_l,-m    = sqrt(2) * S_lm(cos theta) * sin(m phi),
// where S_lm = sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!) * P_lm (no
// Condon-Shortley phase).  Norms on the physical surface of radius r1 pick
// up a factor r1^2 from ds = r1^2 dOmega.

// Fills tab[flat(l,m)] for 0 <= m <= l <= lmax with S_lm(x), sin_theta =
// sqrt(1-x^2).  Stable normalized three-term recurrence, upward in l.
inline void legendre_normalized(int lmax, double x, double sin_theta,
                                std::vector<double>& tab) {
    tab.assign(coeff_count(lmax), 0.0);
    auto at = [&tab](int l, int m) -> double& { return tab[l * l + l + m]; };
    at(0, 0) = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    for (int m = 1; m <= lmax; ++m)
        at(m, m) = at(m - 1, m - 1) * sin_theta *
                   std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    for (int m = 0; m < lmax; ++m)
        at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * x * at(m, m);
    for (int m = 0; m <= lmax; ++m)
        for (int l = m + 2; l <= lmax; ++l) {
            const double a = std::sqrt((4.0 * l * l - 1.0) /
                                       (static_cast<double>(l) * l - static_cast<double>(m) * m));
            const double b = std::sqrt(((l - 1.0) * (l - 1.0) - static_cast<double>(m) * m) /
                                       (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
            at(l, m) = a * (x * at(l - 1, m) - b * at(l - 2, m));
        }
}

// Real orthonormal basis value Y_lm at (theta, phi) given the S table.
inline double harmonic_from_table(const std::vector<double>& tab, int l, int m,
                                  double phi) {
    static constexpr double sqrt2 = std::numbers::sqrt2;
    if (m == 0) return tab[l * l + l];
    if (m > 0) return sqrt2 * tab[l * l + l + m] * std::cos(m * phi);
    return sqrt2 * tab[l * l + l - m] * std::sin(-m * phi);
}

// A function on the interface sphere stored as real orthonormal
// spherical-harmonic coefficients up to degree lmax.
struct SurfaceFunction {
    int lmax = 0;
    std::vector<double> coeffs; // size (lmax+1)^2, packed by ModeIndex::flat()

    SurfaceFunction() : coeffs(1, 0.0) {}
    explicit SurfaceFunction(int lmax_)
        : lmax(lmax_), coeffs(coeff_count(lmax_), 0.0) {
        if (lmax_ < 0) throw std::invalid_argument("SurfaceFunction: lmax >= 0");
    }

    double& operator()(int l, int m) { return coeffs[ModeIndex(l, m).flat()]; }
    double operator()(int l, int m) const { return coeffs[ModeIndex(l, m).flat()]; }

    static SurfaceFunction single_mode(int lmax, int l, int m, double value = 1.0) {
        SurfaceFunction f(lmax);
        f(l, m) = value;
        return f;
    }
};

// Pointwise evaluation. theta in [0, pi].
inline double synthesize(const SurfaceFunction& f, double theta, double phi) {
    if (theta < 0.0 || theta > std::numbers::pi)
        throw std::invalid_argument("synthesize: theta outside [0, pi]");
    std::vector<double> tab;
    legendre_normalized(f.lmax, std::cos(theta), std::sin(theta), tab);
    double sum = 0.0;
    for (int l = 0; l <= f.lmax; ++l)
        for (int m = -l; m <= l; ++m)
            sum += f(l, m) * harmonic_from_table(tab, l, m, phi);
    return sum;
}

// Values of f on every grid point, laid out theta-major: v[i*n_phi + j].
inline std::vector<double> synthesize_on_grid(const SurfaceFunction& f,
                                              const QuadratureGrid& grid) {
    std::vector<double> out(grid.point_count(), 0.0);
    std::vector<double> tab;
    for (int i = 0; i < grid.n_theta; ++i) {
        const double x = grid.cos_theta[i];
        legendre_normalized(f.lmax, x, std::sqrt(1.0 - x * x), tab);
        for (int j = 0; j < grid.n_phi; ++j) {
            double sum = 0.0;
            for (int l = 0; l <= f.lmax; ++l)
                for (int m = -l; m <= l; ++m)
                    sum += f(l, m) * harmonic_from_table(tab, l, m, grid.phi[j]);
            out[static_cast<std::size_t>(i) * grid.n_phi + j] = sum;
        }
    }
    return out;
}

// Quadrature projection of grid samples onto each basis function.
// Requires a grid that integrates degree-lmax products exactly.
inline SurfaceFunction analyze(const std::vector<double>& values,
                               const QuadratureGrid& grid, int lmax) {
    if (!grid.exact_for_degree(lmax))
        throw std::invalid_argument(
            "analyze: grid too coarse for lmax (need n_theta >= lmax+1, n_phi >= 2*lmax+1)");
    if (values.size() != grid.point_count())
        throw std::invalid_argument("analyze: value count does not match grid");
    SurfaceFunction f(lmax);
    std::vector<double> tab;
    for (int i = 0; i < grid.n_theta; ++i) {
        const double x = grid.cos_theta[i];
        const double w = grid.weight(i);
        legendre_normalized(lmax, x, std::sqrt(1.0 - x * x), tab);
        for (int j = 0; j < grid.n_phi; ++j) {
            const double wv = w * values[static_cast<std::size_t>(i) * grid.n_phi + j];
            if (wv == 0.0) continue;
            for (int l = 0; l <= lmax; ++l)
                for (int m = -l; m <= l; ++m)
                    f(l, m) += wv * harmonic_from_table(tab, l, m, grid.phi[j]);
        }
    }
    return f;
}

// <f, g> on the physical surface: r1^2 * sum of coefficient products.
inline double surface_inner_product(const SurfaceFunction& f,
                                    const SurfaceFunction& g,
                                    const SphereGeometry& geom) {
    if (f.lmax != g.lmax)
        throw std::invalid_argument("surface_inner_product: lmax mismatch");
    double dot = 0.0;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        dot += f.coeffs[i] * g.coeffs[i];
    return geom.r1 * geom.r1 * dot;
}

inline double surface_l2_norm(const SurfaceFunction& f, const SphereGeometry& geom) {
    return std::sqrt(surface_inner_product(f, f, geom));
}

} // namespace ebc
