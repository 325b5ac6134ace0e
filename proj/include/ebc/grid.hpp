#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ebc {

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
// Exact for polynomials of degree <= 2n-1.
inline void gauss_legendre(int n, std::vector<double>& nodes,
                           std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

// Product quadrature on the unit sphere: Gauss-Legendre in cos(theta),
// uniform trapezoid in phi.  Integrates spherical-harmonic products
// exactly when n_theta >= lmax+1 and n_phi >= 2*lmax+1.
struct QuadratureGrid {
    int n_theta = 0;
    int n_phi = 0;
    std::vector<double> cos_theta;   // Gauss-Legendre nodes in x = cos(theta)
    std::vector<double> theta_weight;
    std::vector<double> phi;         // uniform azimuth nodes

    QuadratureGrid() = default;
    QuadratureGrid(int n_theta_, int n_phi_) : n_theta(n_theta_), n_phi(n_phi_) {
        if (n_theta < 1 || n_phi < 1)
            throw std::invalid_argument("QuadratureGrid: positive node counts required");
        gauss_legendre(n_theta, cos_theta, theta_weight);
        phi.resize(n_phi);
        for (int j = 0; j < n_phi; ++j)
            phi[j] = 2.0 * std::numbers::pi * j / n_phi;
    }

    // Smallest grid that is product-exact up to degree lmax.
    static QuadratureGrid for_degree(int lmax) {
        return QuadratureGrid(lmax + 1, 2 * lmax + 1);
    }

    bool exact_for_degree(int lmax) const {
        return n_theta >= lmax + 1 && n_phi >= 2 * lmax + 1;
    }

    std::size_t point_count() const {
        return static_cast<std::size_t>(n_theta) * n_phi;
    }

    // Quadrature weight of point (i, j); the phi factor 2*pi/n_phi is folded in.
    double weight(int i) const {
        return theta_weight[i] * (2.0 * std::numbers::pi / n_phi);
    }
};

} // namespace ebc
