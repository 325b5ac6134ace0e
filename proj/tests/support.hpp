#pragma once

// Test-side oracles, kept independent of the library implementation paths
// they check.

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

// Dense second-order finite-difference solve of the two-point BVP
//   psi'' = lam * psi,  psi(0) = g1,  psi(h) = g2
// on n+1 equally spaced points, with a hand-rolled elimination (no library
// code).  Derivatives at the ends are read with one-sided fourth-order
// stencils so the O(dx^2) solve error dominates.
struct StripBvp {
    std::vector<double> psi;
    double dx = 0.0;

    StripBvp(double lam, double g1, double g2, double h, int n = 10000) {
        if (n < 8) throw std::invalid_argument("StripBvp: n too small");
        dx = h / n;
        psi.assign(n + 1, 0.0);
        psi[0] = g1;
        psi[n] = g2;
        // interior unknowns psi[1..n-1]: tridiagonal (1, -2-lam dx^2, 1)
        const int m = n - 1;
        std::vector<double> diag(m, -2.0 - lam * dx * dx), rhs(m, 0.0);
        rhs[0] = -g1;
        rhs[m - 1] = -g2;
        for (int i = 1; i < m; ++i) {
            const double w = 1.0 / diag[i - 1];
            diag[i] -= w;
            rhs[i] -= w * rhs[i - 1];
        }
        psi[m] = rhs[m - 1] / diag[m - 1];
        for (int i = m - 1; i >= 1; --i)
            psi[i] = (rhs[i - 1] - psi[i + 1]) / diag[i - 1];
    }

    double derivative_at_0() const {
        return (-25.0 * psi[0] + 48.0 * psi[1] - 36.0 * psi[2] + 16.0 * psi[3] -
                3.0 * psi[4]) /
               (12.0 * dx);
    }

    double derivative_at_h() const {
        const std::size_t n = psi.size() - 1;
        return (25.0 * psi[n] - 48.0 * psi[n - 1] + 36.0 * psi[n - 2] -
                16.0 * psi[n - 3] + 3.0 * psi[n - 4]) /
               (12.0 * dx);
    }
};

inline double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace oracle
