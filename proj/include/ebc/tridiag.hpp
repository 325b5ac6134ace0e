#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ebc {

// Tridiagonal matrix in band storage: lower[i] couples row i to i-1,
// upper[i] couples row i to i+1 (lower[0] and upper[n-1] unused).
struct Tridiagonal {
    std::vector<double> lower, diag, upper;

    Tridiagonal() = default;
    explicit Tridiagonal(std::size_t n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

    std::size_t size() const { return diag.size(); }

    std::vector<double> apply(const std::vector<double>& x) const {
        const std::size_t n = size();
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double v = diag[i] * x[i];
            if (i > 0) v += lower[i] * x[i - 1];
            if (i + 1 < n) v += upper[i] * x[i + 1];
            y[i] = v;
        }
        return y;
    }
};

// LU factorization of a tridiagonal matrix (Thomas algorithm, no pivoting;
// the solver matrices here are strictly diagonally dominant).
struct TridiagonalLU {
    std::vector<double> inv_diag; // 1 / u_ii
    std::vector<double> lmul;     // l_i = a_i / u_{i-1,i-1}
    std::vector<double> upper;

    TridiagonalLU() = default;

    explicit TridiagonalLU(const Tridiagonal& a) { factor(a); }

    void factor(const Tridiagonal& a) {
        const std::size_t n = a.size();
        inv_diag.assign(n, 0.0);
        lmul.assign(n, 0.0);
        upper = a.upper;
        double u = a.diag[0];
        if (u == 0.0) throw std::runtime_error("TridiagonalLU: singular pivot");
        inv_diag[0] = 1.0 / u;
        for (std::size_t i = 1; i < n; ++i) {
            lmul[i] = a.lower[i] * inv_diag[i - 1];
            u = a.diag[i] - lmul[i] * a.upper[i - 1];
            if (u == 0.0) throw std::runtime_error("TridiagonalLU: singular pivot");
            inv_diag[i] = 1.0 / u;
        }
    }

    void solve_in_place(std::vector<double>& rhs) const {
        const std::size_t n = inv_diag.size();
        if (rhs.size() != n) throw std::invalid_argument("TridiagonalLU: size mismatch");
        for (std::size_t i = 1; i < n; ++i) rhs[i] -= lmul[i] * rhs[i - 1];
        rhs[n - 1] *= inv_diag[n - 1];
        for (std::size_t i = n - 1; i-- > 0;)
            rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) * inv_diag[i];
    }

    std::vector<double> solve(std::vector<double> rhs) const {
        solve_in_place(rhs);
        return rhs;
    }
};

} // namespace ebc
