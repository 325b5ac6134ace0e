#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "ebc/sphere.hpp"
#include "ebc/surface.hpp"

namespace ebc {

// Strip height for the rescaled harmonic-extension problem.  Infinity is a
// first-class value (the H -> infinity operators are part of the contract).
struct Height {
    double value = 1.0;

    Height() = default;
    explicit Height(double h) : value(h) {
        if (!(h > 0.0)) // rejects NaN, zero, negatives; +inf passes
            throw std::invalid_argument("Height: H must be positive (or infinite)");
    }

    static Height infinite() {
        Height h;
        h.value = std::numeric_limits<double>::infinity();
        return h;
    }

    bool is_infinite() const { return std::isinf(value); }

    friend bool operator==(const Height& a, const Height& b) { return a.value == b.value; }
};

// Which Dirichlet-to-Neumann flux trace of the strip extension is taken:
//   Combined  : flux at R=0 with matching data on both faces
//   FirstKind : flux at R=0 with zero data on the far face
//   SecondKind: flux at R=H with zero data on the far face
enum class DtnKind { Combined, FirstKind, SecondKind };

namespace detail {

// coth(x) = 1 + 2/(e^{2x} - 1).  Accurate for small x, saturates to 1 for
// large x without ever overflowing.
inline double coth_stable(double x) {
    if (std::isinf(x)) return 1.0;
    return 1.0 + 2.0 / std::expm1(2.0 * x);
}

// csch(x) = 2 e^{-x} / (1 - e^{-2x}); underflows gracefully to 0.
inline double csch_stable(double x) {
    if (std::isinf(x)) return 0.0;
    return 2.0 * std::exp(-x) / (-std::expm1(-2.0 * x));
}

} // namespace detail

// Coefficients (A, B) of the single-mode strip solution
//   psi(R) = A e^{sqrt(lam) R} + B e^{-sqrt(lam) R}
// with psi(0) = g1, psi(h) = g2.  Written in a decaying-exponential form so
// sqrt(lam)*h far beyond 700 neither overflows nor loses the B ~ g1 limit.
inline std::pair<double, double> strip_coeffs(double lam, double g1, double g2,
                                              double h) {
    if (!(lam > 0.0))
        throw std::invalid_argument("strip_coeffs: lam > 0 required (lam = 0 is the linear branch)");
    if (!(h > 0.0)) throw std::invalid_argument("strip_coeffs: h > 0 required");
    const double x = std::sqrt(lam) * h;
    const double em = std::exp(-x);
    const double denom = -std::expm1(-2.0 * x); // 1 - e^{-2x}
    const double a = em * (g2 - g1 * em) / denom;
    const double b = (g1 - g2 * em) / denom;
    return {a, b};
}

// Mode coefficient of psi_R at the inner face R = 0.
// lam = 0 uses the linear extension (g2 - g1)/h.
inline double psi_r_at_0(double lam, double g1, double g2, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("psi_r_at_0: h > 0 required");
    if (lam < 0.0) throw std::invalid_argument("psi_r_at_0: lam >= 0 required");
    if (lam == 0.0) return (g2 - g1) / h;
    const double s = std::sqrt(lam);
    const double x = s * h;
    return s * (g2 * detail::csch_stable(x) - g1 * detail::coth_stable(x));
}

// Mode coefficient of psi_R at the outer face R = h.
inline double psi_r_at_h(double lam, double g1, double g2, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("psi_r_at_h: h > 0 required");
    if (lam < 0.0) throw std::invalid_argument("psi_r_at_h: lam >= 0 required");
    if (lam == 0.0) return (g2 - g1) / h;
    const double s = std::sqrt(lam);
    const double x = s * h;
    return s * (g2 * detail::coth_stable(x) - g1 * detail::csch_stable(x));
}

// Single-mode multiplier of the requested Dirichlet-to-Neumann operator.
// lam > 0:
//   Combined  : -sqrt(lam) * tanh(sqrt(lam) H / 2)
//   FirstKind : -sqrt(lam) * coth(sqrt(lam) H)
//   SecondKind: -sqrt(lam) / sinh(sqrt(lam) H)
// The constant mode (lam = 0) is the linear extension, -1/H for all kinds.
// H = infinity: Combined, FirstKind -> -sqrt(lam); SecondKind -> 0.
inline double dtn_mode_multiplier(DtnKind kind, double lam, Height H) {
    if (lam < 0.0)
        throw std::invalid_argument("dtn_mode_multiplier: lam >= 0 required");
    if (lam == 0.0) return -1.0 / H.value; // -0.0 when H is infinite
    const double s = std::sqrt(lam);
    const double x = s * H.value;
    switch (kind) {
        case DtnKind::Combined:
            return -s * std::tanh(0.5 * x);
        case DtnKind::FirstKind:
            return -s * detail::coth_stable(x);
        case DtnKind::SecondKind:
            return -s * detail::csch_stable(x);
    }
    throw std::logic_error("dtn_mode_multiplier: unknown kind");
}

// Apply a DtN operator coefficient-wise on the eigenbasis of the interface
// sphere.  Diagonal, hence symmetric with respect to surface_inner_product.
inline SurfaceFunction apply_dtn(DtnKind kind, Height H, const SurfaceFunction& g,
                                 const SphereGeometry& geom) {
    SurfaceFunction out(g.lmax);
    for (int l = 0; l <= g.lmax; ++l) {
        const double mult = dtn_mode_multiplier(kind, lb_eigenvalue(l, geom), H);
        for (int m = -l; m <= l; ++m)
            out(l, m) = mult * g(l, m);
    }
    return out;
}

// Fractional Laplacian of order 1/2: multiplier +sqrt(lam_l);
// equals minus the FirstKind operator at H = infinity.
inline SurfaceFunction frac_laplacian_half(const SurfaceFunction& g,
                                           const SphereGeometry& geom) {
    SurfaceFunction out(g.lmax);
    for (int l = 0; l <= g.lmax; ++l) {
        const double mult = std::sqrt(lb_eigenvalue(l, geom));
        for (int m = -l; m <= l; ++m)
            out(l, m) = mult * g(l, m);
    }
    return out;
}

} // namespace ebc
