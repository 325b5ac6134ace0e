#pragma once

#include <cmath>
#include <stdexcept>

namespace ebc {

// Concentric geometry: the interface sphere of radius r1 sits inside the
// ball of radius r2.  On a sphere the mean curvature is 1/r1 and the
// Gaussian curvature 1/r1^2, so all curvilinear-metric factors are explicit.
struct SphereGeometry {
    double r1 = 1.0;
    double r2 = 2.0;

    SphereGeometry() = default;
    SphereGeometry(double r1_, double r2_) : r1(r1_), r2(r2_) {
        if (!(r1 > 0.0) || !(r2 > r1))
            throw std::invalid_argument("SphereGeometry: need 0 < r1 < r2");
    }

    double mean_curvature() const { return 1.0 / r1; }
    double gaussian_curvature() const { return 1.0 / (r1 * r1); }
};

// Surface-harmonic mode (l, m) with |m| <= l.
struct ModeIndex {
    int l = 0;
    int m = 0;

    ModeIndex() = default;
    ModeIndex(int l_, int m_) : l(l_), m(m_) {
        if (l < 0 || m < -l || m > l)
            throw std::invalid_argument("ModeIndex: need l >= 0 and |m| <= l");
    }

    // Packed position inside a degree-ordered coefficient array.
    int flat() const { return l * l + l + m; }

    friend bool operator==(const ModeIndex& a, const ModeIndex& b) {
        return a.l == b.l && a.m == b.m;
    }
    friend bool operator<(const ModeIndex& a, const ModeIndex& b) {
        return a.flat() < b.flat();
    }
};

inline int coeff_count(int lmax) { return (lmax + 1) * (lmax + 1); }

// Laplace-Beltrami eigenvalue on the radius-r1 sphere: l(l+1)/r1^2.
inline double lb_eigenvalue(int l, const SphereGeometry& geom) {
    if (l < 0) throw std::invalid_argument("lb_eigenvalue: l >= 0 required");
    return static_cast<double>(l) * (l + 1) / (geom.r1 * geom.r1);
}

} // namespace ebc
