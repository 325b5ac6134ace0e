#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ebc/sphere.hpp"

namespace ebc {

enum class Region { Inner, Layer, Outer };

// Geometry and material data of the layered problem.
struct LayerConfig {
    SphereGeometry geom;
    double delta = 0.1; // layer thickness, interfaces at r1 and r1+delta
    double sigma = 1.0; // normal conductivity in the layer
    double mu = 1.0;    // tangential conductivity in the layer
    double k1 = 1.0;    // bulk conductivity inside
    double k2 = 1.0;    // bulk conductivity outside

    LayerConfig() = default;
    LayerConfig(SphereGeometry g, double delta_, double sigma_, double mu_,
                double k1_, double k2_)
        : geom(g), delta(delta_), sigma(sigma_), mu(mu_), k1(k1_), k2(k2_) {
        validate();
    }

    void validate() const {
        if (!(delta > 0.0) || !(geom.r1 + delta < geom.r2))
            throw std::invalid_argument("LayerConfig: need 0 < delta < r2 - r1");
        if (!(sigma > 0.0) || !(mu > 0.0) || !(k1 > 0.0) || !(k2 > 0.0))
            throw std::invalid_argument("LayerConfig: conductivities must be positive");
    }
};

// Cell-centered radial mesh on (0, r_outer).  Interfaces are always mesh
// nodes, so every cell lies in exactly one material region.
struct RadialMesh {
    std::vector<double> nodes;   // cell faces, nodes[0] = 0, strictly increasing
    std::vector<double> centers;
    std::vector<double> volumes; // integral of r^2 dr over the cell
    std::vector<Region> region;

    std::size_t cell_count() const { return centers.size(); }

    double center(std::size_t i) const { return centers[i]; }
    double left_face(std::size_t i) const { return nodes[i]; }
    double right_face(std::size_t i) const { return nodes[i + 1]; }
    double outer_radius() const { return nodes.back(); }

    double total_volume() const {
        double v = 0.0;
        for (double x : volumes) v += x;
        return v;
    }
};

namespace detail {

// Appends n cell faces partitioning [a, b].  ratio is the total
// coarsest/finest size factor: ratio > 1 shrinks cells geometrically toward
// b, ratio < 1 toward a, ratio == 1 uniform.  Expressed as a total factor so
// refining n drives every cell size to zero at the same rate.
inline void append_graded(std::vector<double>& nodes, double a, double b, int n,
                          double ratio) {
    double q = 1.0; // adjacent-size factor left to right
    if (n > 1 && std::abs(ratio - 1.0) > 1e-14)
        q = std::pow(1.0 / ratio, 1.0 / (n - 1));
    double size0;
    if (std::abs(q - 1.0) < 1e-14) {
        size0 = (b - a) / n;
    } else {
        size0 = (b - a) * (1.0 - q) / (1.0 - std::pow(q, n));
    }
    double r = a, s = size0;
    for (int j = 0; j < n - 1; ++j) {
        r += s;
        nodes.push_back(r);
        s *= q;
    }
    nodes.push_back(b); // exact endpoint, no roundoff drift
}

inline void finish_mesh(RadialMesh& mesh, double r1, double r1d) {
    const std::size_t n = mesh.nodes.size() - 1;
    mesh.centers.resize(n);
    mesh.volumes.resize(n);
    mesh.region.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = mesh.nodes[i], b = mesh.nodes[i + 1];
        if (!(b > a)) throw std::invalid_argument("RadialMesh: nodes not increasing");
        mesh.centers[i] = 0.5 * (a + b);
        mesh.volumes[i] = (b * b * b - a * a * a) / 3.0;
        if (b <= r1)
            mesh.region[i] = Region::Inner;
        else if (b <= r1d)
            mesh.region[i] = Region::Layer;
        else
            mesh.region[i] = Region::Outer;
    }
}

} // namespace detail

// Three-region mesh for the full problem: graded toward the interfaces in
// the bulk regions, uniform inside the layer.
inline RadialMesh build_mesh(const LayerConfig& config, int n_inner, int n_layer,
                             int n_outer, double grading = 3.0) {
    config.validate();
    if (n_inner < 4 || n_outer < 4)
        throw std::invalid_argument("build_mesh: bulk cell counts >= 4 required");
    if (n_layer < 16)
        throw std::invalid_argument("build_mesh: n_layer >= 16 required");
    const double r1 = config.geom.r1;
    const double r1d = r1 + config.delta;
    const double eps = std::numeric_limits<double>::epsilon();
    if (config.delta / n_layer < 32.0 * eps * r1d)
        throw std::invalid_argument("build_mesh: layer too thin for requested resolution");

    RadialMesh mesh;
    mesh.nodes.reserve(n_inner + n_layer + n_outer + 1);
    mesh.nodes.push_back(0.0);
    detail::append_graded(mesh.nodes, 0.0, r1, n_inner, grading);      // fine at r1
    detail::append_graded(mesh.nodes, r1, r1d, n_layer, 1.0);          // uniform
    detail::append_graded(mesh.nodes, r1d, config.geom.r2, n_outer, 1.0 / grading); // fine at r1+delta
    detail::finish_mesh(mesh, r1, r1d);
    return mesh;
}

// Two-region mesh for the effective problem: the interface sphere r1 is a
// node; cells are graded toward it from both sides.  Layer cells absent;
// the "Layer" tag is never produced.
inline RadialMesh build_two_region_mesh(const SphereGeometry& geom, int n_inner,
                                        int n_outer, double grading = 3.0) {
    if (n_inner < 4 || n_outer < 4)
        throw std::invalid_argument("build_two_region_mesh: cell counts >= 4 required");
    RadialMesh mesh;
    mesh.nodes.reserve(n_inner + n_outer + 1);
    mesh.nodes.push_back(0.0);
    detail::append_graded(mesh.nodes, 0.0, geom.r1, n_inner, grading);
    detail::append_graded(mesh.nodes, geom.r1, geom.r2, n_outer, 1.0 / grading);
    detail::finish_mesh(mesh, geom.r1, geom.r1);
    return mesh;
}

} // namespace ebc
