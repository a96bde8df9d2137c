#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "skyshare/rng.hpp"

namespace skyshare {

enum class DeploymentKind { ground2d, uav2d, uav3d };

// Geometry of one network tier: a planar PPP (ground or fixed-altitude UAV
// layer) or a volumetric PPP between two horizontal planes.
struct Deployment {
    DeploymentKind kind = DeploymentKind::uav2d;
    double density = 0.0;        // per m^2 (ground2d/uav2d) or per m^3 (uav3d)
    double altitude = 0.0;       // h, uav2d
    double altitude_min = 0.0;   // h1, uav3d
    double vertical_range = 0.0; // delta h, uav3d

    static Deployment ground(double lambda) {
        Deployment d;
        d.kind = DeploymentKind::ground2d;
        d.density = lambda;
        d.validate();
        return d;
    }

    static Deployment uav_2d(double lambda, double h) {
        Deployment d;
        d.kind = DeploymentKind::uav2d;
        d.density = lambda;
        d.altitude = h;
        d.validate();
        return d;
    }

    static Deployment uav_3d(double lambda, double h1, double dh) {
        Deployment d;
        d.kind = DeploymentKind::uav3d;
        d.density = lambda;
        d.altitude_min = h1;
        d.vertical_range = dh;
        d.validate();
        return d;
    }

    void validate() const {
        if (!(density >= 0.0))
            throw std::invalid_argument("Deployment: density must be >= 0");
        if (kind == DeploymentKind::uav2d && !(altitude > 0.0))
            throw std::invalid_argument("Deployment: uav2d requires altitude > 0");
        if (kind == DeploymentKind::uav3d &&
            (!(altitude_min > 0.0) || !(vertical_range >= 0.0)))
            throw std::invalid_argument(
                "Deployment: uav3d requires altitude_min > 0 and vertical_range >= 0");
    }

    // Density per unit ground area (uav3d collapses to density * range).
    double projected_density() const noexcept {
        return kind == DeploymentKind::uav3d ? density * vertical_range : density;
    }
};

struct Point3 {
    double x, y, z;
};

using PointSet = std::vector<Point3>;

namespace detail {

inline std::uint64_t poisson_count(double mean, Xoshiro256& rng) {
    if (mean <= 0.0) return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(rng);
}

// Uniform point in the origin-centred disk of the given radius,
// rejection-sampled to avoid trig in hot loops.
inline void uniform_in_disk(double radius, Xoshiro256& rng, double& x, double& y) {
    for (;;) {
        const double u = 2.0 * rng.uniform() - 1.0;
        const double v = 2.0 * rng.uniform() - 1.0;
        if (u * u + v * v <= 1.0) {
            x = u * radius;
            y = v * radius;
            return;
        }
    }
}

}  // namespace detail

// Homogeneous PPP on a disk of the given radius at height z.
// Count ~ Poisson(density * pi * radius^2), positions uniform on the disk.
inline PointSet sample_disk_ppp(double density, double radius, double z,
                                std::uint64_t seed) {
    if (!(density >= 0.0)) throw std::invalid_argument("sample_disk_ppp: density < 0");
    if (!(radius > 0.0)) throw std::invalid_argument("sample_disk_ppp: radius <= 0");
    Xoshiro256 rng(seed);
    const double pi = 3.14159265358979323846;
    const std::uint64_t n = detail::poisson_count(density * pi * radius * radius, rng);
    PointSet pts;
    pts.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        double x, y;
        detail::uniform_in_disk(radius, rng, x, y);
        pts.push_back({x, y, z});
    }
    return pts;
}

// Homogeneous PPP in the cylinder disk(radius) x [h1, h1 + dh]; dh = 0
// degenerates to a planar PPP at z = h1 (with zero expected count unless
// the caller rescaled the density, which the 3D->2D transition tests do).
inline PointSet sample_slab_ppp(double density, double radius, double h1,
                                double dh, std::uint64_t seed) {
    if (!(density >= 0.0)) throw std::invalid_argument("sample_slab_ppp: density < 0");
    if (!(radius > 0.0)) throw std::invalid_argument("sample_slab_ppp: radius <= 0");
    if (!(dh >= 0.0)) throw std::invalid_argument("sample_slab_ppp: dh < 0");
    Xoshiro256 rng(seed);
    const double pi = 3.14159265358979323846;
    const std::uint64_t n =
        detail::poisson_count(density * pi * radius * radius * dh, rng);
    PointSet pts;
    pts.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        double x, y;
        detail::uniform_in_disk(radius, rng, x, y);
        pts.push_back({x, y, h1 + dh * rng.uniform()});
    }
    return pts;
}

}  // namespace skyshare
