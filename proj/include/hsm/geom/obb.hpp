#pragma once

#include <array>
#include <vector>

#include "hsm/geom/vec.hpp"

namespace hsm {

struct Obb {
    Vec3 center;
    std::array<Vec3, 3> axes;   // orthonormal
    std::array<double, 3> half{0.0, 0.0, 0.0};
    bool upright = false;       // one axis is exactly +y

    double volume() const { return 8.0 * half[0] * half[1] * half[2]; }
    Vec3 extent_along(const Vec3& dir) const;
};

// Fits a minimum-volume box, preferring the vertically upright one
// unless its volume exceeds (1 + tol) times the unconstrained box.
// The upright case is exact (rotating calipers over the xz hull); the
// unconstrained case searches plane-aligned candidate bases.
Obb fit_obb(const std::vector<Vec3>& points, double tol = 0.01);

enum class SurfaceOrientation { horizontal, vertical, neither };

struct PlaneClass {
    bool planar = false;
    SurfaceOrientation orientation = SurfaceOrientation::neither;
    Vec3 normal;
};

// A box is planar when its smallest half-extent is below r_plane times
// each of the other two. The plane normal is the smallest-extent axis,
// sign-normalized toward +y.
PlaneClass classify_plane(const Obb& box, double r_plane = 0.1, double t_hzn = 0.95,
                          double t_vert = 0.05);

}  // namespace hsm
