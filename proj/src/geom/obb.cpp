#include "hsm/geom/obb.hpp"

#include <algorithm>
#include <cmath>

#include "hsm/geom/polygon.hpp"

namespace hsm {

namespace {

// Jacobi eigenvalue iteration for a symmetric 3x3 matrix. Returns
// eigenvectors as columns; deterministic for a given input.
void symmetric_eigen3(const std::array<std::array<double, 3>, 3>& m_in,
                      std::array<Vec3, 3>& vectors) {
    std::array<std::array<double, 3>, 3> a = m_in;
    std::array<std::array<double, 3>, 3> v = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        if (off < 1e-15) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(a[p][q]) < 1e-18) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    for (int c = 0; c < 3; ++c) vectors[c] = Vec3{v[0][c], v[1][c], v[2][c]}.normalized();
}

Obb box_from_basis(const std::vector<Vec3>& pts, const std::array<Vec3, 3>& axes,
                   bool upright) {
    std::array<double, 3> lo{1e300, 1e300, 1e300};
    std::array<double, 3> hi{-1e300, -1e300, -1e300};
    for (const Vec3& p : pts) {
        for (int k = 0; k < 3; ++k) {
            double d = p.dot(axes[k]);
            lo[k] = std::min(lo[k], d);
            hi[k] = std::max(hi[k], d);
        }
    }
    Obb box;
    box.axes = axes;
    box.upright = upright;
    Vec3 center;
    for (int k = 0; k < 3; ++k) {
        box.half[k] = (hi[k] - lo[k]) * 0.5;
        center += axes[k] * ((hi[k] + lo[k]) * 0.5);
    }
    box.center = center;
    return box;
}

// Orthonormal basis of the plane perpendicular to n.
std::array<Vec3, 2> plane_basis(const Vec3& n) {
    Vec3 ref = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    Vec3 u = n.cross(ref).normalized();
    Vec3 v = n.cross(u).normalized();
    return {u, v};
}

// Best box with one axis pinned to n: rotating calipers in the
// perpendicular plane.
Obb box_with_normal(const std::vector<Vec3>& pts, const Vec3& n) {
    auto [u, v] = plane_basis(n);
    std::vector<Vec2> flat;
    flat.reserve(pts.size());
    for (const Vec3& p : pts) flat.push_back({p.dot(u), p.dot(v)});
    MinRect rect = min_area_rect(flat);
    Vec2 axis_v{-rect.axis_u.z, rect.axis_u.x};
    std::array<Vec3, 3> axes = {
        (u * rect.axis_u.x + v * rect.axis_u.z).normalized(),
        (u * axis_v.x + v * axis_v.z).normalized(),
        n,
    };
    return box_from_basis(pts, axes, false);
}

}  // namespace

Vec3 Obb::extent_along(const Vec3& dir) const {
    Vec3 d;
    for (int k = 0; k < 3; ++k) d += axes[k] * (half[k] * std::abs(axes[k].dot(dir)));
    return d;
}

Obb fit_obb(const std::vector<Vec3>& points, double tol) {
    if (points.size() < 3)
        throw DegenerateGeometryError("fit_obb requires at least 3 points");

    // Collinearity check against the longest chord.
    Vec3 lo = points[0], hi = points[0];
    for (const Vec3& p : points) {
        if (p.x + p.y + p.z < lo.x + lo.y + lo.z) lo = p;
    }
    double best_d = 0.0;
    for (const Vec3& p : points) {
        double d = (p - lo).norm();
        if (d > best_d) { best_d = d; hi = p; }
    }
    if (best_d < 1e-12)
        throw DegenerateGeometryError("fit_obb: all points coincident");
    Vec3 dir = (hi - lo) / best_d;
    double max_off = 0.0;
    for (const Vec3& p : points) {
        Vec3 rel = p - lo;
        max_off = std::max(max_off, (rel - dir * rel.dot(dir)).norm());
    }
    if (max_off < 1e-12)
        throw DegenerateGeometryError("fit_obb: all points collinear");

    // Upright box: exact via min-area rectangle of the xz projection.
    std::vector<Vec2> flat;
    flat.reserve(points.size());
    for (const Vec3& p : points) flat.push_back({p.x, p.z});
    MinRect rect = min_area_rect(flat);
    Vec2 axis_v{-rect.axis_u.z, rect.axis_u.x};
    std::array<Vec3, 3> up_axes = {
        Vec3{rect.axis_u.x, 0.0, rect.axis_u.z},
        Vec3{0.0, 1.0, 0.0},
        Vec3{axis_v.x, 0.0, axis_v.z},
    };
    Obb upright = box_from_basis(points, up_axes, true);

    // Unconstrained box: plane-aligned candidates from the covariance
    // eigenbasis, plus the upright solution itself.
    Vec3 centroid;
    for (const Vec3& p : points) centroid += p;
    centroid = centroid / static_cast<double>(points.size());
    std::array<std::array<double, 3>, 3> cov{};
    for (const Vec3& p : points) {
        Vec3 d = p - centroid;
        const double c[3] = {d.x, d.y, d.z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) cov[i][j] += c[i] * c[j];
    }
    std::array<Vec3, 3> eig;
    symmetric_eigen3(cov, eig);

    Obb best_free = upright;
    for (const Vec3& n : eig) {
        Obb cand = box_with_normal(points, n);
        if (cand.volume() < best_free.volume() - 1e-15) best_free = cand;
    }

    if (upright.volume() <= (1.0 + tol) * best_free.volume()) return upright;
    return best_free;
}

PlaneClass classify_plane(const Obb& box, double r_plane, double t_hzn, double t_vert) {
    int s = 0;
    for (int k = 1; k < 3; ++k)
        if (box.half[k] < box.half[s]) s = k;
    PlaneClass out;
    for (int k = 0; k < 3; ++k) {
        if (k == s) continue;
        if (!(box.half[s] < r_plane * box.half[k])) return out;  // not planar
    }
    out.planar = true;
    Vec3 n = box.axes[s];
    if (std::abs(n.y) > 1e-12) {
        if (n.y < 0) n = n * -1.0;
    } else if (n.x < 0 || (std::abs(n.x) <= 1e-12 && n.z < 0)) {
        n = n * -1.0;
    }
    out.normal = n;
    double ny = std::abs(n.y);
    if (ny >= t_hzn)
        out.orientation = SurfaceOrientation::horizontal;
    else if (ny < t_vert)
        out.orientation = SurfaceOrientation::vertical;
    else
        out.orientation = SurfaceOrientation::neither;
    return out;
}

}  // namespace hsm
