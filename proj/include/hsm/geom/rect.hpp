#pragma once

#include <array>

#include "hsm/geom/polygon.hpp"
#include "hsm/geom/vec.hpp"

namespace hsm {

// Rotated rectangle in the xz plane: the footprint of an object or
// arrangement with half-width along its local x and half-depth along
// its local z, rotated by yaw degrees.
struct RotRect {
    Vec2 center;
    double half_w = 0.0;
    double half_d = 0.0;
    double yaw = 0.0;

    std::array<Vec2, 4> corners() const {
        std::array<Vec2, 4> c;
        const Vec2 ux = rotate_yaw(Vec2{1.0, 0.0}, yaw);
        const Vec2 uz = rotate_yaw(Vec2{0.0, 1.0}, yaw);
        c[0] = center + ux * (-half_w) + uz * (-half_d);
        c[1] = center + ux * (half_w) + uz * (-half_d);
        c[2] = center + ux * (half_w) + uz * (half_d);
        c[3] = center + ux * (-half_w) + uz * (half_d);
        return c;
    }

    Polygon2 to_polygon() const {
        auto c = corners();
        return Polygon2{{c[0], c[1], c[2], c[3]}};
    }

    double area() const { return 4.0 * half_w * half_d; }
};

// Separating-axis overlap test. Touching edges (interpenetration depth
// below eps) does not count as overlap.
bool rects_overlap(const RotRect& a, const RotRect& b, double eps = 1e-9);

// Overlap against a convex polygon via SAT. The polygon must be convex.
bool rect_overlaps_convex(const RotRect& r, const Polygon2& convex, double eps = 1e-9);

// True iff the rectangle lies fully inside the simple polygon (touching
// the boundary allowed). Exact for simple polygons: all corners inside,
// no boundary edge properly crossing a rectangle edge, and no polygon
// vertex strictly interior to the rectangle.
bool rect_inside_polygon(const RotRect& r, const Polygon2& poly, double eps = 1e-9);

// Intersection area of two rotated rectangles (exact, convex clip).
double rect_intersection_area(const RotRect& a, const RotRect& b);

}  // namespace hsm
