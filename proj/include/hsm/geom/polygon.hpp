#pragma once

#include <vector>

#include "hsm/geom/vec.hpp"

namespace hsm {

// Simple polygon in the xz plane. Vertex order may be clockwise or
// counterclockwise; area() is unsigned. Holes are never represented as
// rings; they appear as separate obstacle polygons.
struct Polygon2 {
    std::vector<Vec2> pts;

    Polygon2() = default;
    explicit Polygon2(std::vector<Vec2> p) : pts(std::move(p)) {}

    size_t size() const { return pts.size(); }
    const Vec2& operator[](size_t i) const { return pts[i]; }

    static Polygon2 rect(double min_x, double min_z, double max_x, double max_z) {
        return Polygon2{{{min_x, min_z}, {max_x, min_z}, {max_x, max_z}, {min_x, max_z}}};
    }
};

double signed_area(const Polygon2& p);
inline double area(const Polygon2& p) { return std::abs(signed_area(p)); }

// True iff the polygon has >= 3 vertices, positive area, and no
// self-intersections (consecutive duplicate vertices are tolerated).
bool is_simple(const Polygon2& p);

// Throws InvalidPolygonError when the polygon is not simple.
void require_simple(const Polygon2& p, const char* label);

// Boundary-inclusive point containment.
bool contains_point(const Polygon2& poly, const Vec2& p);

// Exact area of a ∩ b, summed over all intersection pieces.
// Throws InvalidPolygonError on self-intersecting input.
double polygon_intersection_area(const Polygon2& a, const Polygon2& b);

std::vector<Polygon2> polygon_intersection(const Polygon2& a, const Polygon2& b);
std::vector<Polygon2> polygon_union(const std::vector<Polygon2>& polys);
double polygon_union_area(const std::vector<Polygon2>& polys);
std::vector<Polygon2> polygon_difference(const Polygon2& a, const std::vector<Polygon2>& cuts);

// Morphological closing: dilate by dist/2, union, erode by dist/2.
// Pieces closer than dist end up bridged into one polygon; everything
// else returns to (approximately) its original outline.
std::vector<Polygon2> close_gaps(const std::vector<Polygon2>& polys, double dist);

// Minimum Euclidean distance from p to the polygon boundary; 0 on the
// boundary. Throws OutsideRegionError when p is strictly outside.
double distance_to_boundary(const Vec2& p, const Polygon2& poly);

// Distance from p to the boundary ignoring inside/outside (helper for
// grid precomputation; never throws).
double boundary_distance_unsigned(const Vec2& p, const Polygon2& poly);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

// 2-D convex hull (counterclockwise, no duplicate endpoint).
std::vector<Vec2> convex_hull(std::vector<Vec2> pts);

// Minimum-area enclosing rectangle of a point set via rotating calipers
// over the convex hull. Returns center, half extents (u >= v not
// guaranteed), and the unit axis of the first extent. Degenerate inputs
// (all points collinear) yield a zero-width rectangle along the segment.
struct MinRect {
    Vec2 center;
    Vec2 axis_u;   // unit axis of half_u
    double half_u = 0.0;
    double half_v = 0.0;  // along the perpendicular axis
    double area() const { return 4.0 * half_u * half_v; }
};
MinRect min_area_rect(const std::vector<Vec2>& pts);

}  // namespace hsm
