#include "hsm/geom/rect.hpp"

#include <algorithm>
#include <vector>

namespace hsm {

namespace {

struct Interval {
    double lo = 1e300;
    double hi = -1e300;
    void expand(double v) { lo = std::min(lo, v); hi = std::max(hi, v); }
};

template <typename Pts>
Interval project(const Pts& pts, const Vec2& axis) {
    Interval iv;
    for (const Vec2& p : pts) iv.expand(p.dot(axis));
    return iv;
}

bool separated_on(const Interval& a, const Interval& b, double eps) {
    return a.hi <= b.lo + eps || b.hi <= a.lo + eps;
}

// Proper segment crossing: interiors intersect (shared endpoints and
// collinear touching do not count).
bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, double eps) {
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return (q - p).cross(r - p);
    };
    double d1 = orient(c, d, a);
    double d2 = orient(c, d, b);
    double d3 = orient(a, b, c);
    double d4 = orient(a, b, d);
    return ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
           ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps));
}

}  // namespace

bool rects_overlap(const RotRect& a, const RotRect& b, double eps) {
    const auto ca = a.corners();
    const auto cb = b.corners();
    const Vec2 axes[4] = {
        rotate_yaw(Vec2{1.0, 0.0}, a.yaw), rotate_yaw(Vec2{0.0, 1.0}, a.yaw),
        rotate_yaw(Vec2{1.0, 0.0}, b.yaw), rotate_yaw(Vec2{0.0, 1.0}, b.yaw)};
    for (const Vec2& axis : axes)
        if (separated_on(project(ca, axis), project(cb, axis), eps)) return false;
    return true;
}

bool rect_overlaps_convex(const RotRect& r, const Polygon2& convex, double eps) {
    if (convex.pts.size() < 3) return false;
    const auto cr = r.corners();
    Vec2 rect_axes[2] = {rotate_yaw(Vec2{1.0, 0.0}, r.yaw), rotate_yaw(Vec2{0.0, 1.0}, r.yaw)};
    for (const Vec2& axis : rect_axes)
        if (separated_on(project(cr, axis), project(convex.pts, axis), eps)) return false;
    const size_t n = convex.pts.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 e = convex.pts[(i + 1) % n] - convex.pts[i];
        double len = e.norm();
        if (len < 1e-15) continue;
        Vec2 axis{-e.z / len, e.x / len};
        if (separated_on(project(cr, axis), project(convex.pts, axis), eps)) return false;
    }
    return true;
}

bool rect_inside_polygon(const RotRect& r, const Polygon2& poly, double eps) {
    const auto corners = r.corners();
    auto near_boundary = [&](const Vec2& p) {
        return boundary_distance_unsigned(p, poly) <= eps;
    };
    for (const Vec2& c : corners)
        if (!contains_point(poly, c) && !near_boundary(c)) return false;
    const size_t n = poly.pts.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = poly.pts[i];
        const Vec2& b = poly.pts[(i + 1) % n];
        for (size_t j = 0; j < 4; ++j)
            if (segments_cross(corners[j], corners[(j + 1) % 4], a, b, eps)) return false;
    }
    // A concave polygon could still poke a vertex into the rectangle.
    RotRect shrunk = r;
    shrunk.half_w = std::max(0.0, r.half_w - eps);
    shrunk.half_d = std::max(0.0, r.half_d - eps);
    const Vec2 ux = rotate_yaw(Vec2{1.0, 0.0}, r.yaw);
    const Vec2 uz = rotate_yaw(Vec2{0.0, 1.0}, r.yaw);
    for (const Vec2& v : poly.pts) {
        Vec2 d = v - r.center;
        if (std::abs(d.dot(ux)) < shrunk.half_w - eps && std::abs(d.dot(uz)) < shrunk.half_d - eps)
            return false;
    }
    return true;
}

double rect_intersection_area(const RotRect& a, const RotRect& b) {
    // Sutherland-Hodgman clip of convex a against convex b.
    auto ca = a.corners();
    std::vector<Vec2> subject(ca.begin(), ca.end());
    auto cb = b.corners();
    for (size_t i = 0; i < 4 && !subject.empty(); ++i) {
        const Vec2& p1 = cb[i];
        const Vec2& p2 = cb[(i + 1) % 4];
        Vec2 edge = p2 - p1;
        std::vector<Vec2> out;
        const size_t m = subject.size();
        for (size_t j = 0; j < m; ++j) {
            const Vec2& cur = subject[j];
            const Vec2& nxt = subject[(j + 1) % m];
            double side_cur = edge.cross(cur - p1);
            double side_nxt = edge.cross(nxt - p1);
            auto intersect = [&]() {
                double t = side_cur / (side_cur - side_nxt);
                return cur + (nxt - cur) * t;
            };
            if (side_cur >= 0) {
                out.push_back(cur);
                if (side_nxt < 0) out.push_back(intersect());
            } else if (side_nxt >= 0) {
                out.push_back(intersect());
            }
        }
        subject = std::move(out);
    }
    if (subject.size() < 3) return 0.0;
    double s = 0.0;
    for (size_t i = 0; i < subject.size(); ++i) {
        const Vec2& u = subject[i];
        const Vec2& v = subject[(i + 1) % subject.size()];
        s += u.x * v.z - v.x * u.z;
    }
    return std::abs(s) * 0.5;
}

}  // namespace hsm
