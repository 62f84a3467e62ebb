#include "hsm/geom/polygon.hpp"

#include <algorithm>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>

namespace bg = boost::geometry;

namespace hsm {

namespace {

using BPoint = bg::model::d2::point_xy<double>;
using BPoly = bg::model::polygon<BPoint, false, true>;  // ccw, closed
using BMulti = bg::model::multi_polygon<BPoly>;

BPoly to_boost(const Polygon2& p) {
    BPoly out;
    for (const Vec2& v : p.pts) bg::append(out.outer(), BPoint(v.x, v.z));
    if (!p.pts.empty()) bg::append(out.outer(), BPoint(p.pts[0].x, p.pts[0].z));
    bg::correct(out);  // fixes orientation and closure
    return out;
}

Polygon2 from_boost(const BPoly& p) {
    Polygon2 out;
    const auto& ring = p.outer();
    // Drop the closing vertex.
    for (size_t i = 0; i + 1 < ring.size(); ++i)
        out.pts.push_back({bg::get<0>(ring[i]), bg::get<1>(ring[i])});
    return out;
}

std::vector<Polygon2> from_boost(const BMulti& m, double min_piece_area = 1e-12) {
    std::vector<Polygon2> out;
    for (const BPoly& p : m)
        if (bg::area(p) > min_piece_area) out.push_back(from_boost(p));
    return out;
}

}  // namespace

double signed_area(const Polygon2& p) {
    double a = 0.0;
    const size_t n = p.pts.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& u = p.pts[i];
        const Vec2& v = p.pts[(i + 1) % n];
        a += u.x * v.z - v.x * u.z;
    }
    return 0.5 * a;
}

bool is_simple(const Polygon2& p) {
    if (p.pts.size() < 3) return false;
    if (area(p) <= 0.0) return false;
    BPoly bp = to_boost(p);
    bg::validity_failure_type failure;
    if (bg::is_valid(bp, failure)) return true;
    // correct() already fixed orientation/closure; remaining failures of
    // these kinds are cosmetic, not self-intersections.
    return failure == bg::failure_wrong_orientation ||
           failure == bg::failure_not_closed;
}

void require_simple(const Polygon2& p, const char* label) {
    if (!is_simple(p))
        throw InvalidPolygonError(std::string(label) +
                                  ": polygon is not simple (self-intersecting, "
                                  "degenerate, or has fewer than 3 vertices)");
}

bool contains_point(const Polygon2& poly, const Vec2& p) {
    // Crossing-number with an explicit on-boundary check so edges count
    // as inside.
    const size_t n = poly.pts.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
        if (point_segment_distance(p, poly.pts[i], poly.pts[(i + 1) % n]) < 1e-12)
            return true;
    }
    bool inside = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly.pts[i];
        const Vec2& b = poly.pts[j];
        if ((a.z > p.z) != (b.z > p.z)) {
            double t = (p.z - a.z) / (b.z - a.z);
            double cx = a.x + t * (b.x - a.x);
            if (p.x < cx) inside = !inside;
        }
    }
    return inside;
}

double polygon_intersection_area(const Polygon2& a, const Polygon2& b) {
    require_simple(a, "polygon_intersection_area(a)");
    require_simple(b, "polygon_intersection_area(b)");
    BMulti out;
    bg::intersection(to_boost(a), to_boost(b), out);
    return bg::area(out);
}

std::vector<Polygon2> polygon_intersection(const Polygon2& a, const Polygon2& b) {
    require_simple(a, "polygon_intersection(a)");
    require_simple(b, "polygon_intersection(b)");
    BMulti out;
    bg::intersection(to_boost(a), to_boost(b), out);
    return from_boost(out);
}

namespace {

BMulti union_all(const std::vector<Polygon2>& polys) {
    BMulti acc;
    for (const Polygon2& p : polys) {
        if (p.pts.size() < 3 || area(p) <= 0.0) continue;
        BMulti next;
        bg::union_(acc, to_boost(p), next);
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

std::vector<Polygon2> polygon_union(const std::vector<Polygon2>& polys) {
    return from_boost(union_all(polys));
}

double polygon_union_area(const std::vector<Polygon2>& polys) {
    return bg::area(union_all(polys));
}

std::vector<Polygon2> polygon_difference(const Polygon2& a, const std::vector<Polygon2>& cuts) {
    BMulti acc;
    acc.push_back(to_boost(a));
    for (const Polygon2& c : cuts) {
        if (c.pts.size() < 3 || area(c) <= 0.0) continue;
        BMulti next;
        bg::difference(acc, to_boost(c), next);
        acc = std::move(next);
    }
    return from_boost(acc, 1e-10);
}

std::vector<Polygon2> close_gaps(const std::vector<Polygon2>& polys, double dist) {
    if (polys.empty()) return {};
    if (dist <= 0.0) return polygon_union(polys);
    const double r = dist * 0.5;
    bg::strategy::buffer::distance_symmetric<double> grow(r), shrink(-r);
    bg::strategy::buffer::join_miter join;
    bg::strategy::buffer::end_flat end;
    bg::strategy::buffer::point_square point;
    bg::strategy::buffer::side_straight side;

    BMulti base = union_all(polys);
    BMulti dilated, closed;
    bg::buffer(base, dilated, grow, side, join, end, point);
    bg::buffer(dilated, closed, shrink, side, join, end, point);
    return from_boost(closed);
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double len2 = ab.dot(ab);
    if (len2 == 0.0) return distance(p, a);
    double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

double boundary_distance_unsigned(const Vec2& p, const Polygon2& poly) {
    double best = 1e300;
    const size_t n = poly.pts.size();
    for (size_t i = 0; i < n; ++i)
        best = std::min(best, point_segment_distance(p, poly.pts[i], poly.pts[(i + 1) % n]));
    return best;
}

double distance_to_boundary(const Vec2& p, const Polygon2& poly) {
    require_simple(poly, "distance_to_boundary");
    double d = boundary_distance_unsigned(p, poly);
    if (!contains_point(poly, p) && d > 1e-12)
        throw OutsideRegionError("point lies strictly outside the region");
    return d;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.z < b.z);
    });
    pts.erase(std::unique(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
                  return a.x == b.x && a.z == b.z;
              }),
              pts.end());
    const size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Vec2> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower
        while (k >= 2 && (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
        while (k >= t && (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

MinRect min_area_rect(const std::vector<Vec2>& pts) {
    std::vector<Vec2> hull = convex_hull(pts);
    MinRect best;
    if (hull.empty()) return best;
    if (hull.size() == 1) {
        best.center = hull[0];
        best.axis_u = {1.0, 0.0};
        return best;
    }
    if (hull.size() == 2) {
        Vec2 d = hull[1] - hull[0];
        best.center = (hull[0] + hull[1]) * 0.5;
        best.axis_u = d * (1.0 / d.norm());
        best.half_u = d.norm() * 0.5;
        best.half_v = 0.0;
        return best;
    }
    double best_area = 1e300;
    const size_t n = hull.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 e = hull[(i + 1) % n] - hull[i];
        double len = e.norm();
        if (len < 1e-15) continue;
        Vec2 u = e * (1.0 / len);
        Vec2 v{-u.z, u.x};
        double min_u = 1e300, max_u = -1e300, min_v = 1e300, max_v = -1e300;
        for (const Vec2& p : hull) {
            double pu = p.dot(u), pv = p.dot(v);
            min_u = std::min(min_u, pu); max_u = std::max(max_u, pu);
            min_v = std::min(min_v, pv); max_v = std::max(max_v, pv);
        }
        double a = (max_u - min_u) * (max_v - min_v);
        if (a < best_area) {
            best_area = a;
            best.axis_u = u;
            best.half_u = (max_u - min_u) * 0.5;
            best.half_v = (max_v - min_v) * 0.5;
            double cu = (min_u + max_u) * 0.5, cv = (min_v + max_v) * 0.5;
            best.center = u * cu + v * cv;
        }
    }
    return best;
}

}  // namespace hsm
