#include "hsm/support/support.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

namespace hsm {

namespace {

constexpr double kFootprintWeld = 1e-3;   // 1 mm
constexpr double kMinStripHalf = 5e-4;    // dividers cut at least 1 mm wide
constexpr double kHeightEps = 1e-6;

double snap_mm(double v) { return std::round(v / kFootprintWeld) * kFootprintWeld; }

}  // namespace

void SupportConfig::validate() const {
    auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!in_unit(t_norm) || !in_unit(t_adj))
        throw Error("support config: normal dot thresholds must be in (0, 1]");
    if (!(t_hzn > 0.0 && t_hzn <= 1.0) || !(t_vert >= 0.0 && t_vert < t_hzn))
        throw Error("support config: t_vert must be in [0, t_hzn), t_hzn in (0, 1]");
    if (t_clear <= 0.0 || h_top <= 0.0 || t_merge <= 0.0)
        throw Error("support config: distances must be positive");
    if (r_plane <= 0.0 || r_plane >= 1.0)
        throw Error("support config: r_plane must be in (0, 1)");
    if (tol < 0.0) throw Error("support config: tol must be nonnegative");
}

std::vector<SurfaceCluster> extract_planar_surfaces(const TriMesh& mesh,
                                                    const SupportConfig& cfg) {
    const size_t p = mesh.face_count();
    std::vector<SurfaceCluster> clusters;
    if (p == 0) return clusters;

    std::vector<Vec3> normals(p);
    std::vector<double> areas(p);
    for (size_t f = 0; f < p; ++f) {
        normals[f] = mesh.face_normal(f);
        areas[f] = mesh.face_area(f);
    }

    // Unclustered faces ordered by area descending, ties by lowest index.
    std::vector<uint32_t> by_area(p);
    std::iota(by_area.begin(), by_area.end(), 0);
    std::stable_sort(by_area.begin(), by_area.end(), [&](uint32_t a, uint32_t b) {
        if (areas[a] != areas[b]) return areas[a] > areas[b];
        return a < b;
    });

    std::vector<char> clustered(p, 0);
    size_t cursor = 0;
    std::deque<uint32_t> queue;
    std::vector<uint32_t> current;
    Vec3 seed_normal;

    auto flush_cluster = [&]() {
        if (current.empty()) return;
        SurfaceCluster c;
        std::sort(current.begin(), current.end());
        c.faces = current;
        std::set<uint32_t> verts;
        for (uint32_t f : current)
            for (uint32_t v : mesh.faces()[f]) verts.insert(v);
        std::vector<Vec3> pts;
        pts.reserve(verts.size());
        for (uint32_t v : verts) pts.push_back(mesh.vertices()[v]);
        c.box = fit_obb(pts, cfg.tol);
        c.plane = classify_plane(c.box, cfg.r_plane, cfg.t_hzn, cfg.t_vert);
        clusters.push_back(std::move(c));
        current.clear();
    };

    size_t remaining = p;
    while (remaining > 0) {
        if (queue.empty()) {
            flush_cluster();
            while (clustered[by_area[cursor]]) ++cursor;
            uint32_t seed = by_area[cursor];
            clustered[seed] = 1;
            --remaining;
            current.push_back(seed);
            seed_normal = normals[seed];
            for (uint32_t nb : mesh.neighbors(seed))
                if (!clustered[nb] && normals[nb].dot(seed_normal) >= cfg.t_adj)
                    queue.push_back(nb);
        } else {
            uint32_t f = queue.front();
            queue.pop_front();
            if (clustered[f]) continue;
            if (normals[f].dot(seed_normal) < cfg.t_norm) continue;
            clustered[f] = 1;
            --remaining;
            current.push_back(f);
            for (uint32_t nb : mesh.neighbors(f))
                if (!clustered[nb] && normals[nb].dot(normals[f]) >= cfg.t_adj)
                    queue.push_back(nb);
        }
    }
    flush_cluster();
    return clusters;
}

Polygon2 footprint_from_faces(const TriMesh& mesh, const std::vector<uint32_t>& faces) {
    std::vector<Polygon2> tris;
    tris.reserve(faces.size());
    for (uint32_t f : faces) {
        const auto& face = mesh.faces()[f];
        Polygon2 t;
        for (uint32_t v : face) {
            const Vec3& p = mesh.vertices()[v];
            t.pts.push_back({snap_mm(p.x), snap_mm(p.z)});
        }
        if (area(t) > 1e-10) tris.push_back(std::move(t));
    }
    std::vector<Polygon2> pieces = polygon_union(tris);
    if (pieces.empty()) return Polygon2{};
    size_t best = 0;
    for (size_t i = 1; i < pieces.size(); ++i)
        if (area(pieces[i]) > area(pieces[best])) best = i;
    return pieces[best];
}

HorizontalSurface make_horizontal_surface(const TriMesh& mesh, const SurfaceCluster& c) {
    HorizontalSurface h;
    h.faces = c.faces;
    h.footprint = footprint_from_faces(mesh, c.faces);
    double wsum = 0.0, hsum = 0.0;
    for (uint32_t f : c.faces) {
        double a = mesh.face_area(f);
        wsum += a;
        Vec3 centroid = mesh.face_centroid(f);
        hsum += a * centroid.y;
        h.face_centroids.push_back({centroid.x, centroid.z});
    }
    h.height = wsum > 0.0 ? hsum / wsum : c.box.center.y;
    return h;
}

VerticalSurface make_vertical_surface(const TriMesh& mesh, const SurfaceCluster& c) {
    VerticalSurface v;
    std::set<uint32_t> verts;
    for (uint32_t f : c.faces)
        for (uint32_t idx : mesh.faces()[f]) verts.insert(idx);
    std::vector<Vec2> flat;
    double y0 = 1e300, y1 = -1e300;
    for (uint32_t idx : verts) {
        const Vec3& p = mesh.vertices()[idx];
        flat.push_back({p.x, p.z});
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    v.y_min = y0;
    v.y_max = y1;
    MinRect rect = min_area_rect(flat);
    double hu = std::max(rect.half_u, kMinStripHalf);
    double hv = std::max(rect.half_v, kMinStripHalf);
    Vec2 u = rect.axis_u;
    Vec2 w{-u.z, u.x};
    v.strip.pts = {rect.center + u * (-hu) + w * (-hv), rect.center + u * (hu) + w * (-hv),
                   rect.center + u * (hu) + w * (hv), rect.center + u * (-hu) + w * (hv)};
    return v;
}

std::vector<HorizontalSurface> compute_clearances(std::vector<HorizontalSurface> horizontals,
                                                  const SupportConfig& cfg) {
    const size_t n = horizontals.size();
    for (size_t i = 0; i < n; ++i) {
        HorizontalSurface& h = horizontals[i];
        double gap = 1e300;
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const HorizontalSurface& above = horizontals[j];
            if (above.height <= h.height + kHeightEps) continue;
            if (h.footprint.size() < 3 || above.footprint.size() < 3) continue;
            if (polygon_intersection_area(h.footprint, above.footprint) <= 1e-12) continue;
            gap = std::min(gap, above.height - h.height);
        }
        if (gap == 1e300) {
            h.is_top = true;
            h.clearance = cfg.h_top;
        } else {
            h.is_top = false;
            h.clearance = gap;
        }
    }
    std::vector<HorizontalSurface> kept;
    kept.reserve(n);
    for (HorizontalSurface& h : horizontals) {
        if (h.footprint.size() < 3) continue;
        if (!h.is_top && h.clearance < cfg.t_clear) continue;
        kept.push_back(std::move(h));
    }
    return kept;
}

namespace {

// Union-find for merging surfaces into height bands.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
    void merge(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<SupportRegion> refine_regions(const std::vector<HorizontalSurface>& horizontals,
                                          const std::vector<VerticalSurface>& verticals,
                                          const SupportConfig& cfg) {
    const size_t n = horizontals.size();
    UnionFind uf(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (std::abs(horizontals[i].height - horizontals[j].height) <= cfg.t_merge)
                uf.merge(static_cast<int>(i), static_cast<int>(j));

    std::vector<std::vector<size_t>> bands;
    {
        std::vector<int> root_to_band(n, -1);
        for (size_t i = 0; i < n; ++i) {
            int r = uf.find(static_cast<int>(i));
            if (root_to_band[r] < 0) {
                root_to_band[r] = static_cast<int>(bands.size());
                bands.emplace_back();
            }
            bands[root_to_band[r]].push_back(i);
        }
    }

    std::vector<SupportRegion> regions;
    for (const auto& band : bands) {
        double wsum = 0.0, hsum = 0.0;
        double clearance = 1e300;
        bool all_top = true;
        std::vector<Polygon2> footprints;
        for (size_t i : band) {
            const HorizontalSurface& h = horizontals[i];
            double a = area(h.footprint);
            wsum += a;
            hsum += a * h.height;
            footprints.push_back(h.footprint);
            all_top = all_top && h.is_top;
            if (!h.is_top) clearance = std::min(clearance, h.clearance);
        }
        double height = wsum > 0.0 ? hsum / wsum : horizontals[band[0]].height;
        if (all_top) clearance = cfg.h_top;

        // Merge within t_merge, then let protruding vertical surfaces
        // re-segment the result.
        std::vector<Polygon2> merged = close_gaps(footprints, cfg.t_merge);
        std::vector<Polygon2> cuts;
        for (const VerticalSurface& v : verticals)
            if (v.y_min <= height + cfg.t_merge && v.y_max >= height + cfg.t_merge)
                cuts.push_back(v.strip);

        std::vector<Polygon2> pieces;
        for (const Polygon2& m : merged) {
            std::vector<Polygon2> cut = cuts.empty()
                                            ? std::vector<Polygon2>{m}
                                            : polygon_difference(m, cuts);
            for (Polygon2& piece : cut)
                if (area(piece) > 1e-9) pieces.push_back(std::move(piece));
        }

        // Distribute member faces to pieces by projected face centroid.
        std::vector<std::vector<uint32_t>> piece_faces(pieces.size());
        if (!pieces.empty()) {
            for (size_t i : band) {
                const HorizontalSurface& h = horizontals[i];
                for (size_t fi = 0; fi < h.faces.size(); ++fi) {
                    const Vec2& c = h.face_centroids[fi];
                    size_t target = 0;
                    double best = 1e300;
                    for (size_t k = 0; k < pieces.size(); ++k) {
                        double d = contains_point(pieces[k], c)
                                       ? 0.0
                                       : boundary_distance_unsigned(c, pieces[k]);
                        if (d < best) { best = d; target = k; }
                    }
                    piece_faces[target].push_back(h.faces[fi]);
                }
            }
        }

        for (size_t k = 0; k < pieces.size(); ++k) {
            SupportRegion r;
            r.footprint = std::move(pieces[k]);
            r.surface_height = height;
            r.clearance = clearance;
            r.is_top = all_top;
            r.faces = std::move(piece_faces[k]);
            std::sort(r.faces.begin(), r.faces.end());
            r.faces.erase(std::unique(r.faces.begin(), r.faces.end()), r.faces.end());
            regions.push_back(std::move(r));
        }
    }

    std::stable_sort(regions.begin(), regions.end(),
                     [](const SupportRegion& a, const SupportRegion& b) {
                         if (std::abs(a.surface_height - b.surface_height) > kHeightEps)
                             return a.surface_height < b.surface_height;
                         double aa = area(a.footprint), ab = area(b.footprint);
                         if (std::abs(aa - ab) > 1e-12) return aa > ab;
                         Vec2 ca{0, 0}, cb{0, 0};
                         for (const Vec2& p : a.footprint.pts) ca = ca + p;
                         for (const Vec2& p : b.footprint.pts) cb = cb + p;
                         ca = ca * (1.0 / std::max<size_t>(1, a.footprint.size()));
                         cb = cb * (1.0 / std::max<size_t>(1, b.footprint.size()));
                         if (ca.x != cb.x) return ca.x < cb.x;
                         return ca.z < cb.z;
                     });
    for (size_t i = 0; i < regions.size(); ++i) regions[i].id = static_cast<int>(i);
    return regions;
}

std::vector<SupportRegion> extract_support_regions(const TriMesh& mesh,
                                                   const SupportConfig& cfg) {
    cfg.validate();
    std::vector<SurfaceCluster> clusters = extract_planar_surfaces(mesh, cfg);
    std::vector<HorizontalSurface> horizontals;
    std::vector<VerticalSurface> verticals;
    for (const SurfaceCluster& c : clusters) {
        if (!c.plane.planar) continue;
        if (c.plane.orientation == SurfaceOrientation::horizontal)
            horizontals.push_back(make_horizontal_surface(mesh, c));
        else if (c.plane.orientation == SurfaceOrientation::vertical)
            verticals.push_back(make_vertical_surface(mesh, c));
    }
    horizontals = compute_clearances(std::move(horizontals), cfg);
    return refine_regions(horizontals, verticals, cfg);
}

std::vector<SupportRegion> top_surface_baseline(const TriMesh& mesh, const SupportConfig& cfg) {
    std::vector<SupportRegion> all = extract_support_regions(mesh, cfg);
    if (all.empty()) return all;
    double top = -1e300;
    for (const SupportRegion& r : all) top = std::max(top, r.surface_height);
    std::vector<SupportRegion> out;
    for (SupportRegion& r : all) {
        if (std::abs(r.surface_height - top) > kHeightEps) continue;
        r.is_top = true;
        r.clearance = cfg.h_top;
        r.id = static_cast<int>(out.size());
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace hsm
