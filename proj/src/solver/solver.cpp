#include "hsm/solver/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

namespace hsm {

namespace {

constexpr double kAlpha = 1.5;
constexpr double kEps = 1e-9;
// Time limit -> deterministic work budget. One unit per DFS expansion
// plus one per 16 scanned candidates; wall clock stays as a backstop.
constexpr double kUnitsPerSecond = 120000.0;

bool is_convex(const Polygon2& p) {
    const size_t n = p.pts.size();
    if (n < 3) return false;
    double sign = 0.0;
    for (size_t i = 0; i < n; ++i) {
        Vec2 a = p.pts[(i + 1) % n] - p.pts[i];
        Vec2 b = p.pts[(i + 2) % n] - p.pts[(i + 1) % n];
        double c = a.cross(b);
        if (std::abs(c) < 1e-15) continue;
        if (sign == 0.0) sign = c;
        else if (sign * c < 0) return false;
    }
    return true;
}

// Ear-clipping triangulation for simple polygons (convex pieces pass
// through untouched).
std::vector<Polygon2> convex_pieces(const Polygon2& poly) {
    if (poly.pts.size() < 3) return {};
    if (is_convex(poly)) return {poly};
    std::vector<Vec2> pts = poly.pts;
    if (signed_area(poly) < 0) std::reverse(pts.begin(), pts.end());
    std::vector<Polygon2> tris;
    while (pts.size() > 3) {
        const size_t n = pts.size();
        bool clipped = false;
        for (size_t i = 0; i < n; ++i) {
            const Vec2& prev = pts[(i + n - 1) % n];
            const Vec2& cur = pts[i];
            const Vec2& next = pts[(i + 1) % n];
            if ((cur - prev).cross(next - cur) <= 1e-15) continue;  // reflex
            Polygon2 ear{{prev, cur, next}};
            bool contains_other = false;
            for (size_t j = 0; j < n; ++j) {
                if (j == i || j == (i + n - 1) % n || j == (i + 1) % n) continue;
                if (contains_point(ear, pts[j])) { contains_other = true; break; }
            }
            if (contains_other) continue;
            tris.push_back(ear);
            pts.erase(pts.begin() + static_cast<long>(i));
            clipped = true;
            break;
        }
        if (!clipped) break;  // degenerate remainder
    }
    if (pts.size() == 3) tris.push_back(Polygon2{{pts[0], pts[1], pts[2]}});
    return tris;
}

struct Wall {
    Vec2 a, b;
    double inward_yaw = 0.0;  // yaw facing into the region
};

// Precomputed domain data shared by candidate generation.
struct Grid {
    const SolveDomain* dom = nullptr;
    std::vector<Vec2> points;       // inside boundary, outside obstacles
    std::vector<double> phi;        // boundary distance per point
    std::vector<Polygon2> obstacle_hulls;
    std::vector<Wall> walls;

    explicit Grid(const SolveDomain& d) : dom(&d) {
        require_simple(d.boundary, "solve domain boundary");
        if (d.grid_step <= 0.0) throw SolverError("grid_step must be positive");
        for (const Polygon2& obs : d.obstacles) {
            for (const Polygon2& piece : polygon_intersection(obs, d.boundary))
                for (Polygon2& hull : convex_pieces(piece))
                    if (area(hull) > 1e-10) obstacle_hulls.push_back(std::move(hull));
        }
        Aabb2 bb = bounds();
        const double step = d.grid_step;
        const int nx = static_cast<int>(std::floor((bb.max_x - bb.min_x) / step + kEps)) + 1;
        const int nz = static_cast<int>(std::floor((bb.max_z - bb.min_z) / step + kEps)) + 1;
        for (int j = 0; j < nz; ++j) {
            for (int i = 0; i < nx; ++i) {
                Vec2 p{bb.min_x + i * step, bb.min_z + j * step};
                if (!contains_point(d.boundary, p)) continue;
                bool blocked = false;
                for (const Polygon2& obs : obstacle_hulls)
                    if (contains_point(obs, p)) { blocked = true; break; }
                if (blocked) continue;
                points.push_back(p);
                phi.push_back(boundary_distance_unsigned(p, d.boundary));
            }
        }
        const size_t n = d.boundary.size();
        for (size_t i = 0; i < n; ++i) {
            Wall w;
            w.a = d.boundary[i];
            w.b = d.boundary[(i + 1) % n];
            Vec2 dir = w.b - w.a;
            double len = dir.norm();
            Vec2 nrm = len > 0 ? Vec2{-dir.z / len, dir.x / len} : Vec2{0, 1};
            Vec2 mid = (w.a + w.b) * 0.5;
            const double probe = std::max(1e-4, d.grid_step * 0.1);
            if (!contains_point(d.boundary, mid + nrm * probe)) nrm = nrm * -1.0;
            w.inward_yaw = normalize_yaw(rad_to_deg(std::atan2(nrm.x, nrm.z)));
            walls.push_back(w);
        }
    }

    struct Aabb2 {
        double min_x = 1e300, min_z = 1e300, max_x = -1e300, max_z = -1e300;
    };
    Aabb2 bounds() const {
        Aabb2 bb;
        for (const Vec2& p : dom->boundary.pts) {
            bb.min_x = std::min(bb.min_x, p.x);
            bb.min_z = std::min(bb.min_z, p.z);
            bb.max_x = std::max(bb.max_x, p.x);
            bb.max_z = std::max(bb.max_z, p.z);
        }
        return bb;
    }
};

struct Candidate {
    Pose pose;
    double sigma = 0.0;
    long order = 0;  // enumeration order, the deterministic tiebreak
};

double wall_contact_distance(const RotRect& rect, const Wall& wall) {
    Vec2 facing = rotate_yaw(Vec2{0.0, 1.0}, rect.yaw);
    Vec2 back_mid = rect.center - facing * rect.half_d;
    return point_segment_distance(back_mid, wall.a, wall.b);
}

bool pose_statically_feasible(const RotRect& rect, const Grid& grid,
                              const PlacementRequest& req) {
    if (!rect_inside_polygon(rect, grid.dom->boundary)) return false;
    if (!req.ignore_collision) {
        for (const Polygon2& obs : grid.obstacle_hulls)
            if (rect_overlaps_convex(rect, obs)) return false;
    }
    if (req.wall_align) {
        int wid = req.wall_id.value_or(-1);
        if (wid < 0 || wid >= static_cast<int>(grid.walls.size())) return false;
        if (wall_contact_distance(rect, grid.walls[wid]) >
            grid.dom->grid_step * 0.5 + kEps)
            return false;
    }
    return true;
}

std::vector<double> candidate_yaws(const PlacementRequest& req, const Grid& grid) {
    if (req.wall_align) {
        int wid = req.wall_id.value_or(-1);
        if (wid < 0 || wid >= static_cast<int>(grid.walls.size()))
            throw SolverError("request '" + req.motif_id + "': wall_id " +
                              std::to_string(wid) + " out of range");
        return {grid.walls[wid].inward_yaw};
    }
    std::vector<double> yaws;
    for (int k = 0; k < 4; ++k) {
        double y = normalize_yaw(req.initial.yaw + 90.0 * k);
        bool dup = false;
        for (double seen : yaws) dup = dup || std::abs(seen - y) < 1e-9;
        if (!dup) yaws.push_back(y);
    }
    return yaws;
}

double sigma_at(const Vec2& p, double phi, const PlacementRequest& req, double step) {
    Vec2 p0{req.initial.position.x, req.initial.position.z};
    double s = kAlpha * distance(p, p0);
    if (req.wall_align) s += 1.0 / std::max(phi, step * 0.5);
    return s;
}

// Static candidates for one request: feasible vs boundary/obstacles/wall
// but not vs placed motifs, sorted ascending by (sigma, order).
std::vector<Candidate> static_candidates(const PlacementRequest& req, const Grid& grid) {
    std::vector<Candidate> out;
    std::vector<double> yaws = candidate_yaws(req, grid);
    long order = 0;
    // The seeded pose itself, at each allowed yaw.
    for (double yaw : yaws) {
        Pose p{{req.initial.position.x, 0.0, req.initial.position.z}, yaw};
        RotRect rect = req.footprint_at(p);
        if (contains_point(grid.dom->boundary, rect.center) &&
            pose_statically_feasible(rect, grid, req)) {
            double phi = boundary_distance_unsigned(rect.center, grid.dom->boundary);
            out.push_back({p, sigma_at(rect.center, phi, req, grid.dom->grid_step), order});
        }
        ++order;
    }
    for (double yaw : yaws) {
        for (size_t i = 0; i < grid.points.size(); ++i) {
            Pose p{{grid.points[i].x, 0.0, grid.points[i].z}, yaw};
            RotRect rect = req.footprint_at(p);
            if (!pose_statically_feasible(rect, grid, req)) { ++order; continue; }
            out.push_back(
                {p, sigma_at(grid.points[i], grid.phi[i], req, grid.dom->grid_step), order});
            ++order;
        }
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.sigma != b.sigma) return a.sigma < b.sigma;
        return a.order < b.order;
    });
    // The seeded pose may coincide with a grid point; duplicates share a
    // sigma so they end up adjacent after the sort.
    auto same_pose = [](const Candidate& a, const Candidate& b) {
        return std::abs(a.pose.position.x - b.pose.position.x) < kEps &&
               std::abs(a.pose.position.z - b.pose.position.z) < kEps &&
               std::abs(a.pose.yaw - b.pose.yaw) < kEps;
    };
    out.erase(std::unique(out.begin(), out.end(), same_pose), out.end());
    return out;
}

}  // namespace

double score_placement(const Pose& p1, const PlacementRequest& req, const SolveDomain& dom) {
    Vec2 p{p1.position.x, p1.position.z};
    double phi = distance_to_boundary(p, dom.boundary);  // throws when outside
    Vec2 p0{req.initial.position.x, req.initial.position.z};
    double s = kAlpha * distance(p, p0);
    if (req.wall_align) s += 1.0 / std::max(phi, dom.grid_step * 0.5);
    return s;
}

std::vector<ScoredPose> candidate_positions(const PlacementRequest& req,
                                            const SolveDomain& dom,
                                            const std::vector<RotRect>& placed) {
    Grid grid(dom);
    std::vector<ScoredPose> out;
    for (const Candidate& c : static_candidates(req, grid)) {
        RotRect rect = req.footprint_at(c.pose);
        bool clear = true;
        if (!req.ignore_collision)
            for (const RotRect& other : placed)
                if (rects_overlap(rect, other)) { clear = false; break; }
        if (clear) out.push_back({c.pose, c.sigma});
    }
    return out;
}

namespace {

struct SearchState {
    const std::vector<PlacementRequest>* reqs = nullptr;
    const Grid* grid = nullptr;
    std::vector<std::vector<Candidate>> cands;  // per request index

    long budget = 0;
    long used = 0;
    std::chrono::steady_clock::time_point deadline;
    bool out_of_budget = false;
    long expansions = 0;

    // Incumbent
    bool have_best = false;
    size_t best_placed_count = 0;
    double best_sigma = std::numeric_limits<double>::infinity();
    std::vector<std::optional<ScoredPose>> best_poses;

    bool truncated_last_round = false;

    bool charge(long scanned) {
        used += 1 + scanned / 16;
        ++expansions;
        if (used > budget) out_of_budget = true;
        if ((expansions & 0x3F) == 0 &&
            std::chrono::steady_clock::now() > deadline)
            out_of_budget = true;
        return !out_of_budget;
    }

    void offer(const std::vector<std::optional<ScoredPose>>& poses) {
        size_t count = 0;
        double sigma = 0.0;
        for (const auto& p : poses)
            if (p) { ++count; sigma += p->sigma; }
        bool better;
        if (!have_best) better = true;
        else if (count != best_placed_count) better = count > best_placed_count;
        else better = sigma < best_sigma - 1e-12;
        if (better) {
            have_best = true;
            best_placed_count = count;
            best_sigma = sigma;
            best_poses = poses;
        }
    }
};

void dfs(SearchState& st, std::vector<size_t> slots, size_t cursor,
         std::vector<RotRect>& placed_rects,
         std::vector<std::optional<ScoredPose>>& poses, double partial_sigma, int width,
         int deferrals) {
    if (st.out_of_budget) return;
    const auto& reqs = *st.reqs;
    if (cursor >= slots.size()) {
        st.offer(poses);
        return;
    }
    // Prune against a complete incumbent.
    const size_t remaining = slots.size() - cursor;
    if (st.have_best && st.best_placed_count == reqs.size() &&
        partial_sigma >= st.best_sigma - 1e-12 && remaining > 0) {
        // No completion can beat the incumbent (sigma is nonnegative)
        // unless it places the same count at lower sigma; partial
        // already matches placed-so-far, so only sigma matters.
        return;
    }

    size_t req_idx = slots[cursor];
    const PlacementRequest& req = reqs[req_idx];

    long scanned = 0;
    std::vector<const Candidate*> feasible;
    for (const Candidate& c : st.cands[req_idx]) {
        ++scanned;
        if (st.have_best && st.best_placed_count == reqs.size() &&
            partial_sigma + c.sigma >= st.best_sigma - 1e-12)
            break;  // candidates sorted by sigma; the rest are worse
        RotRect rect = req.footprint_at(c.pose);
        bool clear = true;
        if (!req.ignore_collision)
            for (const RotRect& other : placed_rects)
                if (rects_overlap(rect, other)) { clear = false; break; }
        if (!clear) continue;
        feasible.push_back(&c);
        if (static_cast<int>(feasible.size()) >= width) break;
    }
    if (scanned < static_cast<long>(st.cands[req_idx].size()) &&
        static_cast<int>(feasible.size()) >= width)
        st.truncated_last_round = true;
    if (!st.charge(scanned)) return;

    if (feasible.empty()) {
        if (cursor + 1 < slots.size() && deferrals < static_cast<int>(slots.size())) {
            // Retry after all other motifs are placed.
            std::vector<size_t> reordered = slots;
            reordered.erase(reordered.begin() + static_cast<long>(cursor));
            reordered.push_back(req_idx);
            dfs(st, std::move(reordered), cursor, placed_rects, poses, partial_sigma,
                width, deferrals + 1);
        } else {
            // Terminally unplaced in this branch.
            st.offer(poses);
        }
        return;
    }

    for (const Candidate* c : feasible) {
        if (st.out_of_budget) return;
        if (st.have_best && st.best_placed_count == reqs.size() &&
            partial_sigma + c->sigma >= st.best_sigma - 1e-12)
            break;
        RotRect rect = req.footprint_at(c->pose);
        bool tracked = !req.ignore_collision;
        if (tracked) placed_rects.push_back(rect);
        poses[req_idx] = ScoredPose{c->pose, c->sigma};
        dfs(st, slots, cursor + 1, placed_rects, poses, partial_sigma + c->sigma, width,
            0);
        poses[req_idx].reset();
        if (tracked) placed_rects.pop_back();
    }
}

}  // namespace

Layout solve_layout(const std::vector<PlacementRequest>& reqs, const SolveDomain& dom,
                    double time_limit_seconds) {
    if (reqs.empty()) throw SolverError("solve_layout requires at least one request");
    for (const PlacementRequest& r : reqs) {
        if (!(r.width > 0 && r.depth > 0))
            throw SolverError("request '" + r.motif_id + "' has nonpositive footprint");
        if (r.wall_id && !r.wall_align)
            throw SolverError("request '" + r.motif_id + "' sets wall_id without wall_align");
    }
    const auto t0 = std::chrono::steady_clock::now();
    Grid grid(dom);

    SearchState st;
    st.reqs = &reqs;
    st.grid = &grid;
    st.budget = static_cast<long>(time_limit_seconds * kUnitsPerSecond);
    st.deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(time_limit_seconds));
    st.cands.resize(reqs.size());
    for (size_t i = 0; i < reqs.size(); ++i) st.cands[i] = static_candidates(reqs[i], grid);

    // Motifs in decreasing footprint area, ties in input order.
    std::vector<size_t> slots(reqs.size());
    for (size_t i = 0; i < slots.size(); ++i) slots[i] = i;
    std::stable_sort(slots.begin(), slots.end(), [&](size_t a, size_t b) {
        return reqs[a].area() > reqs[b].area();
    });

    std::vector<std::optional<ScoredPose>> poses(reqs.size());
    std::vector<RotRect> placed_rects;
    for (int width : {3, 9, 27, std::numeric_limits<int>::max()}) {
        st.truncated_last_round = false;
        dfs(st, slots, 0, placed_rects, poses, 0.0, width, 0);
        if (st.out_of_budget) break;
        if (!st.truncated_last_round) break;  // the tree was fully explored
        if (st.have_best && st.best_placed_count == reqs.size() && st.best_sigma <= 1e-12)
            break;  // nothing can beat an all-seeded solution
    }

    Layout out;
    out.nodes_expanded = st.expansions;
    if (st.have_best) {
        double total = 0.0;
        for (size_t i = 0; i < reqs.size(); ++i) {
            if (st.best_poses[i]) {
                out.placed.push_back({reqs[i].motif_id, st.best_poses[i]->pose,
                                      st.best_poses[i]->sigma});
                total += st.best_poses[i]->sigma;
            } else {
                out.unplaced.push_back(reqs[i].motif_id);
            }
        }
        out.total_sigma = total;
        out.feasible = out.unplaced.empty();
    } else {
        for (const PlacementRequest& r : reqs) out.unplaced.push_back(r.motif_id);
        out.feasible = false;
    }
    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

bool verify_layout(const std::vector<PlacementRequest>& reqs, const SolveDomain& dom,
                   const Layout& layout, std::string* reason) {
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    Grid grid(dom);
    std::map<std::string, const PlacementRequest*> by_id;
    for (const PlacementRequest& r : reqs) by_id[r.motif_id] = &r;
    std::vector<std::pair<const PlacementRequest*, RotRect>> rects;
    for (const PlacedMotif& pm : layout.placed) {
        auto it = by_id.find(pm.motif_id);
        if (it == by_id.end()) return fail("unknown motif id " + pm.motif_id);
        const PlacementRequest& req = *it->second;
        RotRect rect = req.footprint_at(pm.pose);
        if (!rect_inside_polygon(rect, dom.boundary))
            return fail(pm.motif_id + " is not fully inside the boundary");
        if (!req.ignore_collision) {
            for (const Polygon2& obs : grid.obstacle_hulls)
                if (rect_overlaps_convex(rect, obs))
                    return fail(pm.motif_id + " overlaps an obstacle");
        }
        if (req.wall_align) {
            int wid = req.wall_id.value_or(-1);
            if (wid < 0 || wid >= static_cast<int>(grid.walls.size()))
                return fail(pm.motif_id + " has an invalid wall id");
            if (wall_contact_distance(rect, grid.walls[wid]) > dom.grid_step * 0.5 + kEps)
                return fail(pm.motif_id + " back edge is not against wall " +
                            std::to_string(wid));
            if (std::abs(normalize_yaw(pm.pose.yaw - grid.walls[wid].inward_yaw)) > 1e-9)
                return fail(pm.motif_id + " does not face into the region");
        }
        if (!req.ignore_collision) rects.push_back({&req, rect});
    }
    for (size_t i = 0; i < rects.size(); ++i)
        for (size_t j = i + 1; j < rects.size(); ++j)
            if (rects_overlap(rects[i].second, rects[j].second))
                return fail(rects[i].first->motif_id + " overlaps " +
                            rects[j].first->motif_id);
    if (layout.feasible && !layout.unplaced.empty())
        return fail("layout marked feasible but has unplaced motifs");
    return true;
}

}  // namespace hsm
