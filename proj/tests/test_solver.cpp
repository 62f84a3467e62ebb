#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hsm/solver/solver.hpp"

using namespace hsm;

namespace {

SolveDomain square_room(double side, double step = 0.1) {
    SolveDomain dom;
    dom.boundary = Polygon2::rect(0, 0, side, side);
    dom.grid_step = step;
    return dom;
}

PlacementRequest request(const std::string& id, double w, double d, double x, double z,
                         double yaw = 0.0) {
    PlacementRequest r;
    r.motif_id = id;
    r.width = w;
    r.depth = d;
    r.initial = Pose{{x, 0.0, z}, yaw};
    return r;
}

// Independent exhaustive oracle: enumerates the full grid-pose product
// with its own lattice loops and overlap checks, pruned only by the
// nonnegativity of sigma. Returns the optimal feasible total sigma, or
// infinity if no complete placement exists.
struct OracleCandidate {
    Pose pose;
    double sigma;
};

std::vector<OracleCandidate> oracle_candidates(const PlacementRequest& req,
                                               const SolveDomain& dom) {
    std::vector<OracleCandidate> out;
    double min_x = 1e300, min_z = 1e300, max_x = -1e300, max_z = -1e300;
    for (const Vec2& p : dom.boundary.pts) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_z = std::min(min_z, p.z);
        max_z = std::max(max_z, p.z);
    }
    std::vector<Pose> poses;
    for (int k = 0; k < 4; ++k) {
        double yaw = normalize_yaw(req.initial.yaw + 90.0 * k);
        poses.push_back(Pose{req.initial.position, yaw});
        for (double z = min_z; z <= max_z + 1e-9; z += dom.grid_step)
            for (double x = min_x; x <= max_x + 1e-9; x += dom.grid_step)
                poses.push_back(Pose{{x, 0.0, z}, yaw});
    }
    for (const Pose& p : poses) {
        RotRect rect = req.footprint_at(p);
        if (!rect_inside_polygon(rect, dom.boundary)) continue;
        bool blocked = false;
        for (const Polygon2& obs : dom.obstacles)
            if (rect_overlaps_convex(rect, obs)) { blocked = true; break; }
        if (blocked) continue;
        out.push_back({p, score_placement(p, req, dom)});
    }
    std::sort(out.begin(), out.end(),
              [](const OracleCandidate& a, const OracleCandidate& b) {
                  return a.sigma < b.sigma;
              });
    return out;
}

double oracle_optimum(const std::vector<PlacementRequest>& reqs, const SolveDomain& dom) {
    std::vector<std::vector<OracleCandidate>> lists;
    for (const PlacementRequest& r : reqs) lists.push_back(oracle_candidates(r, dom));
    double best = std::numeric_limits<double>::infinity();
    std::vector<RotRect> placed;
    auto rec = [&](auto&& self, size_t i, double sigma) -> void {
        if (sigma >= best) return;
        if (i == reqs.size()) {
            best = sigma;
            return;
        }
        for (const OracleCandidate& c : lists[i]) {
            if (sigma + c.sigma >= best) break;
            RotRect rect = reqs[i].footprint_at(c.pose);
            bool clear = true;
            for (const RotRect& other : placed)
                if (rects_overlap(rect, other)) { clear = false; break; }
            if (!clear) continue;
            placed.push_back(rect);
            self(self, i + 1, sigma + c.sigma);
            placed.pop_back();
        }
    };
    rec(rec, 0, 0.0);
    return best;
}

std::string layout_fingerprint(const Layout& lay) {
    std::string s;
    for (const PlacedMotif& pm : lay.placed) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%s:%.12f,%.12f,%.12f,%.12f;", pm.motif_id.c_str(),
                      pm.pose.position.x, pm.pose.position.z, pm.pose.yaw, pm.sigma);
        s += buf;
    }
    for (const std::string& u : lay.unplaced) s += "!" + u;
    return s;
}

}  // namespace

TEST_CASE("score_placement: seeded pose scores zero") {
    SolveDomain dom = square_room(4.0);
    PlacementRequest req = request("a", 1, 1, 2.0, 2.0);
    CHECK(score_placement(Pose{{2.0, 0, 2.0}, 0.0}, req, dom) == doctest::Approx(0.0));
}

TEST_CASE("score_placement: unit distance costs alpha = 1.5") {
    SolveDomain dom = square_room(4.0);
    PlacementRequest req = request("a", 1, 1, 2.0, 2.0);
    CHECK(score_placement(Pose{{3.0, 0, 2.0}, 0.0}, req, dom) == doctest::Approx(1.5));
}

TEST_CASE("score_placement: wall-aligned edge term is 1/phi") {
    SolveDomain dom = square_room(4.0);
    PlacementRequest req = request("a", 1, 1, 0.5, 2.0);
    req.wall_align = true;
    req.wall_id = 0;
    // phi(p0) = 0.5 -> sigma = 0 + 1/0.5 = 2
    CHECK(score_placement(Pose{{0.5, 0, 2.0}, 0.0}, req, dom) == doctest::Approx(2.0));
}

TEST_CASE("score_placement: outside the domain throws") {
    SolveDomain dom = square_room(4.0);
    PlacementRequest req = request("a", 1, 1, 2.0, 2.0);
    CHECK_THROWS_AS(score_placement(Pose{{5.0, 0, 2.0}, 0.0}, req, dom),
                    OutsideRegionError);
}

TEST_CASE("candidate_positions: feasible seed ranks first with score 0") {
    SolveDomain dom = square_room(4.0);
    PlacementRequest req = request("a", 1, 1, 2.0, 2.0);
    std::vector<ScoredPose> cands = candidate_positions(req, dom, {});
    REQUIRE_FALSE(cands.empty());
    CHECK(cands[0].sigma == doctest::Approx(0.0));
    CHECK(cands[0].pose.position.x == doctest::Approx(2.0));
    CHECK(cands[0].pose.position.z == doctest::Approx(2.0));
    for (size_t i = 1; i < cands.size(); ++i) CHECK(cands[i].sigma >= cands[i - 1].sigma);
}

TEST_CASE("candidate_positions: seed outside moves to the nearest in-bounds cell") {
    SolveDomain dom = square_room(4.0);
    PlacementRequest req = request("a", 1, 1, -0.2, 2.0);
    std::vector<ScoredPose> cands = candidate_positions(req, dom, {});
    REQUIRE_FALSE(cands.empty());
    // containment forces center x >= 0.5; nearest cell is (0.5, 2.0)
    CHECK(cands[0].pose.position.x == doctest::Approx(0.5));
    CHECK(cands[0].pose.position.z == doctest::Approx(2.0));
    CHECK(cands[0].sigma == doctest::Approx(1.5 * 0.7));
}

TEST_CASE("candidate_positions: wall alignment pins the back edge and yaw") {
    SolveDomain dom = square_room(4.0);
    // wall 0 runs from (0,0) to (4,0); inward normal faces +z
    PlacementRequest req = request("a", 1.2, 0.6, 2.0, 1.0);
    req.wall_align = true;
    req.wall_id = 0;
    std::vector<ScoredPose> cands = candidate_positions(req, dom, {});
    REQUIRE_FALSE(cands.empty());
    for (const ScoredPose& c : cands) {
        CHECK(c.pose.yaw == doctest::Approx(0.0));  // faces into the room (+z)
        Vec2 facing = c.pose.facing();
        Vec2 back{c.pose.position.x - facing.x * 0.3, c.pose.position.z - facing.z * 0.3};
        double wall_dist = point_segment_distance(back, {0, 0}, {4, 0});
        CHECK(wall_dist <= dom.grid_step * 0.5 + 1e-9);
    }
}

TEST_CASE("candidate_positions: placed footprints block cells") {
    SolveDomain dom = square_room(2.0);
    PlacementRequest req = request("a", 1, 1, 1.0, 1.0);
    RotRect blocker{{1.0, 1.0}, 0.5, 0.5, 0.0};
    std::vector<ScoredPose> cands = candidate_positions(req, dom, {blocker});
    for (const ScoredPose& c : cands) {
        RotRect rect = req.footprint_at(c.pose);
        CHECK_FALSE(rects_overlap(rect, blocker));
    }
}

TEST_CASE("solve_layout: feasible seeds solve to themselves with zero sigma") {
    SolveDomain dom = square_room(6.0);
    std::vector<PlacementRequest> reqs{request("a", 1.5, 1, 1.5, 1.0),
                                       request("b", 1, 1, 4.0, 4.0),
                                       request("c", 0.8, 0.5, 1.0, 4.5)};
    Layout lay = solve_layout(reqs, dom, 5.0);
    CHECK(lay.feasible);
    CHECK(lay.total_sigma == doctest::Approx(0.0));
    REQUIRE(lay.placed.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(lay.placed[i].motif_id == reqs[i].motif_id);
        CHECK(lay.placed[i].pose.position.x ==
              doctest::Approx(reqs[i].initial.position.x));
        CHECK(lay.placed[i].pose.position.z ==
              doctest::Approx(reqs[i].initial.position.z));
    }
    CHECK(verify_layout(reqs, dom, lay));
}

TEST_CASE("solve_layout: colliding twins separate at the exhaustive optimum") {
    SolveDomain dom = square_room(8.0);
    std::vector<PlacementRequest> reqs{request("a", 1, 1, 4.0, 4.0),
                                       request("b", 1, 1, 4.0, 4.0)};
    Layout lay = solve_layout(reqs, dom, 5.0);
    REQUIRE(lay.feasible);
    RotRect ra = reqs[0].footprint_at(lay.placed[0].pose);
    RotRect rb = reqs[1].footprint_at(lay.placed[1].pose);
    CHECK_FALSE(rects_overlap(ra, rb));
    CHECK(lay.total_sigma == doctest::Approx(oracle_optimum(reqs, dom)).epsilon(1e-9));
    CHECK(verify_layout(reqs, dom, lay));
}

TEST_CASE("solve_layout: motif larger than the room is reported unplaced") {
    SolveDomain dom = square_room(2.0);
    std::vector<PlacementRequest> reqs{request("giant", 3, 3, 1.0, 1.0)};
    Layout lay = solve_layout(reqs, dom, 2.0);
    CHECK_FALSE(lay.feasible);
    REQUIRE(lay.unplaced.size() == 1);
    CHECK(lay.unplaced[0] == "giant");
}

TEST_CASE("solve_layout: deferred motif places after the others") {
    SolveDomain dom = square_room(3.0);
    // Big motif must sit in the center initially; the small one's seed
    // is under it, with room elsewhere once the big one is fixed.
    std::vector<PlacementRequest> reqs{request("small", 0.8, 0.8, 1.5, 1.5),
                                       request("big", 2.0, 2.0, 1.5, 1.5)};
    Layout lay = solve_layout(reqs, dom, 5.0);
    CHECK(lay.feasible);
    CHECK(verify_layout(reqs, dom, lay));
}

TEST_CASE("solve_layout: random small instances match the exhaustive oracle") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> pos(0.2, 1.6);
    std::uniform_real_distribution<double> size(0.3, 0.8);
    std::uniform_int_distribution<int> count(1, 3);
    for (int trial = 0; trial < 12; ++trial) {
        SolveDomain dom = square_room(1.8, 0.1);  // 19x19 = 361 cells
        std::vector<PlacementRequest> reqs;
        int n = count(rng);
        for (int i = 0; i < n; ++i)
            reqs.push_back(request("m" + std::to_string(i), size(rng), size(rng), pos(rng),
                                   pos(rng)));
        Layout lay = solve_layout(reqs, dom, 5.0);
        double opt = oracle_optimum(reqs, dom);
        if (std::isinf(opt)) {
            CHECK_FALSE(lay.feasible);
        } else {
            REQUIRE(lay.feasible);
            CHECK(lay.total_sigma == doctest::Approx(opt).epsilon(1e-9));
            CHECK(verify_layout(reqs, dom, lay));
        }
    }
}

TEST_CASE("solve_layout: adding an obstacle never lowers the optimum") {
    SolveDomain dom = square_room(1.6, 0.1);
    std::vector<PlacementRequest> reqs{request("a", 0.6, 0.6, 0.8, 0.8),
                                       request("b", 0.5, 0.5, 0.8, 0.8)};
    Layout before = solve_layout(reqs, dom, 5.0);
    SolveDomain blocked = dom;
    blocked.obstacles.push_back(Polygon2::rect(0.5, 0.5, 1.1, 1.1));
    Layout after = solve_layout(reqs, blocked, 5.0);
    REQUIRE(before.feasible);
    if (after.feasible) CHECK(after.total_sigma >= before.total_sigma - 1e-9);
}

TEST_CASE("solve_layout: deterministic across runs") {
    SolveDomain dom = square_room(4.0);
    dom.obstacles.push_back(Polygon2{{{0.2, 0.2}, {1.1, 0.4}, {0.8, 1.2}}});
    std::vector<PlacementRequest> reqs{request("a", 1.2, 0.8, 1.0, 1.0),
                                       request("b", 1.0, 1.0, 1.2, 1.1),
                                       request("c", 0.6, 0.6, 3.0, 3.0)};
    Layout l1 = solve_layout(reqs, dom, 3.0);
    Layout l2 = solve_layout(reqs, dom, 3.0);
    CHECK(layout_fingerprint(l1) == layout_fingerprint(l2));
}

TEST_CASE("solve_layout: ignore_collision motifs overlap freely and block nothing") {
    SolveDomain dom = square_room(3.0);
    PlacementRequest rug = request("rug", 2.0, 2.0, 1.5, 1.5);
    rug.ignore_collision = true;
    std::vector<PlacementRequest> reqs{rug, request("table", 1.0, 1.0, 1.5, 1.5)};
    Layout lay = solve_layout(reqs, dom, 3.0);
    REQUIRE(lay.feasible);
    CHECK(lay.total_sigma == doctest::Approx(0.0));  // both stay on their seeds
    CHECK(verify_layout(reqs, dom, lay));
}

TEST_CASE("verify_layout rejects manipulated results") {
    SolveDomain dom = square_room(4.0);
    std::vector<PlacementRequest> reqs{request("a", 1, 1, 1.0, 1.0),
                                       request("b", 1, 1, 3.0, 3.0)};
    Layout lay = solve_layout(reqs, dom, 2.0);
    REQUIRE(lay.feasible);
    Layout bad = lay;
    bad.placed[1].pose.position.x = bad.placed[0].pose.position.x;
    bad.placed[1].pose.position.z = bad.placed[0].pose.position.z;
    std::string why;
    CHECK_FALSE(verify_layout(reqs, dom, bad, &why));
    CHECK_FALSE(why.empty());

    Layout outside = lay;
    outside.placed[0].pose.position.x = 3.9;  // footprint pokes out
    CHECK_FALSE(verify_layout(reqs, dom, outside, &why));
}

TEST_CASE("solver input validation") {
    SolveDomain dom = square_room(4.0);
    CHECK_THROWS_AS(solve_layout({}, dom, 1.0), SolverError);
    PlacementRequest bad = request("x", -1, 1, 1, 1);
    CHECK_THROWS_AS(solve_layout({bad}, dom, 1.0), SolverError);
    PlacementRequest wall = request("w", 1, 1, 1, 1);
    wall.wall_align = true;
    wall.wall_id = 9;
    CHECK_THROWS_AS(solve_layout({wall}, dom, 1.0), SolverError);
}
