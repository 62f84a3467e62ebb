#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hsm/geom/polygon.hpp"
#include "hsm/geom/rect.hpp"
#include "hsm/geom/vec.hpp"

namespace hsm {

class SolverError : public Error {
public:
    explicit SolverError(const std::string& what) : Error(what) {}
};

// Wall i runs from boundary vertex i to vertex i+1, numbered clockwise
// from the boundary vertices.
struct SolveDomain {
    Polygon2 boundary;
    std::vector<Polygon2> obstacles;  // doors, previously placed objects
    double grid_step = 0.1;           // 0.1 floor scale, 0.01 furniture scale

    int wall_count() const { return static_cast<int>(boundary.size()); }
};

struct PlacementRequest {
    std::string motif_id;
    double width = 0.0;  // footprint of the arrangement's rotated rectangle
    double depth = 0.0;
    Pose initial;        // p_i0: x, z of the footprint center plus yaw
    bool wall_align = false;           // delta_edge
    std::optional<int> wall_id;        // required when wall_align
    bool ignore_collision = false;

    RotRect footprint_at(const Pose& p) const {
        return RotRect{{p.position.x, p.position.z}, width * 0.5, depth * 0.5, p.yaw};
    }
    double area() const { return width * depth; }
};

struct ScoredPose {
    Pose pose;
    double sigma = 0.0;
};

struct PlacedMotif {
    std::string motif_id;
    Pose pose;
    double sigma = 0.0;
};

struct Layout {
    std::vector<PlacedMotif> placed;      // in request order, solved ones only
    std::vector<std::string> unplaced;    // motif ids without a feasible pose
    double total_sigma = 0.0;
    bool feasible = false;
    double elapsed_seconds = 0.0;
    long nodes_expanded = 0;
};

// sigma(p1) = alpha * |p1 - p0| + delta_edge / max(phi(p1), grid_step/2),
// alpha = 1.5, phi measured from the footprint center to the boundary.
// Throws OutsideRegionError when p1 lies outside the domain.
double score_placement(const Pose& p1, const PlacementRequest& req, const SolveDomain& dom);

// Every feasible grid pose for the request given already-placed
// footprints, sorted by ascending score. Candidate yaws are the initial
// yaw and its 90-degree multiples unless wall alignment forces the
// wall-normal yaw; the initial pose itself is always tried.
std::vector<ScoredPose> candidate_positions(const PlacementRequest& req,
                                            const SolveDomain& dom,
                                            const std::vector<RotRect>& placed);

// Grid DFS over motifs in decreasing footprint area. Expands the best
// three candidates per node first, then progressively widens while the
// deterministic budget (derived from the time limit) lasts, so small
// instances reach the exhaustive optimum. Motifs with no candidates are
// deferred and retried after the others; if they still cannot be placed
// the layout comes back with feasible = false.
Layout solve_layout(const std::vector<PlacementRequest>& reqs, const SolveDomain& dom,
                    double time_limit_seconds = 10.0);

// Re-verifies containment, non-overlap, and wall contact independently
// of the search. Returns false and a reason on the first violation.
bool verify_layout(const std::vector<PlacementRequest>& reqs, const SolveDomain& dom,
                   const Layout& layout, std::string* reason = nullptr);

}  // namespace hsm
