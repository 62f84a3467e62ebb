#pragma once

#include <string>
#include <vector>

#include "hsm/pipeline/planner.hpp"
#include "hsm/pipeline/plans.hpp"
#include "hsm/scene/assets.hpp"
#include "hsm/scene/scene.hpp"

namespace hsm {

class PipelineError : public Error {
public:
    PipelineError(const std::string& stage, const std::string& detail, int exit_code = 1,
                  std::string partial_scene = {})
        : Error("[" + stage + "] " + detail),
          stage_name(stage),
          code(exit_code),
          partial_scene_json(std::move(partial_scene)) {}
    std::string stage_name;
    int code;  // 2 = validation failure, 3 = solver infeasible, 1 = other
    std::string partial_scene_json;  // dumped state for debugging, may be empty
};

struct GenerateOptions {
    uint64_t seed = 0;
    double t_occ = 0.3;
    double floor_grid = 0.1;
    double furniture_grid = 0.01;
    double solver_time_limit = 10.0;
    int threads = 1;  // per-furniture region extraction fan-out
};

// Full offline generation: floor region, scene-motif instantiation with
// retrieved assets, floor layout solving, per-furniture support-region
// extraction plus small-object solving, one optional augmentation round
// when occupancy stays below t_occ and a planner is attached, and a
// final audit. Deterministic for fixed plans, manifest, and seed.
Scene run_generate(const PlanSet& plans, const AssetManifest& manifest,
                   const Embedder& embedder, PlannerClient* planner,
                   const GenerateOptions& opt = {});

// Post-generation invariant check: unique ids, support consistency,
// footprint containment, occupancy bookkeeping. Empty result = pass.
std::vector<std::string> audit_scene(const Scene& scene, double t_occ = 0.3);

}  // namespace hsm
