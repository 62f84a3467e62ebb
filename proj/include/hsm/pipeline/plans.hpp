#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hsm/motifs/motifs.hpp"
#include "hsm/scene/scene.hpp"

namespace hsm {

class PlanError : public Error {
public:
    PlanError(std::string field_path, const std::string& message)
        : Error(field_path.empty() ? message : field_path + ": " + message),
          field(std::move(field_path)) {}
    std::string field;
};

// One decompose-shaped object entry (furniture or small object).
struct PlanObject {
    int id = 0;
    std::string name;
    std::string description;
    Vec3 dims;
    int amount = 1;
    std::optional<int> parent_object;  // small objects reference their furniture
};

struct RequirementPlan {
    std::string room_type;
    std::optional<Room> room;  // must be supplied when the document omits it
    std::vector<PlanObject> objects;
    std::vector<PlanObject> small_objects;
};

struct ArrangementMember {
    int object_id = 0;
    int amount = 1;
};

struct GroupingArrangement {
    std::string id;
    std::string area_name;
    std::string description;
    std::vector<ArrangementMember> members;
    Vec3 total_footprint;
    double clearance = 0.0;
    std::string rationale;
};

struct GroupingPlan {
    std::vector<GroupingArrangement> arrangements;
};

struct PlacementEntry {
    std::string id;  // arrangement id
    Vec2 position;
    double rotation = 0.0;
    bool wall_alignment = false;
    std::optional<int> wall_alignment_id;
    bool ignore_collision = false;
    std::optional<int> region_id;  // pin a support region for small-object arrangements
    std::string rationale;
};

struct PlacementPlan {
    std::vector<PlacementEntry> positions;
};

// Augmentation response: extra floor objects, each becoming its own
// single-object arrangement "aug_<id>", plus their placements.
struct AugmentPlan {
    std::vector<PlanObject> objects;
    std::vector<PlacementEntry> positions;
};

enum class PlanKind { requirement, grouping, hierarchy, placement, augment };

const char* plan_kind_name(PlanKind kind);

RequirementPlan parse_requirement_plan(const nlohmann::json& doc);
GroupingPlan parse_grouping_plan(const nlohmann::json& doc);
PlacementPlan parse_placement_plan(const nlohmann::json& doc);
AugmentPlan parse_augment_plan(const nlohmann::json& doc);
MotifNode parse_hierarchy_plan(const nlohmann::json& doc);

struct PlanSet {
    RequirementPlan requirement;
    GroupingPlan grouping;
    std::map<std::string, MotifNode> hierarchies;  // arrangement id -> root node
    PlacementPlan placement;
    std::map<std::string, std::string> provenance;  // file name -> content hash

    // Reads requirement.json, grouping.json, placement.json and every
    // hierarchy-<arrangement-id>.json from a directory.
    static PlanSet load_dir(const std::string& dir);
};

// Cross-document checks: objects covered exactly once with matching
// amounts, hierarchies valid and consistent with their arrangement
// members, placements referencing known arrangements, wall ids in
// range. Violations are data, not exceptions.
std::vector<Violation> validate_plans(const PlanSet& plans);

}  // namespace hsm
