#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hsm/geom/rect.hpp"
#include "hsm/geom/vec.hpp"

namespace hsm {

class MotifError : public Error {
public:
    explicit MotifError(const std::string& what) : Error(what) {}
};

struct ObjectSpec {
    std::string name;
    Vec3 dims;  // width (x), height (y), depth (z) at yaw 0
    std::optional<std::string> asset_id;
    int amount = 1;
};

enum class MotifType {
    stack,
    pile,
    row,
    grid,
    pyramid,
    left_of,
    in_front_of,
    on_top,
    surround,
    rectangular_perimeter,
    bed_nightstand,
    on_each_side,
};

const char* motif_type_name(MotifType t);
std::optional<MotifType> motif_type_from_name(const std::string& name);

// Number of unique object types the motif accepts: 1, 2 or 3.
int motif_arity(MotifType t);

// Hierarchy node: either a leaf object reference (type "object", the
// description names the object) or a motif over child elements.
struct MotifNode {
    bool is_object = false;
    MotifType type = MotifType::stack;  // valid when !is_object
    std::string description;
    std::vector<MotifNode> elements;
    int amount = 1;           // leaf objects only
    bool make_tight = false;  // meaningful on the root
};

struct Violation {
    std::string path;  // node path like "root/elements[1]"
    std::string message;
};

// Validates arity per motif type, object uniqueness across the whole
// tree, non-empty elements for motif nodes, and positive amounts.
// Returns every violation found; an empty list means the tree is valid.
std::vector<Violation> validate_hierarchy(const MotifNode& root);

struct PlacedObject {
    ObjectSpec spec;  // amount always 1 on placed instances
    Pose pose;

    RotRect footprint() const {
        return RotRect{{pose.position.x, pose.position.z}, spec.dims.x * 0.5,
                       spec.dims.z * 0.5, pose.yaw};
    }
    Aabb bounds() const;
};

struct Arrangement {
    std::vector<PlacedObject> objects;
    Aabb bounds;
    std::string provenance;  // description of the producing node

    void recompute_bounds();
    // Translate so the bounds are centered in xz and grounded at y = 0.
    void normalize();
};

// Per-call parameters; unset fields use the motif's documented default.
struct MotifParams {
    std::optional<double> gap;
    std::optional<int> rows;  // grid
    std::optional<int> cols;  // grid
    uint64_t seed = 0;                   // pile
    double pile_offset_frac = 0.1;       // pile xz offsets within ±frac·footprint
    double pile_max_yaw = 30.0;          // pile yaw within ±deg
};

// A motif input: either a bare object or an already-instantiated
// arrangement treated as a rigid unit.
struct MotifInput {
    std::optional<ObjectSpec> object;       // leaf, amount copies
    std::optional<Arrangement> arrangement; // rigid composite, single copy

    static MotifInput from_object(ObjectSpec spec) {
        MotifInput in;
        in.object = std::move(spec);
        return in;
    }
    static MotifInput from_arrangement(Arrangement a) {
        MotifInput in;
        in.arrangement = std::move(a);
        return in;
    }
};

Arrangement execute_motif(MotifType type, const std::vector<MotifInput>& inputs,
                          const MotifParams& params = {});

// Bottom-up instantiation of a validated hierarchy. Leaves resolve
// through the assets map by object name; pile seeds derive from the
// given seed and the node path, so results are reproducible.
Arrangement instantiate_scene_motif(const MotifNode& root,
                                    const std::map<std::string, ObjectSpec>& assets,
                                    uint64_t seed);

}  // namespace hsm
