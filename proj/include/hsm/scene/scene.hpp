#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hsm/geom/polygon.hpp"
#include "hsm/geom/rect.hpp"
#include "hsm/geom/vec.hpp"
#include "hsm/motifs/motifs.hpp"
#include "hsm/support/support.hpp"

namespace hsm {

class SceneError : public Error {
public:
    explicit SceneError(const std::string& what) : Error(what) {}
};

struct Door {
    Vec2 position;       // lies on a boundary segment
    double width = 0.8;  // leaf width; the swing arc uses it as radius
};

struct Room {
    Polygon2 boundary;   // first vertex exactly (0,0), clockwise order
    double height = 2.5;
    std::optional<Door> door;

    void validate() const;  // throws SceneError
};

// Floor support region plus the obstacles the door carves out of it
// (leaf rectangle + quarter-circle swing sector).
struct FloorRegion {
    SupportRegion region;
    std::vector<Polygon2> obstacles;
};
FloorRegion floor_support_region(const Room& room);

struct ParentRef {
    bool is_floor = true;
    std::string furniture_id;  // when !is_floor
    int region_id = 0;

    bool operator==(const ParentRef&) const = default;
};

struct SceneObject {
    std::string instance_id;
    ObjectSpec spec;
    Pose pose;  // world frame; anchor = bottom-center of the AABB
    ParentRef parent;
    std::string motif_id;  // source scene motif
    bool augmented = false;

    RotRect footprint() const {
        return RotRect{{pose.position.x, pose.position.z}, spec.dims.x * 0.5,
                       spec.dims.z * 0.5, pose.yaw};
    }
};

// Record of one instantiated scene motif after placement.
struct SceneMotifRecord {
    std::string id;
    std::string description;
    Pose pose;        // world pose of the arrangement's bounds center (anchor convention)
    Vec3 extents;     // arrangement bounds extents
    ParentRef parent;
    double sigma = 0.0;
    bool augmented = false;
};

struct Scene {
    int version = 1;
    uint64_t seed = 0;
    Room room;
    std::vector<SceneObject> objects;
    std::vector<SceneMotifRecord> motifs;
    // Support regions extracted per furniture instance, in that
    // furniture's local (mesh) frame.
    std::map<std::string, std::vector<SupportRegion>> furniture_regions;
    std::map<std::string, std::string> plan_provenance;  // document -> source
    std::vector<std::string> notes;
};

// Union area of floor-parented footprints over floor area, in [0, 1]
// (clipped). Overlapping footprints are not double-counted.
double occupancy_ratio(const Scene& scene);

// Serialization: versioned JSON document with deterministic key order;
// parse(serialize(s)) is structurally lossless. Parse errors name the
// offending field path or instance id.
std::string serialize_scene(const Scene& scene);
Scene parse_scene(const std::string& document);

}  // namespace hsm
