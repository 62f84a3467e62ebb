#include "hsm/scene/scene.hpp"

#include <algorithm>
#include <cmath>

namespace hsm {

namespace {

constexpr double kDoorLeafThickness = 0.05;
constexpr int kSwingSegments = 16;
constexpr double kOnWallEps = 1e-6;

}  // namespace

void Room::validate() const {
    if (boundary.size() < 3)
        throw SceneError("room boundary needs at least 3 vertices");
    if (std::abs(boundary[0].x) > 0.0 || std::abs(boundary[0].z) > 0.0)
        throw SceneError("room boundary must start at (0,0)");
    require_simple(boundary, "room boundary");
    if (height <= 0.0) throw SceneError("room height must be positive");
    if (door) {
        if (door->width <= 0.0) throw SceneError("door width must be positive");
        bool on_wall = false;
        const size_t n = boundary.size();
        for (size_t i = 0; i < n && !on_wall; ++i)
            on_wall = point_segment_distance(door->position, boundary[i],
                                             boundary[(i + 1) % n]) <= kOnWallEps;
        if (!on_wall)
            throw SceneError("door position does not lie on a boundary segment");
    }
}

FloorRegion floor_support_region(const Room& room) {
    room.validate();
    FloorRegion out;
    out.region.id = 0;
    out.region.footprint = room.boundary;
    out.region.surface_height = 0.0;
    out.region.clearance = room.height;
    out.region.is_top = false;

    if (room.door) {
        const Door& door = *room.door;
        // Locate the containing wall.
        const size_t n = room.boundary.size();
        size_t wall = 0;
        double best = 1e300;
        for (size_t i = 0; i < n; ++i) {
            double d = point_segment_distance(door.position, room.boundary[i],
                                              room.boundary[(i + 1) % n]);
            if (d < best) { best = d; wall = i; }
        }
        Vec2 a = room.boundary[wall];
        Vec2 b = room.boundary[(wall + 1) % n];
        Vec2 dir = (b - a) * (1.0 / distance(a, b));
        Vec2 inward{-dir.z, dir.x};
        Vec2 mid = (a + b) * 0.5;
        if (!contains_point(room.boundary, mid + inward * 1e-4)) inward = inward * -1.0;

        // Hinge at the clockwise end of the door segment.
        Vec2 hinge = door.position - dir * (door.width * 0.5);
        Vec2 far = door.position + dir * (door.width * 0.5);

        Polygon2 leaf{{hinge, far, far + inward * kDoorLeafThickness,
                       hinge + inward * kDoorLeafThickness}};
        out.obstacles.push_back(std::move(leaf));

        Polygon2 sector;
        sector.pts.push_back(hinge);
        for (int s = 0; s <= kSwingSegments; ++s) {
            double t = static_cast<double>(s) / kSwingSegments;  // 0 -> leaf, 1 -> inward
            double ang = t * (kPi / 2.0);
            Vec2 p = hinge + dir * (door.width * std::cos(ang)) +
                     inward * (door.width * std::sin(ang));
            sector.pts.push_back(p);
        }
        out.obstacles.push_back(std::move(sector));
    }
    return out;
}

double occupancy_ratio(const Scene& scene) {
    double floor_area = area(scene.room.boundary);
    if (floor_area <= 0.0) return 0.0;
    std::vector<Polygon2> footprints;
    for (const SceneObject& obj : scene.objects)
        if (obj.parent.is_floor) footprints.push_back(obj.footprint().to_polygon());
    if (footprints.empty()) return 0.0;
    double covered = polygon_union_area(footprints);
    return std::clamp(covered / floor_area, 0.0, 1.0);
}

}  // namespace hsm
