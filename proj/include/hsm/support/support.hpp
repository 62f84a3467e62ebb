#pragma once

#include <cstdint>
#include <vector>

#include "hsm/geom/mesh.hpp"
#include "hsm/geom/obb.hpp"
#include "hsm/geom/polygon.hpp"

namespace hsm {

struct SupportConfig {
    double t_norm = 0.9;    // cluster normal dot threshold vs seed
    double t_adj = 0.95;    // adjacent normal dot threshold
    double t_clear = 0.5;   // minimum clearance between surfaces (m)
    double h_top = 1.0;     // default clearance for top surfaces (m)
    double t_merge = 0.05;  // merge distance for horizontal surfaces (m)
    double t_hzn = 0.95;    // |normal.y| at/above which a plane is horizontal
    double t_vert = 0.05;   // |normal.y| below which a plane is vertical
    double r_plane = 0.1;   // plane thickness ratio
    double tol = 0.01;      // upright-vs-free OBB volume tolerance

    void validate() const;  // throws Error when a threshold is out of range
};

struct SurfaceCluster {
    std::vector<uint32_t> faces;  // indices into the source mesh, ascending
    Obb box;
    PlaneClass plane;
};

struct SupportRegion {
    int id = 0;
    Polygon2 footprint;       // xz projection
    double surface_height = 0.0;
    double clearance = 0.0;   // h_i
    bool is_top = false;
    std::vector<uint32_t> faces;
};

// Region-growing planar clustering (seed = largest unclustered face by
// area; expansion over edge adjacency gated by t_norm against the seed
// and t_adj against the neighbor). Every face ends up in exactly one
// cluster.
std::vector<SurfaceCluster> extract_planar_surfaces(const TriMesh& mesh,
                                                    const SupportConfig& cfg);

// Horizontal surface: a planar-horizontal cluster with its projected
// footprint and height, before clearance filtering.
struct HorizontalSurface {
    std::vector<uint32_t> faces;
    std::vector<Vec2> face_centroids;  // xz, parallel to faces
    Polygon2 footprint;
    double height = 0.0;
    double clearance = 0.0;
    bool is_top = false;
};

// Vertical surface reduced to the data the refinement step needs: its
// projected strip and vertical span.
struct VerticalSurface {
    Polygon2 strip;  // projected cross-section, minimum 1 mm thick
    double y_min = 0.0;
    double y_max = 0.0;
};

HorizontalSurface make_horizontal_surface(const TriMesh& mesh, const SurfaceCluster& c);
VerticalSurface make_vertical_surface(const TriMesh& mesh, const SurfaceCluster& c);

// xz footprint of a face subset: union of projected triangles with a
// 1 mm vertex weld. Returns the largest connected piece.
Polygon2 footprint_from_faces(const TriMesh& mesh, const std::vector<uint32_t>& faces);

// Assigns each surface the vertical gap to the nearest higher
// overlapping horizontal surface; surfaces with nothing above become
// top surfaces with clearance h_top. Surfaces with clearance below
// t_clear are discarded.
std::vector<HorizontalSurface> compute_clearances(std::vector<HorizontalSurface> horizontals,
                                                  const SupportConfig& cfg);

// Merges horizontal surfaces within t_merge (in y and xz) and splits
// footprints crossed by protruding vertical surfaces. Output sorted by
// surface height then area descending, ids assigned in order.
std::vector<SupportRegion> refine_regions(const std::vector<HorizontalSurface>& horizontals,
                                          const std::vector<VerticalSurface>& verticals,
                                          const SupportConfig& cfg);

std::vector<SupportRegion> extract_support_regions(const TriMesh& mesh,
                                                   const SupportConfig& cfg);

// Evaluation baseline: only the topmost horizontal region(s), each with
// clearance h_top.
std::vector<SupportRegion> top_surface_baseline(const TriMesh& mesh, const SupportConfig& cfg);

}  // namespace hsm
