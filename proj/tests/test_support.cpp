#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <nlohmann/json.hpp>

#include "hsm/support/region_json.hpp"
#include "hsm/support/support.hpp"
#include "helpers/test_meshes.hpp"

using namespace hsm;
using hsm::testing::MeshBuilder;

TEST_CASE("extract_planar_surfaces: flat quad is one cluster") {
    TriMesh mesh = hsm::testing::flat_quad();
    std::vector<SurfaceCluster> clusters = extract_planar_surfaces(mesh, SupportConfig{});
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[0].faces.size() == 2);
    CHECK(clusters[0].plane.planar);
    CHECK(clusters[0].plane.orientation == SurfaceOrientation::horizontal);
}

TEST_CASE("extract_planar_surfaces: cube splits into 6 clusters of 2") {
    TriMesh cube = hsm::testing::unit_cube();
    std::vector<SurfaceCluster> clusters = extract_planar_surfaces(cube, SupportConfig{});
    REQUIRE(clusters.size() == 6);
    size_t total = 0;
    for (const SurfaceCluster& c : clusters) {
        CHECK(c.faces.size() == 2);
        total += c.faces.size();
    }
    CHECK(total == cube.face_count());
}

TEST_CASE("extract_planar_surfaces: disconnected coplanar quads stay separate") {
    MeshBuilder b;
    b.horizontal(0, 0, 1, 1, 0.5);
    b.horizontal(2, 0, 3, 1, 0.5);
    TriMesh mesh = b.build();
    std::vector<SurfaceCluster> clusters = extract_planar_surfaces(mesh, SupportConfig{});
    CHECK(clusters.size() == 2);
}

TEST_CASE("extract_planar_surfaces: partition covers every face exactly once") {
    TriMesh mesh = hsm::testing::bookcase({0.0, 0.6, 1.2}, 1.8, true);
    std::vector<SurfaceCluster> clusters = extract_planar_surfaces(mesh, SupportConfig{});
    std::vector<int> seen(mesh.face_count(), 0);
    for (const SurfaceCluster& c : clusters)
        for (uint32_t f : c.faces) seen[f] += 1;
    for (int s : seen) CHECK(s == 1);
}

TEST_CASE("compute_clearances: lone tabletop is a top surface") {
    TriMesh mesh = hsm::testing::lone_tabletop(1.2, 0.8, 0.7);
    std::vector<SupportRegion> regions = extract_support_regions(mesh, SupportConfig{});
    REQUIRE(regions.size() == 1);
    CHECK(regions[0].is_top);
    CHECK(regions[0].clearance == doctest::Approx(1.0));
    CHECK(regions[0].surface_height == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(area(regions[0].footprint) == doctest::Approx(1.2 * 0.8).epsilon(1e-6));
}

TEST_CASE("compute_clearances: bookcase shelves get exact gaps") {
    TriMesh mesh = hsm::testing::bookcase({0.0, 0.6, 1.2}, 1.8);
    std::vector<SupportRegion> regions = extract_support_regions(mesh, SupportConfig{});
    REQUIRE(regions.size() == 4);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(regions[i].surface_height == doctest::Approx(0.6 * i).epsilon(1e-9));
        CHECK(regions[i].clearance == doctest::Approx(0.6).epsilon(1e-9));
        CHECK_FALSE(regions[i].is_top);
    }
    CHECK(regions[3].surface_height == doctest::Approx(1.8).epsilon(1e-9));
    CHECK(regions[3].is_top);
    CHECK(regions[3].clearance == doctest::Approx(1.0));
}

TEST_CASE("compute_clearances: 0.4 m spacing discards interior shelves") {
    TriMesh mesh = hsm::testing::bookcase({0.0, 0.4, 0.8, 1.2}, 1.6);
    std::vector<SupportRegion> regions = extract_support_regions(mesh, SupportConfig{});
    REQUIRE(regions.size() == 1);
    CHECK(regions[0].is_top);
    CHECK(regions[0].surface_height == doctest::Approx(1.6).epsilon(1e-9));
}

TEST_CASE("refine_regions: tabletop halves 0.03 m apart merge") {
    TriMesh mesh = hsm::testing::two_half_tabletops(0.03);
    std::vector<SupportRegion> regions = extract_support_regions(mesh, SupportConfig{});
    REQUIRE(regions.size() == 1);
    CHECK(area(regions[0].footprint) == doctest::Approx(1.03).epsilon(1e-3));
}

TEST_CASE("refine_regions: height difference above t_merge keeps tables apart") {
    MeshBuilder b;
    b.horizontal(-0.5, -0.5, 0.0, 0.5, 0.7);
    b.horizontal(0.03, -0.5, 0.53, 0.5, 0.9);  // 0.2 m higher
    TriMesh mesh = b.build();
    std::vector<SupportRegion> regions = extract_support_regions(mesh, SupportConfig{});
    CHECK(regions.size() == 2);
}

TEST_CASE("refine_regions: vertical divider splits a shelf into compartments") {
    TriMesh mesh = hsm::testing::bookcase({0.6}, 1.2, true);
    // shelf at 0.6 crossed by the divider standing on it; the top is not.
    std::vector<SupportRegion> regions = extract_support_regions(mesh, SupportConfig{});
    REQUIRE(regions.size() == 3);
    CHECK(regions[0].surface_height == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(regions[1].surface_height == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(regions[2].surface_height == doctest::Approx(1.2).epsilon(1e-9));
    double shelf_area = (0.8 - 0.02) * 0.32;  // shelves are inset 0.01 per side
    double cut = 0.001 * 0.32;                // 1 mm divider cut
    CHECK(area(regions[0].footprint) + area(regions[1].footprint) ==
          doctest::Approx(shelf_area - cut).epsilon(1e-2));
    CHECK(area(regions[0].footprint) ==
          doctest::Approx(area(regions[1].footprint)).epsilon(1e-6));
}

TEST_CASE("extract_support_regions: bookcase with divider reproduces compartments") {
    TriMesh mesh = hsm::testing::bookcase({0.0, 0.6, 1.2}, 1.8, true);
    std::vector<SupportRegion> regions = extract_support_regions(mesh, SupportConfig{});
    // 3 shelves split in two each, top stays whole: 3*2 + 1
    CHECK(regions.size() == 7);
    int top_count = 0;
    for (const SupportRegion& r : regions) top_count += r.is_top ? 1 : 0;
    CHECK(top_count == 1);
}

TEST_CASE("extract_support_regions: sphere yields no regions") {
    TriMesh sphere = hsm::testing::sphere_mesh(0.5);
    CHECK(extract_support_regions(sphere, SupportConfig{}).empty());
}

TEST_CASE("extract_support_regions: empty mesh yields no regions") {
    CHECK(extract_support_regions(TriMesh{}, SupportConfig{}).empty());
}

TEST_CASE("extract_support_regions: deterministic byte-for-byte") {
    TriMesh mesh = hsm::testing::bookcase({0.0, 0.6, 1.2}, 1.8, true);
    auto serialize = [&]() {
        return regions_document(extract_support_regions(mesh, SupportConfig{}), "m").dump();
    };
    CHECK(serialize() == serialize());
}

TEST_CASE("extract_support_regions: raising t_clear never adds regions") {
    TriMesh mesh = hsm::testing::bookcase({0.0, 0.55, 1.1}, 1.8);
    size_t prev = 1000;
    for (double t_clear : {0.3, 0.5, 0.6, 0.9, 1.2}) {
        SupportConfig cfg;
        cfg.t_clear = t_clear;
        size_t n = extract_support_regions(mesh, cfg).size();
        CHECK(n <= prev);
        prev = n;
    }
}

TEST_CASE("footprint containment inside mesh bounds") {
    TriMesh mesh = hsm::testing::bookcase({0.0, 0.6, 1.2}, 1.8, true);
    Aabb bb = mesh.bounds();
    Polygon2 bounds_rect =
        Polygon2::rect(bb.min.x - 1e-6, bb.min.z - 1e-6, bb.max.x + 1e-6, bb.max.z + 1e-6);
    for (const SupportRegion& r : extract_support_regions(mesh, SupportConfig{})) {
        double inter = polygon_intersection_area(r.footprint, bounds_rect);
        CHECK(inter == doctest::Approx(area(r.footprint)).epsilon(1e-9));
    }
}

TEST_CASE("top_surface_baseline: bookcase returns only the top") {
    TriMesh mesh = hsm::testing::bookcase({0.0, 0.6, 1.2}, 1.8);
    std::vector<SupportRegion> base = top_surface_baseline(mesh, SupportConfig{});
    REQUIRE(base.size() == 1);
    CHECK(base[0].surface_height == doctest::Approx(1.8).epsilon(1e-9));
    CHECK(base[0].is_top);
    CHECK(base[0].clearance == doctest::Approx(1.0));
}

TEST_CASE("top_surface_baseline: lone tabletop equals full extraction") {
    TriMesh mesh = hsm::testing::lone_tabletop();
    std::vector<SupportRegion> full = extract_support_regions(mesh, SupportConfig{});
    std::vector<SupportRegion> base = top_surface_baseline(mesh, SupportConfig{});
    REQUIRE(full.size() == 1);
    REQUIRE(base.size() == 1);
    CHECK(area(full[0].footprint) == doctest::Approx(area(base[0].footprint)));
    CHECK(full[0].surface_height == doctest::Approx(base[0].surface_height));
}

TEST_CASE("top_surface_baseline: nightstand hides its drawer shelf") {
    TriMesh mesh = hsm::testing::nightstand_with_shelf();
    std::vector<SupportRegion> full = extract_support_regions(mesh, SupportConfig{});
    std::vector<SupportRegion> base = top_surface_baseline(mesh, SupportConfig{});
    CHECK(base.size() == 1);
    CHECK(full.size() >= 2);
}

TEST_CASE("baseline regions subset of full extraction topmost (IoU >= 0.99)") {
    for (bool divider : {false, true}) {
        TriMesh mesh = hsm::testing::bookcase({0.0, 0.6, 1.2}, 1.8, divider);
        std::vector<SupportRegion> full = extract_support_regions(mesh, SupportConfig{});
        std::vector<SupportRegion> base = top_surface_baseline(mesh, SupportConfig{});
        double top = 0.0;
        for (const SupportRegion& r : full) top = std::max(top, r.surface_height);
        for (const SupportRegion& b : base) {
            double best_iou = 0.0;
            for (const SupportRegion& r : full) {
                if (std::abs(r.surface_height - top) > 1e-6) continue;
                double inter = polygon_intersection_area(b.footprint, r.footprint);
                double uni = area(b.footprint) + area(r.footprint) - inter;
                if (uni > 0) best_iou = std::max(best_iou, inter / uni);
            }
            CHECK(best_iou >= 0.99);
        }
    }
}

TEST_CASE("SupportConfig validation rejects out-of-range thresholds") {
    SupportConfig bad;
    bad.t_norm = 1.5;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = SupportConfig{};
    bad.t_clear = -0.1;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = SupportConfig{};
    bad.r_plane = 1.0;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("region JSON round-trip") {
    TriMesh mesh = hsm::testing::bookcase({0.0, 0.6}, 1.2);
    std::vector<SupportRegion> regions = extract_support_regions(mesh, SupportConfig{});
    REQUIRE_FALSE(regions.empty());
    nlohmann::ordered_json j = region_to_json(regions[0]);
    SupportRegion back = region_from_json(nlohmann::json::parse(j.dump()), "r");
    CHECK(back.id == regions[0].id);
    CHECK(back.surface_height == doctest::Approx(regions[0].surface_height));
    CHECK(back.clearance == doctest::Approx(regions[0].clearance));
    CHECK(back.is_top == regions[0].is_top);
    CHECK(back.footprint.size() == regions[0].footprint.size());
    CHECK(back.faces == regions[0].faces);
}
