#include "hsm/pipeline/generate.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "hsm/solver/solver.hpp"

namespace hsm {

namespace {

constexpr double kAnchorEps = 1e-6;
constexpr double kContainEps = 1e-9;

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string format_ratio(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct BoundObject {
    PlanObject plan;
    ObjectSpec spec;        // dims adopted from the retrieved asset
    AssetRecord asset;
};

struct ArrangementKind {
    bool small = false;
    int parent_object_id = -1;  // for small arrangements
};

// Transforms a point from the furniture anchor frame to world.
Vec2 anchor_to_world(const Vec2& local, const Pose& furniture) {
    Vec2 r = rotate_yaw(local, furniture.yaw);
    return {r.x + furniture.position.x, r.z + furniture.position.z};
}

Polygon2 polygon_to_world(const Polygon2& local, const Pose& furniture) {
    Polygon2 out;
    for (const Vec2& p : local.pts) out.pts.push_back(anchor_to_world(p, furniture));
    return out;
}

}  // namespace

Scene run_generate(const PlanSet& plans, const AssetManifest& manifest,
                   const Embedder& embedder, PlannerClient* planner,
                   const GenerateOptions& opt) {
    // Stage: validate
    {
        std::vector<Violation> violations = validate_plans(plans);
        if (!violations.empty()) {
            std::string detail = "plan validation failed:";
            for (const Violation& v : violations)
                detail += "\n  " + v.path + ": " + v.message;
            throw PipelineError("validate", detail, 2);
        }
    }

    Scene scene;
    scene.seed = opt.seed;
    scene.room = *plans.requirement.room;
    scene.plan_provenance = plans.provenance;

    auto partial = [&]() { return serialize_scene(scene); };
    auto stage_error = [&](const std::string& stage, const std::string& detail,
                           int code = 1) {
        return PipelineError(stage, detail, code, partial());
    };

    FloorRegion floor = floor_support_region(scene.room);

    // Stage: retrieve assets for every planned object.
    std::map<int, BoundObject> bound;
    {
        auto bind = [&](const PlanObject& o) {
            RetrievalQuery q{o.name, o.description.empty() ? o.name : o.description, o.dims};
            try {
                AssetRecord rec = retrieve_asset(q, manifest, embedder);
                ObjectSpec spec{o.name, rec.dims, rec.id, o.amount};
                bound[o.id] = BoundObject{o, std::move(spec), std::move(rec)};
            } catch (const SceneError& e) {
                throw stage_error("retrieve",
                                  "object '" + o.name + "' (id " + std::to_string(o.id) +
                                      "): " + e.what());
            }
        };
        for (const PlanObject& o : plans.requirement.objects) bind(o);
        for (const PlanObject& o : plans.requirement.small_objects) bind(o);
    }

    // Classify arrangements and instantiate every scene motif.
    std::map<std::string, ArrangementKind> kinds;
    std::map<std::string, Arrangement> built;
    std::map<std::string, const GroupingArrangement*> arr_by_id;
    std::map<std::string, const PlacementEntry*> placement_by_id;
    for (const PlacementEntry& e : plans.placement.positions) placement_by_id[e.id] = &e;
    std::set<int> small_ids;
    for (const PlanObject& o : plans.requirement.small_objects) small_ids.insert(o.id);

    for (const GroupingArrangement& arr : plans.grouping.arrangements) {
        arr_by_id[arr.id] = &arr;
        ArrangementKind kind;
        int parent = -1;
        bool any_small = false, any_large = false;
        for (const ArrangementMember& m : arr.members) {
            if (small_ids.count(m.object_id)) {
                any_small = true;
                int p = *bound.at(m.object_id).plan.parent_object;
                if (parent == -1) parent = p;
                else if (parent != p)
                    throw stage_error("group", "arrangement '" + arr.id +
                                                   "' mixes small objects with different "
                                                   "parent furniture");
            } else {
                any_large = true;
            }
        }
        if (any_small && any_large)
            throw stage_error("group", "arrangement '" + arr.id +
                                           "' mixes floor furniture and small objects");
        kind.small = any_small;
        kind.parent_object_id = parent;
        kinds[arr.id] = kind;

        std::map<std::string, ObjectSpec> assets;
        for (const ArrangementMember& m : arr.members) {
            const BoundObject& b = bound.at(m.object_id);
            if (assets.count(b.spec.name))
                throw stage_error("group", "arrangement '" + arr.id +
                                               "' has two members named '" + b.spec.name +
                                               "'");
            assets[b.spec.name] = b.spec;
        }
        try {
            built[arr.id] = instantiate_scene_motif(plans.hierarchies.at(arr.id), assets,
                                                    opt.seed ^ fnv1a64(arr.id));
        } catch (const MotifError& e) {
            throw stage_error("instantiate", "arrangement '" + arr.id + "': " + e.what());
        }
    }

    // Stage: solve the floor layout.
    std::vector<std::string> floor_order;
    std::vector<PlacementRequest> floor_reqs;
    for (const GroupingArrangement& arr : plans.grouping.arrangements) {
        if (kinds[arr.id].small) continue;
        const Arrangement& a = built[arr.id];
        const PlacementEntry& e = *placement_by_id.at(arr.id);
        PlacementRequest req;
        req.motif_id = arr.id;
        req.width = a.bounds.extents().x;
        req.depth = a.bounds.extents().z;
        req.initial = Pose{{e.position.x, 0.0, e.position.z}, e.rotation};
        req.wall_align = e.wall_alignment;
        req.wall_id = e.wall_alignment_id;
        req.ignore_collision = e.ignore_collision;
        floor_reqs.push_back(req);
        floor_order.push_back(arr.id);
    }

    std::map<std::string, Pose> solved_floor;
    if (!floor_reqs.empty()) {
        SolveDomain dom{scene.room.boundary, floor.obstacles, opt.floor_grid};
        Layout lay = solve_layout(floor_reqs, dom, opt.solver_time_limit);
        if (!lay.feasible) {
            std::string who;
            for (const std::string& u : lay.unplaced) who += (who.empty() ? "" : ", ") + u;
            throw stage_error("solve-floor", "no feasible placement for: " + who, 3);
        }
        std::string why;
        if (!verify_layout(floor_reqs, dom, lay, &why))
            throw stage_error("solve-floor", "solver result failed re-verification: " + why);
        for (const PlacedMotif& pm : lay.placed) {
            solved_floor[pm.motif_id] = pm.pose;
            const GroupingArrangement& arr = *arr_by_id[pm.motif_id];
            SceneMotifRecord rec;
            rec.id = pm.motif_id;
            rec.description = arr.description;
            rec.pose = pm.pose;
            rec.extents = built[pm.motif_id].bounds.extents();
            rec.parent.is_floor = true;
            rec.sigma = pm.sigma;
            scene.motifs.push_back(rec);
        }
    }

    // Materialize floor objects.
    std::map<std::string, int> name_counter;
    std::map<int, std::vector<std::string>> instances_of;  // plan object id -> instance ids
    auto add_object = [&](const ObjectSpec& spec, const Pose& world, const ParentRef& parent,
                          const std::string& motif_id, bool augmented,
                          int plan_object_id) -> const std::string& {
        SceneObject obj;
        int k = name_counter[spec.name]++;
        obj.instance_id = spec.name + "." + std::to_string(k);
        obj.spec = spec;
        obj.spec.amount = 1;
        obj.pose = world;
        obj.parent = parent;
        obj.motif_id = motif_id;
        obj.augmented = augmented;
        scene.objects.push_back(std::move(obj));
        if (plan_object_id >= 0)
            instances_of[plan_object_id].push_back(scene.objects.back().instance_id);
        return scene.objects.back().instance_id;
    };

    std::map<std::string, int> objid_by_name_global;  // name -> plan object id
    for (const auto& [id, b] : bound) objid_by_name_global[b.spec.name] = id;

    for (const std::string& arr_id : floor_order) {
        const Pose& pose = solved_floor.at(arr_id);
        for (const PlacedObject& po : built[arr_id].objects) {
            Vec3 rotated = rotate_yaw(po.pose.position, pose.yaw);
            Pose world{{rotated.x + pose.position.x, rotated.y + pose.position.y,
                        rotated.z + pose.position.z},
                       po.pose.yaw + pose.yaw};
            ParentRef parent;  // floor
            int oid = objid_by_name_global.count(po.spec.name)
                          ? objid_by_name_global[po.spec.name]
                          : -1;
            add_object(po.spec, world, parent, arr_id, false, oid);
        }
    }

    // Stage: support regions + small-object layouts per parent furniture.
    std::map<int, std::vector<std::string>> small_arrs_by_parent;
    for (const GroupingArrangement& arr : plans.grouping.arrangements)
        if (kinds[arr.id].small)
            small_arrs_by_parent[kinds[arr.id].parent_object_id].push_back(arr.id);

    // Extract regions (optionally in parallel), merged in parent-id order.
    std::map<int, std::vector<SupportRegion>> regions_by_parent;
    {
        std::vector<int> parents;
        for (const auto& [pid, _] : small_arrs_by_parent) parents.push_back(pid);
        auto extract_one = [&](int pid) -> std::vector<SupportRegion> {
            const BoundObject& b = bound.at(pid);
            if (b.asset.mesh_path.empty())
                throw PipelineError("regions", "asset '" + b.asset.id + "' has no mesh path");
            TriMesh mesh = TriMesh::load_obj(manifest.base_dir + "/" + b.asset.mesh_path);
            std::vector<SupportRegion> regions =
                extract_support_regions(mesh, SupportConfig{});
            // Shift into the furniture anchor frame (bounds bottom-center).
            Aabb bb = mesh.bounds();
            Vec3 c = bb.center();
            for (SupportRegion& r : regions) {
                for (Vec2& p : r.footprint.pts) {
                    p.x -= c.x;
                    p.z -= c.z;
                }
                r.surface_height -= bb.min.y;
            }
            return regions;
        };
        if (opt.threads > 1 && parents.size() > 1) {
            std::vector<std::future<std::vector<SupportRegion>>> futures;
            for (int pid : parents)
                futures.push_back(std::async(std::launch::async, extract_one, pid));
            for (size_t i = 0; i < parents.size(); ++i) {
                try {
                    regions_by_parent[parents[i]] = futures[i].get();
                } catch (const Error& e) {
                    throw stage_error("regions", e.what());
                }
            }
        } else {
            for (int pid : parents) {
                try {
                    regions_by_parent[pid] = extract_one(pid);
                } catch (const PipelineError&) {
                    throw;
                } catch (const Error& e) {
                    throw stage_error("regions", e.what());
                }
            }
        }
    }

    for (const auto& [pid, arr_ids] : small_arrs_by_parent) {
        const BoundObject& parent_obj = bound.at(pid);
        auto inst_it = instances_of.find(pid);
        if (inst_it == instances_of.end() || inst_it->second.empty())
            throw stage_error("small-objects",
                              "parent furniture '" + parent_obj.spec.name +
                                  "' was never placed on the floor");
        const std::string parent_instance = inst_it->second.front();
        const SceneObject* parent_scene_obj = nullptr;
        for (const SceneObject& o : scene.objects)
            if (o.instance_id == parent_instance) parent_scene_obj = &o;
        const std::vector<SupportRegion>& regions = regions_by_parent.at(pid);
        if (regions.empty())
            throw stage_error("small-objects", "no support regions extracted from '" +
                                                   parent_obj.asset.id + "'");
        scene.furniture_regions[parent_instance] = regions;

        // Assign each arrangement to a region, then solve region by region.
        std::map<int, std::vector<std::string>> by_region;
        for (const std::string& arr_id : arr_ids) {
            const Arrangement& a = built[arr_id];
            const PlacementEntry& e = *placement_by_id.at(arr_id);
            Vec3 ext = a.bounds.extents();
            int region_id = -1;
            if (e.region_id) {
                for (const SupportRegion& r : regions)
                    if (r.id == *e.region_id) region_id = r.id;
                if (region_id < 0)
                    throw stage_error("small-objects",
                                      "arrangement '" + arr_id + "' pins region " +
                                          std::to_string(*e.region_id) +
                                          " which does not exist on '" + parent_instance +
                                          "'");
            } else {
                // Largest region whose bounding box and clearance fit.
                double best_area = -1.0;
                for (const SupportRegion& r : regions) {
                    if (ext.y > r.clearance + 1e-9) continue;
                    MinRect mr = min_area_rect(r.footprint.pts);
                    double rw = 2 * mr.half_u, rd = 2 * mr.half_v;
                    bool fits = (ext.x <= rw + 1e-9 && ext.z <= rd + 1e-9) ||
                                (ext.z <= rw + 1e-9 && ext.x <= rd + 1e-9);
                    if (!fits) continue;
                    double ra = area(r.footprint);
                    if (ra > best_area) {
                        best_area = ra;
                        region_id = r.id;
                    }
                }
                if (region_id < 0)
                    throw stage_error("small-objects", "no support region on '" +
                                                           parent_instance + "' fits '" +
                                                           arr_id + "'");
            }
            by_region[region_id].push_back(arr_id);
        }

        for (const auto& [region_id, ids] : by_region) {
            const SupportRegion* region = nullptr;
            for (const SupportRegion& r : regions)
                if (r.id == region_id) region = &r;
            SolveDomain dom{region->footprint, {}, opt.furniture_grid};
            std::vector<PlacementRequest> reqs;
            for (const std::string& arr_id : ids) {
                const Arrangement& a = built[arr_id];
                const PlacementEntry& e = *placement_by_id.at(arr_id);
                PlacementRequest req;
                req.motif_id = arr_id;
                req.width = a.bounds.extents().x;
                req.depth = a.bounds.extents().z;
                req.initial = Pose{{e.position.x, 0.0, e.position.z}, e.rotation};
                req.wall_align = e.wall_alignment;
                req.wall_id = e.wall_alignment_id;
                req.ignore_collision = e.ignore_collision;
                reqs.push_back(req);
            }
            Layout lay = solve_layout(reqs, dom, opt.solver_time_limit);
            if (!lay.feasible) {
                std::string who;
                for (const std::string& u : lay.unplaced)
                    who += (who.empty() ? "" : ", ") + u;
                throw stage_error("solve-region",
                                  "region " + std::to_string(region_id) + " of '" +
                                      parent_instance + "': no feasible placement for: " +
                                      who,
                                  3);
            }
            std::string why;
            if (!verify_layout(reqs, dom, lay, &why))
                throw stage_error("solve-region",
                                  "solver result failed re-verification: " + why);

            const Pose& fp = parent_scene_obj->pose;
            for (const PlacedMotif& pm : lay.placed) {
                const GroupingArrangement& arr = *arr_by_id[pm.motif_id];
                ParentRef parent;
                parent.is_floor = false;
                parent.furniture_id = parent_instance;
                parent.region_id = region_id;

                Vec2 world_xz = anchor_to_world(
                    {pm.pose.position.x, pm.pose.position.z}, fp);
                SceneMotifRecord rec;
                rec.id = pm.motif_id;
                rec.description = arr.description;
                rec.pose = Pose{{world_xz.x, fp.position.y + region->surface_height,
                                 world_xz.z},
                                pm.pose.yaw + fp.yaw};
                rec.extents = built[pm.motif_id].bounds.extents();
                rec.parent = parent;
                rec.sigma = pm.sigma;
                scene.motifs.push_back(rec);

                for (const PlacedObject& po : built[pm.motif_id].objects) {
                    // arrangement-local -> region-local -> world
                    Vec3 in_region = rotate_yaw(po.pose.position, pm.pose.yaw);
                    in_region.x += pm.pose.position.x;
                    in_region.z += pm.pose.position.z;
                    Vec2 w = anchor_to_world({in_region.x, in_region.z}, fp);
                    Pose world{{w.x,
                                fp.position.y + region->surface_height + in_region.y,
                                w.z},
                               po.pose.yaw + pm.pose.yaw + fp.yaw};
                    int oid = objid_by_name_global.count(po.spec.name)
                                  ? objid_by_name_global[po.spec.name]
                                  : -1;
                    add_object(po.spec, world, parent, pm.motif_id, false, oid);
                }
            }
        }
    }

    // Stage: occupancy check and one optional augmentation round.
    double occupancy = occupancy_ratio(scene);
    if (occupancy < opt.t_occ) {
        if (planner && planner->supports("augment")) {
            nlohmann::json existing = nlohmann::json::array();
            for (const PlanObject& o : plans.requirement.objects)
                existing.push_back({{"name", o.name},
                                    {"dimensions", {o.dims.x, o.dims.y, o.dims.z}},
                                    {"amount", o.amount}});
            nlohmann::json payload{{"room_type", plans.requirement.room_type},
                                   {"occupancy", occupancy},
                                   {"existing", existing}};
            const int wall_count = static_cast<int>(scene.room.boundary.size());
            std::function<AugmentPlan(const nlohmann::json&)> check =
                [&](const nlohmann::json& j) {
                    AugmentPlan plan = parse_augment_plan(j);
                    std::set<std::string> ids;
                    for (const PlanObject& o : plan.objects)
                        ids.insert("aug_" + std::to_string(o.id));
                    for (const PlacementEntry& e : plan.positions) {
                        if (!ids.count(e.id))
                            throw PlanError("augment/positions",
                                            "placement for unknown augment arrangement '" +
                                                e.id + "'");
                        if (e.wall_alignment) {
                            int wid = e.wall_alignment_id.value_or(-1);
                            if (wid < 0 || wid >= wall_count)
                                throw PlanError("augment/positions",
                                                "wall_alignment_id out of range");
                        }
                    }
                    for (const PlanObject& o : plan.objects)
                        if (!ids.count("aug_" + std::to_string(o.id)) ||
                            std::count_if(plan.positions.begin(), plan.positions.end(),
                                          [&](const PlacementEntry& e) {
                                              return e.id ==
                                                     "aug_" + std::to_string(o.id);
                                          }) != 1)
                            throw PlanError("augment/positions",
                                            "object id " + std::to_string(o.id) +
                                                " needs exactly one placement");
                    return plan;
                };
            AugmentPlan aug;
            try {
                aug = request_validated<AugmentPlan>(*planner, "augment", payload, check);
            } catch (const PlanError& e) {
                throw stage_error("augment", e.what(), 2);
            }

            // New single-object arrangements, solved against what stands.
            std::vector<Polygon2> blocked = floor.obstacles;
            for (const SceneObject& o : scene.objects)
                if (o.parent.is_floor) blocked.push_back(o.footprint().to_polygon());
            SolveDomain dom{scene.room.boundary, blocked, opt.floor_grid};
            std::vector<PlacementRequest> reqs;
            std::vector<std::pair<std::string, const PlanObject*>> aug_arrs;
            std::map<std::string, Arrangement> aug_built;
            for (const PlanObject& o : aug.objects) {
                std::string arr_id = "aug_" + std::to_string(o.id);
                RetrievalQuery q{o.name, o.description.empty() ? o.name : o.description,
                                 o.dims};
                AssetRecord rec;
                try {
                    rec = retrieve_asset(q, manifest, embedder);
                } catch (const SceneError& e) {
                    throw stage_error("augment", e.what());
                }
                ObjectSpec spec{o.name, rec.dims, rec.id, o.amount};
                MotifNode leaf;
                leaf.is_object = true;
                leaf.description = o.name;
                leaf.amount = o.amount;
                aug_built[arr_id] = instantiate_scene_motif(
                    leaf, {{o.name, spec}}, opt.seed ^ fnv1a64(arr_id));
                const PlacementEntry* entry = nullptr;
                for (const PlacementEntry& e : aug.positions)
                    if (e.id == arr_id) entry = &e;
                PlacementRequest req;
                req.motif_id = arr_id;
                req.width = aug_built[arr_id].bounds.extents().x;
                req.depth = aug_built[arr_id].bounds.extents().z;
                req.initial = Pose{{entry->position.x, 0.0, entry->position.z},
                                   entry->rotation};
                req.wall_align = entry->wall_alignment;
                req.wall_id = entry->wall_alignment_id;
                req.ignore_collision = entry->ignore_collision;
                reqs.push_back(req);
                aug_arrs.push_back({arr_id, &o});
            }
            Layout lay = solve_layout(reqs, dom, opt.solver_time_limit);
            if (!lay.feasible) {
                std::string who;
                for (const std::string& u : lay.unplaced)
                    who += (who.empty() ? "" : ", ") + u;
                throw stage_error("augment", "no feasible placement for: " + who, 3);
            }
            for (const PlacedMotif& pm : lay.placed) {
                SceneMotifRecord rec;
                rec.id = pm.motif_id;
                rec.description = "augmentation";
                rec.pose = pm.pose;
                rec.extents = aug_built[pm.motif_id].bounds.extents();
                rec.parent.is_floor = true;
                rec.sigma = pm.sigma;
                rec.augmented = true;
                scene.motifs.push_back(rec);
                for (const PlacedObject& po : aug_built[pm.motif_id].objects) {
                    Vec3 rotated = rotate_yaw(po.pose.position, pm.pose.yaw);
                    Pose world{{rotated.x + pm.pose.position.x, rotated.y,
                                rotated.z + pm.pose.position.z},
                               po.pose.yaw + pm.pose.yaw};
                    add_object(po.spec, world, ParentRef{}, pm.motif_id, true, -1);
                }
            }
            double after = occupancy_ratio(scene);
            scene.notes.push_back("augmentation added " +
                                  std::to_string(aug.objects.size()) +
                                  " objects (occupancy " + format_ratio(occupancy) +
                                  " -> " + format_ratio(after) + ")");
        } else {
            scene.notes.push_back("augmentation skipped: occupancy " +
                                  format_ratio(occupancy) + " < t_occ " +
                                  format_ratio(opt.t_occ) +
                                  " and no planner attached");
        }
    }

    // Hierarchy-to-scene conservation (augmentation-tagged objects aside).
    {
        std::map<std::string, int> want, have;
        for (const PlanObject& o : plans.requirement.objects) want[o.name] += o.amount;
        for (const PlanObject& o : plans.requirement.small_objects) want[o.name] += o.amount;
        for (const SceneObject& o : scene.objects)
            if (!o.augmented) have[o.spec.name] += 1;
        if (want != have) {
            std::string detail = "object conservation mismatch:";
            for (const auto& [name, count] : want)
                if (have[name] != count)
                    detail += " " + name + " planned x" + std::to_string(count) +
                              " placed x" + std::to_string(have[name]) + ";";
            throw stage_error("conserve", detail);
        }
    }

    // Stage: audit.
    std::vector<std::string> audit = audit_scene(scene, opt.t_occ);
    if (!audit.empty()) {
        std::string detail = "scene audit failed:";
        for (const std::string& a : audit) detail += "\n  " + a;
        throw stage_error("audit", detail);
    }
    return scene;
}

std::vector<std::string> audit_scene(const Scene& scene, double t_occ) {
    std::vector<std::string> out;
    std::map<std::string, const SceneObject*> by_id;
    for (const SceneObject& o : scene.objects) {
        if (by_id.count(o.instance_id))
            out.push_back("duplicate instance id '" + o.instance_id + "'");
        by_id[o.instance_id] = &o;
    }

    // An object rests either directly on its support surface or on
    // another object of the same motif beneath it (stack, on_top, pile).
    auto supported_by_sibling = [&](const SceneObject& o) {
        for (const SceneObject& other : scene.objects) {
            if (&other == &o || other.motif_id != o.motif_id ||
                !(other.parent == o.parent))
                continue;
            double top = other.pose.position.y + other.spec.dims.y;
            if (std::abs(top - o.pose.position.y) > kAnchorEps) continue;
            if (rect_intersection_area(o.footprint(), other.footprint()) > 1e-9)
                return true;
        }
        return false;
    };

    for (const SceneObject& o : scene.objects) {
        if (o.parent.is_floor) {
            if (std::abs(o.pose.position.y) > kAnchorEps && !supported_by_sibling(o))
                out.push_back("floor object '" + o.instance_id + "' anchor y " +
                              std::to_string(o.pose.position.y) +
                              " is neither 0 nor on another object");
            if (o.pose.position.y + o.spec.dims.y > scene.room.height + 1e-9)
                out.push_back("object '" + o.instance_id + "' is taller than the room");
            double fp_area = area(o.footprint().to_polygon());
            double inter =
                polygon_intersection_area(o.footprint().to_polygon(), scene.room.boundary);
            if (fp_area - inter > kContainEps)
                out.push_back("object '" + o.instance_id +
                              "' footprint leaves the room boundary");
            continue;
        }
        auto pit = by_id.find(o.parent.furniture_id);
        if (pit == by_id.end()) {
            out.push_back("object '" + o.instance_id + "' parented to unknown furniture '" +
                          o.parent.furniture_id + "'");
            continue;
        }
        auto rit = scene.furniture_regions.find(o.parent.furniture_id);
        const SupportRegion* region = nullptr;
        if (rit != scene.furniture_regions.end())
            for (const SupportRegion& r : rit->second)
                if (r.id == o.parent.region_id) region = &r;
        if (!region) {
            out.push_back("object '" + o.instance_id + "' parented to nonexistent region " +
                          std::to_string(o.parent.region_id) + " of '" +
                          o.parent.furniture_id + "'");
            continue;
        }
        const SceneObject& furniture = *pit->second;
        double surface_y = furniture.pose.position.y + region->surface_height;
        if (std::abs(o.pose.position.y - surface_y) > kAnchorEps && !supported_by_sibling(o))
            out.push_back("object '" + o.instance_id + "' anchor y " +
                          std::to_string(o.pose.position.y) +
                          " is neither on its region height " + std::to_string(surface_y) +
                          " nor on another object");
        double top_above_surface = o.pose.position.y + o.spec.dims.y - surface_y;
        if (top_above_surface > region->clearance + 1e-9)
            out.push_back("object '" + o.instance_id + "' reaches " +
                          std::to_string(top_above_surface) +
                          " above its surface, beyond region clearance " +
                          std::to_string(region->clearance));
        Polygon2 region_world = polygon_to_world(region->footprint, furniture.pose);
        double fp_area = area(o.footprint().to_polygon());
        double inter = polygon_intersection_area(o.footprint().to_polygon(), region_world);
        if (fp_area - inter > kContainEps)
            out.push_back("object '" + o.instance_id +
                          "' footprint leaves its support region");
    }

    double occ = occupancy_ratio(scene);
    if (occ < t_occ) {
        bool noted = false;
        for (const std::string& n : scene.notes)
            noted = noted || n.find("augmentation") != std::string::npos;
        if (!noted)
            out.push_back("occupancy " + std::to_string(occ) +
                          " is below t_occ with no augmentation note");
    }
    return out;
}

}  // namespace hsm
