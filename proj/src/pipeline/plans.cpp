#include "hsm/pipeline/plans.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hsm/motifs/motif_json.hpp"

namespace hsm {

using nlohmann::json;

namespace {

void check_version(const json& doc, const char* label) {
    if (doc.contains("version")) {
        if (!doc["version"].is_number_integer() || doc["version"].get<int>() != 1)
            throw PlanError(std::string(label) + ".version",
                            "unsupported plan version (expected 1)");
    }
}

double num_at(const json& j, const std::string& path) {
    if (!j.is_number()) throw PlanError(path, "expected a number");
    return j.get<double>();
}

PlanObject parse_plan_object(const json& j, const std::string& path, bool small) {
    PlanObject o;
    if (!j.contains("id") || !j["id"].is_number_integer())
        throw PlanError(path + ".id", "missing integer id");
    o.id = j["id"].get<int>();
    if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty())
        throw PlanError(path + ".name", "missing object name");
    o.name = j["name"].get<std::string>();
    o.description = j.value("description", std::string{});
    if (!j.contains("dimensions") || !j["dimensions"].is_array() || j["dimensions"].size() != 3)
        throw PlanError(path + ".dimensions", "must be [width, height, depth]");
    o.dims = {num_at(j["dimensions"][0], path + ".dimensions[0]"),
              num_at(j["dimensions"][1], path + ".dimensions[1]"),
              num_at(j["dimensions"][2], path + ".dimensions[2]")};
    if (!(o.dims.x > 0 && o.dims.y > 0 && o.dims.z > 0))
        throw PlanError(path + ".dimensions", "dimensions must be positive");
    o.amount = j.value("amount", 1);
    if (o.amount < 1) throw PlanError(path + ".amount", "amount must be >= 1");
    if (small) {
        if (!j.contains("parent_object") || !j["parent_object"].is_number_integer())
            throw PlanError(path + ".parent_object", "small objects need a parent_object id");
        o.parent_object = j["parent_object"].get<int>();
    }
    return o;
}

}  // namespace

const char* plan_kind_name(PlanKind kind) {
    switch (kind) {
        case PlanKind::requirement: return "requirement";
        case PlanKind::grouping: return "grouping";
        case PlanKind::hierarchy: return "hierarchy";
        case PlanKind::placement: return "placement";
        case PlanKind::augment: return "augment";
    }
    return "?";
}

RequirementPlan parse_requirement_plan(const json& doc) {
    if (!doc.is_object()) throw PlanError("", "requirement plan must be a JSON object");
    check_version(doc, "requirement");
    RequirementPlan plan;
    plan.room_type = doc.value("room_type", std::string{});

    if (doc.contains("room") && !doc["room"].is_null()) {
        const json& rj = doc["room"];
        Room room;
        if (!rj.contains("floorplan") || !rj["floorplan"].is_array())
            throw PlanError("room.floorplan", "missing boundary vertex list");
        for (size_t i = 0; i < rj["floorplan"].size(); ++i) {
            const json& v = rj["floorplan"][i];
            if (!v.is_array() || v.size() != 2)
                throw PlanError("room.floorplan[" + std::to_string(i) + "]",
                                "vertices must be [x, z]");
            room.boundary.pts.push_back({v[0].get<double>(), v[1].get<double>()});
        }
        if (room.boundary.size() >= 1 &&
            (room.boundary[0].x != 0.0 || room.boundary[0].z != 0.0))
            throw PlanError("room.floorplan", "boundary must start at (0,0)");
        room.height = rj.value("room_height", 2.5);
        if (rj.contains("door_location") && !rj["door_location"].is_null()) {
            const json& dl = rj["door_location"];
            if (!dl.is_array() || dl.size() != 2)
                throw PlanError("room.door_location", "must be [x, z]");
            Door door;
            door.position = {dl[0].get<double>(), dl[1].get<double>()};
            door.width = rj.value("door_width", 0.8);
            room.door = door;
        }
        try {
            room.validate();
        } catch (const SceneError& e) {
            throw PlanError("room", e.what());
        }
        plan.room = std::move(room);
    }

    std::set<int> ids;
    if (doc.contains("objects")) {
        for (size_t i = 0; i < doc["objects"].size(); ++i) {
            PlanObject o = parse_plan_object(doc["objects"][i],
                                             "objects[" + std::to_string(i) + "]", false);
            if (!ids.insert(o.id).second)
                throw PlanError("objects[" + std::to_string(i) + "].id",
                                "duplicate object id " + std::to_string(o.id));
            plan.objects.push_back(std::move(o));
        }
    }
    if (doc.contains("small_objects")) {
        for (size_t i = 0; i < doc["small_objects"].size(); ++i) {
            PlanObject o = parse_plan_object(
                doc["small_objects"][i], "small_objects[" + std::to_string(i) + "]", true);
            if (!ids.insert(o.id).second)
                throw PlanError("small_objects[" + std::to_string(i) + "].id",
                                "duplicate object id " + std::to_string(o.id));
            plan.small_objects.push_back(std::move(o));
        }
    }
    // Dangling parent references are parse errors, not validation data.
    std::set<int> furniture_ids;
    for (const PlanObject& o : plan.objects) furniture_ids.insert(o.id);
    for (size_t i = 0; i < plan.small_objects.size(); ++i) {
        const PlanObject& o = plan.small_objects[i];
        if (!furniture_ids.count(*o.parent_object))
            throw PlanError("small_objects[" + std::to_string(i) + "].parent_object",
                            "references unknown furniture id " +
                                std::to_string(*o.parent_object));
    }
    return plan;
}

GroupingPlan parse_grouping_plan(const json& doc) {
    if (!doc.is_object()) throw PlanError("", "grouping plan must be a JSON object");
    check_version(doc, "grouping");
    if (!doc.contains("arrangements") || !doc["arrangements"].is_array())
        throw PlanError("arrangements", "missing array");
    GroupingPlan plan;
    std::set<std::string> ids;
    for (size_t i = 0; i < doc["arrangements"].size(); ++i) {
        const json& aj = doc["arrangements"][i];
        std::string where = "arrangements[" + std::to_string(i) + "]";
        GroupingArrangement arr;
        if (!aj.contains("id") || !aj["id"].is_string())
            throw PlanError(where + ".id", "missing arrangement id");
        arr.id = aj["id"].get<std::string>();
        if (!ids.insert(arr.id).second)
            throw PlanError(where + ".id", "duplicate arrangement id '" + arr.id + "'");
        arr.area_name = aj.value("area_name", std::string{});
        arr.rationale = aj.value("rationale", std::string{});
        if (!aj.contains("composition") || !aj["composition"].is_object())
            throw PlanError(where + ".composition", "missing composition object");
        const json& comp = aj["composition"];
        arr.description = comp.value("description", std::string{});
        if (!comp.contains("furniture") || !comp["furniture"].is_array() ||
            comp["furniture"].empty())
            throw PlanError(where + ".composition.furniture", "needs at least one member");
        for (size_t m = 0; m < comp["furniture"].size(); ++m) {
            const json& mj = comp["furniture"][m];
            std::string mwhere = where + ".composition.furniture[" + std::to_string(m) + "]";
            if (!mj.contains("id") || !mj["id"].is_number_integer())
                throw PlanError(mwhere + ".id", "missing member object id");
            ArrangementMember member;
            member.object_id = mj["id"].get<int>();
            member.amount = mj.value("amount", 1);
            if (member.amount < 1) throw PlanError(mwhere + ".amount", "amount must be >= 1");
            arr.members.push_back(member);
        }
        if (comp.contains("total_footprint")) {
            const json& fp = comp["total_footprint"];
            if (!fp.is_array() || fp.size() != 3)
                throw PlanError(where + ".composition.total_footprint",
                                "must be [width, height, depth]");
            arr.total_footprint = {fp[0].get<double>(), fp[1].get<double>(),
                                   fp[2].get<double>()};
            if (!(arr.total_footprint.x > 0 && arr.total_footprint.z > 0))
                throw PlanError(where + ".composition.total_footprint",
                                "footprint must be positive");
        }
        arr.clearance = comp.value("clearance", 0.0);
        plan.arrangements.push_back(std::move(arr));
    }
    return plan;
}

namespace {

PlacementEntry parse_placement_entry(const json& pj, const std::string& where) {
    PlacementEntry e;
    if (!pj.contains("id") || !pj["id"].is_string())
        throw PlanError(where + ".id", "missing arrangement id");
    e.id = pj["id"].get<std::string>();
    if (!pj.contains("position") || !pj["position"].is_array() || pj["position"].size() != 2)
        throw PlanError(where + ".position", "must be [x, z]");
    e.position = {pj["position"][0].get<double>(), pj["position"][1].get<double>()};
    e.rotation = pj.value("rotation", 0.0);
    e.wall_alignment = pj.value("wall_alignment", false);
    if (pj.contains("wall_alignment_id") && !pj["wall_alignment_id"].is_null()) {
        if (!pj["wall_alignment_id"].is_number_integer())
            throw PlanError(where + ".wall_alignment_id", "must be an integer wall index");
        e.wall_alignment_id = pj["wall_alignment_id"].get<int>();
    }
    if (e.wall_alignment && !e.wall_alignment_id)
        throw PlanError(where + ".wall_alignment_id", "required when wall_alignment is true");
    e.ignore_collision = pj.value("ignore_collision", false);
    if (pj.contains("region_id") && !pj["region_id"].is_null())
        e.region_id = pj["region_id"].get<int>();
    e.rationale = pj.value("rationale", std::string{});
    return e;
}

}  // namespace

PlacementPlan parse_placement_plan(const json& doc) {
    if (!doc.is_object()) throw PlanError("", "placement plan must be a JSON object");
    check_version(doc, "placement");
    if (!doc.contains("positions") || !doc["positions"].is_array())
        throw PlanError("positions", "missing array");
    PlacementPlan plan;
    std::set<std::string> seen;
    for (size_t i = 0; i < doc["positions"].size(); ++i) {
        PlacementEntry e =
            parse_placement_entry(doc["positions"][i], "positions[" + std::to_string(i) + "]");
        if (!seen.insert(e.id).second)
            throw PlanError("positions[" + std::to_string(i) + "].id",
                            "duplicate placement for arrangement '" + e.id + "'");
        plan.positions.push_back(std::move(e));
    }
    return plan;
}

AugmentPlan parse_augment_plan(const json& doc) {
    if (!doc.is_object()) throw PlanError("", "augment plan must be a JSON object");
    check_version(doc, "augment");
    AugmentPlan plan;
    if (!doc.contains("objects") || !doc["objects"].is_array() || doc["objects"].empty())
        throw PlanError("objects", "augment plan needs 1-3 objects");
    for (size_t i = 0; i < doc["objects"].size(); ++i)
        plan.objects.push_back(
            parse_plan_object(doc["objects"][i], "objects[" + std::to_string(i) + "]", false));
    if (plan.objects.size() > 3)
        throw PlanError("objects", "augmentation adds at most 3 objects");
    if (doc.contains("positions"))
        for (size_t i = 0; i < doc["positions"].size(); ++i)
            plan.positions.push_back(parse_placement_entry(
                doc["positions"][i], "positions[" + std::to_string(i) + "]"));
    return plan;
}

MotifNode parse_hierarchy_plan(const json& doc) {
    try {
        return motif_node_from_json(doc);
    } catch (const MotifError& e) {
        throw PlanError("", e.what());
    }
}

PlanSet PlanSet::load_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw PlanError("", dir + " is not a directory");

    auto read = [&](const fs::path& p) {
        std::ifstream in(p);
        if (!in) throw PlanError("", "cannot open " + p.string());
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto parse_json = [&](const std::string& text, const std::string& label) {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded()) throw PlanError(label, "not valid JSON");
        return j;
    };
    auto content_hash = [](const std::string& text) {
        uint64_t h = 1469598103934665603ull;
        for (unsigned char c : text) {
            h ^= c;
            h *= 1099511628211ull;
        }
        char buf[24];
        std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
        return std::string(buf);
    };

    PlanSet set;
    {
        std::string text = read(fs::path(dir) / "requirement.json");
        set.requirement = parse_requirement_plan(parse_json(text, "requirement.json"));
        set.provenance["requirement.json"] = content_hash(text);
    }
    {
        std::string text = read(fs::path(dir) / "grouping.json");
        set.grouping = parse_grouping_plan(parse_json(text, "grouping.json"));
        set.provenance["grouping.json"] = content_hash(text);
    }
    {
        std::string text = read(fs::path(dir) / "placement.json");
        set.placement = parse_placement_plan(parse_json(text, "placement.json"));
        set.provenance["placement.json"] = content_hash(text);
    }
    std::vector<fs::path> hierarchy_files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::string name = entry.path().filename().string();
        if (name.rfind("hierarchy-", 0) == 0 && entry.path().extension() == ".json")
            hierarchy_files.push_back(entry.path());
    }
    std::sort(hierarchy_files.begin(), hierarchy_files.end());
    for (const fs::path& p : hierarchy_files) {
        std::string name = p.filename().string();
        std::string arr_id = name.substr(10, name.size() - 10 - 5);  // strip prefix + .json
        std::string text = read(p);
        try {
            set.hierarchies[arr_id] = parse_hierarchy_plan(parse_json(text, name));
        } catch (const PlanError& e) {
            throw PlanError(name, e.what());
        }
        set.provenance[name] = content_hash(text);
    }
    return set;
}

std::vector<Violation> validate_plans(const PlanSet& plans) {
    std::vector<Violation> out;
    const RequirementPlan& req = plans.requirement;

    std::map<int, const PlanObject*> objects_by_id;
    for (const PlanObject& o : req.objects) objects_by_id[o.id] = &o;
    for (const PlanObject& o : req.small_objects) objects_by_id[o.id] = &o;

    std::map<std::string, int> name_counts;
    for (const auto& [id, o] : objects_by_id) name_counts[o->name] += 1;
    for (const auto& [name, count] : name_counts)
        if (count > 1)
            out.push_back({"requirement",
                           "object name '" + name + "' is used by " +
                               std::to_string(count) +
                               " entries; each entry must be a single object type"});

    // Coverage: each required object in exactly one arrangement, full amount.
    std::map<int, std::vector<std::string>> seen_in;
    std::map<int, int> covered_amount;
    for (const GroupingArrangement& arr : plans.grouping.arrangements) {
        for (const ArrangementMember& m : arr.members) {
            if (!objects_by_id.count(m.object_id)) {
                out.push_back({"grouping/" + arr.id,
                               "member references unknown object id " +
                                   std::to_string(m.object_id)});
                continue;
            }
            seen_in[m.object_id].push_back(arr.id);
            covered_amount[m.object_id] += m.amount;
        }
    }
    for (const auto& [id, arrs] : seen_in)
        if (arrs.size() > 1) {
            std::string list;
            for (const std::string& a : arrs) list += (list.empty() ? "" : ", ") + a;
            out.push_back({"grouping",
                           "object '" + objects_by_id[id]->name + "' (id " +
                               std::to_string(id) +
                               ") appears in more than one arrangement: " + list});
        }
    for (const auto& [id, obj] : objects_by_id) {
        auto it = covered_amount.find(id);
        if (it == covered_amount.end())
            out.push_back({"grouping", "object '" + obj->name + "' (id " +
                                           std::to_string(id) +
                                           ") is not covered by any arrangement"});
        else if (seen_in[id].size() == 1 && it->second != obj->amount)
            out.push_back({"grouping/" + seen_in[id][0],
                           "object '" + obj->name + "' amount " + std::to_string(it->second) +
                               " does not match required " + std::to_string(obj->amount)});
    }

    // Hierarchies: valid, known arrangement, members consistent.
    for (const auto& [arr_id, root] : plans.hierarchies) {
        const GroupingArrangement* arr = nullptr;
        for (const GroupingArrangement& a : plans.grouping.arrangements)
            if (a.id == arr_id) arr = &a;
        if (!arr) {
            out.push_back({"hierarchy-" + arr_id,
                           "no arrangement with id '" + arr_id + "' in the grouping plan"});
            continue;
        }
        for (const Violation& v : validate_hierarchy(root))
            out.push_back({"hierarchy-" + arr_id + "/" + v.path, v.message});

        // Leaf multiset must equal the arrangement member multiset.
        std::map<std::string, int> leaves;
        auto collect = [&](auto&& self, const MotifNode& n) -> void {
            if (n.is_object) {
                leaves[n.description] += n.amount;
                return;
            }
            for (const MotifNode& c : n.elements) self(self, c);
        };
        collect(collect, root);
        std::map<std::string, int> expected;
        for (const ArrangementMember& m : arr->members) {
            auto it = objects_by_id.find(m.object_id);
            if (it != objects_by_id.end()) expected[it->second->name] += m.amount;
        }
        if (leaves != expected) {
            std::string detail;
            for (const auto& [name, count] : expected)
                if (leaves.find(name) == leaves.end() || leaves[name] != count)
                    detail += " expected " + name + " x" + std::to_string(count) + ";";
            for (const auto& [name, count] : leaves)
                if (expected.find(name) == expected.end())
                    detail += " unexpected leaf '" + name + "';";
            out.push_back({"hierarchy-" + arr_id,
                           "hierarchy objects do not match arrangement members:" + detail});
        }
    }
    for (const GroupingArrangement& arr : plans.grouping.arrangements)
        if (!plans.hierarchies.count(arr.id))
            out.push_back({"grouping/" + arr.id,
                           "no hierarchy-" + arr.id + ".json for this arrangement"});

    // Placements reference known arrangements; every arrangement placed.
    std::set<std::string> arrangement_ids;
    for (const GroupingArrangement& arr : plans.grouping.arrangements)
        arrangement_ids.insert(arr.id);
    std::set<std::string> placed;
    const int wall_count =
        req.room ? static_cast<int>(req.room->boundary.size()) : 0;
    for (const PlacementEntry& e : plans.placement.positions) {
        if (!arrangement_ids.count(e.id)) {
            out.push_back({"placement/" + e.id, "placement for unknown arrangement '" +
                                                    e.id + "'"});
            continue;
        }
        placed.insert(e.id);
        if (e.wall_alignment && req.room) {
            int wid = e.wall_alignment_id.value_or(-1);
            if (wid < 0 || wid >= wall_count)
                out.push_back({"placement/" + e.id,
                               "wall_alignment_id " + std::to_string(wid) +
                                   " out of range [0, " + std::to_string(wall_count - 1) +
                                   "]"});
        }
    }
    for (const std::string& id : arrangement_ids)
        if (!placed.count(id))
            out.push_back({"placement", "arrangement '" + id + "' has no placement entry"});

    if (!req.room)
        out.push_back({"requirement/room",
                       "no room boundary in the plan and none supplied externally"});
    return out;
}

}  // namespace hsm
