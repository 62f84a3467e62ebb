#include <set>

#include <nlohmann/json.hpp>

#include "hsm/scene/scene.hpp"
#include "hsm/support/region_json.hpp"

namespace hsm {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json pose_to_json(const Pose& p) {
    ordered_json j;
    j["position"] = {p.position.x, p.position.y, p.position.z};
    j["yaw"] = p.yaw;
    return j;
}

Pose pose_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("position") || !j["position"].is_array() ||
        j["position"].size() != 3 || !j.contains("yaw"))
        throw SceneError(path + ": pose needs position [x,y,z] and yaw");
    return Pose{{j["position"][0].get<double>(), j["position"][1].get<double>(),
                 j["position"][2].get<double>()},
                j["yaw"].get<double>()};
}

ordered_json parent_to_json(const ParentRef& p) {
    ordered_json j;
    if (p.is_floor) {
        j["kind"] = "floor";
    } else {
        j["kind"] = "region";
        j["furniture"] = p.furniture_id;
        j["region"] = p.region_id;
    }
    return j;
}

ParentRef parent_from_json(const json& j, const std::string& path) {
    ParentRef p;
    std::string kind = j.value("kind", std::string{});
    if (kind == "floor") {
        p.is_floor = true;
    } else if (kind == "region") {
        p.is_floor = false;
        if (!j.contains("furniture") || !j["furniture"].is_string())
            throw SceneError(path + ".furniture: missing for region parent");
        p.furniture_id = j["furniture"].get<std::string>();
        if (!j.contains("region") || !j["region"].is_number_integer())
            throw SceneError(path + ".region: missing region id");
        p.region_id = j["region"].get<int>();
    } else {
        throw SceneError(path + ".kind: must be 'floor' or 'region'");
    }
    return p;
}

}  // namespace

std::string serialize_scene(const Scene& scene) {
    ordered_json doc;
    doc["format"] = "hsm-scene";
    doc["version"] = scene.version;
    doc["seed"] = scene.seed;

    ordered_json room;
    ordered_json boundary = ordered_json::array();
    for (const Vec2& v : scene.room.boundary.pts) boundary.push_back({v.x, v.z});
    room["boundary"] = std::move(boundary);
    room["height"] = scene.room.height;
    if (scene.room.door) {
        ordered_json door;
        door["position"] = {scene.room.door->position.x, scene.room.door->position.z};
        door["width"] = scene.room.door->width;
        room["door"] = std::move(door);
    } else {
        room["door"] = nullptr;
    }
    doc["room"] = std::move(room);

    ordered_json objs = ordered_json::array();
    for (const SceneObject& o : scene.objects) {
        ordered_json j;
        j["id"] = o.instance_id;
        j["name"] = o.spec.name;
        j["dimensions"] = {o.spec.dims.x, o.spec.dims.y, o.spec.dims.z};
        if (o.spec.asset_id) j["asset"] = *o.spec.asset_id;
        else j["asset"] = nullptr;
        j["pose"] = pose_to_json(o.pose);
        j["parent"] = parent_to_json(o.parent);
        j["motif"] = o.motif_id;
        j["augmented"] = o.augmented;
        objs.push_back(std::move(j));
    }
    doc["objects"] = std::move(objs);

    ordered_json motifs = ordered_json::array();
    for (const SceneMotifRecord& m : scene.motifs) {
        ordered_json j;
        j["id"] = m.id;
        j["description"] = m.description;
        j["pose"] = pose_to_json(m.pose);
        j["extents"] = {m.extents.x, m.extents.y, m.extents.z};
        j["parent"] = parent_to_json(m.parent);
        j["sigma"] = m.sigma;
        j["augmented"] = m.augmented;
        motifs.push_back(std::move(j));
    }
    doc["motifs"] = std::move(motifs);

    ordered_json regions = ordered_json::object();
    for (const auto& [furniture, regs] : scene.furniture_regions) {
        ordered_json arr = ordered_json::array();
        for (const SupportRegion& r : regs) arr.push_back(region_to_json(r));
        regions[furniture] = std::move(arr);
    }
    doc["regions"] = std::move(regions);

    ordered_json plans = ordered_json::object();
    for (const auto& [k, v] : scene.plan_provenance) plans[k] = v;
    doc["plans"] = std::move(plans);
    doc["notes"] = scene.notes;
    return doc.dump(2) + "\n";
}

Scene parse_scene(const std::string& document) {
    json doc = json::parse(document, nullptr, false);
    if (doc.is_discarded()) throw SceneError("scene document is not valid JSON");
    if (doc.value("format", std::string{}) != "hsm-scene")
        throw SceneError("format: not an hsm-scene document");
    Scene scene;
    if (!doc.contains("version") || !doc["version"].is_number_integer())
        throw SceneError("version: missing");
    scene.version = doc["version"].get<int>();
    if (scene.version != 1)
        throw SceneError("version: unsupported scene version " +
                         std::to_string(scene.version));
    scene.seed = doc.value("seed", 0ull);

    if (!doc.contains("room")) throw SceneError("room: missing");
    const json& room = doc["room"];
    if (!room.contains("boundary") || !room["boundary"].is_array())
        throw SceneError("room.boundary: missing or not an array");
    for (const json& v : room["boundary"]) {
        if (!v.is_array() || v.size() != 2)
            throw SceneError("room.boundary: vertices must be [x,z] pairs");
        scene.room.boundary.pts.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    scene.room.height = room.value("height", 2.5);
    if (room.contains("door") && !room["door"].is_null()) {
        Door d;
        const json& dj = room["door"];
        if (!dj.contains("position") || !dj["position"].is_array() ||
            dj["position"].size() != 2)
            throw SceneError("room.door.position: must be [x,z]");
        d.position = {dj["position"][0].get<double>(), dj["position"][1].get<double>()};
        d.width = dj.value("width", 0.8);
        scene.room.door = d;
    }
    scene.room.validate();

    if (doc.contains("regions")) {
        for (const auto& [furniture, arr] : doc["regions"].items()) {
            std::vector<SupportRegion> regs;
            size_t i = 0;
            for (const json& rj : arr) {
                regs.push_back(
                    region_from_json(rj, "regions." + furniture + "[" + std::to_string(i) + "]"));
                ++i;
            }
            scene.furniture_regions[furniture] = std::move(regs);
        }
    }

    std::set<std::string> ids;
    if (doc.contains("objects")) {
        size_t i = 0;
        for (const json& oj : doc["objects"]) {
            std::string where = "objects[" + std::to_string(i) + "]";
            SceneObject o;
            if (!oj.contains("id") || !oj["id"].is_string())
                throw SceneError(where + ".id: missing");
            o.instance_id = oj["id"].get<std::string>();
            if (!ids.insert(o.instance_id).second)
                throw SceneError(where + ": duplicate object id '" + o.instance_id + "'");
            o.spec.name = oj.value("name", std::string{});
            if (!oj.contains("dimensions") || !oj["dimensions"].is_array() ||
                oj["dimensions"].size() != 3)
                throw SceneError(where + ".dimensions: must be [w,h,d]");
            o.spec.dims = {oj["dimensions"][0].get<double>(),
                           oj["dimensions"][1].get<double>(),
                           oj["dimensions"][2].get<double>()};
            if (oj.contains("asset") && !oj["asset"].is_null())
                o.spec.asset_id = oj["asset"].get<std::string>();
            o.pose = pose_from_json(oj.value("pose", json::object()), where + ".pose");
            o.parent = parent_from_json(oj.value("parent", json::object()), where + ".parent");
            o.motif_id = oj.value("motif", std::string{});
            o.augmented = oj.value("augmented", false);
            scene.objects.push_back(std::move(o));
            ++i;
        }
    }
    // Referential integrity: region parents must exist.
    for (const SceneObject& o : scene.objects) {
        if (o.parent.is_floor) continue;
        if (!ids.count(o.parent.furniture_id))
            throw SceneError("object '" + o.instance_id +
                             "' parented to unknown furniture '" + o.parent.furniture_id +
                             "'");
        auto it = scene.furniture_regions.find(o.parent.furniture_id);
        bool found = it != scene.furniture_regions.end();
        if (found) {
            found = false;
            for (const SupportRegion& r : it->second)
                found = found || r.id == o.parent.region_id;
        }
        if (!found)
            throw SceneError("object '" + o.instance_id + "' parented to nonexistent region " +
                             std::to_string(o.parent.region_id) + " of '" +
                             o.parent.furniture_id + "'");
    }

    if (doc.contains("motifs")) {
        size_t i = 0;
        for (const json& mj : doc["motifs"]) {
            std::string where = "motifs[" + std::to_string(i) + "]";
            SceneMotifRecord m;
            m.id = mj.value("id", std::string{});
            m.description = mj.value("description", std::string{});
            m.pose = pose_from_json(mj.value("pose", json::object()), where + ".pose");
            if (mj.contains("extents") && mj["extents"].is_array() && mj["extents"].size() == 3)
                m.extents = {mj["extents"][0].get<double>(), mj["extents"][1].get<double>(),
                             mj["extents"][2].get<double>()};
            m.parent = parent_from_json(mj.value("parent", json::object()), where + ".parent");
            m.sigma = mj.value("sigma", 0.0);
            m.augmented = mj.value("augmented", false);
            scene.motifs.push_back(std::move(m));
            ++i;
        }
    }

    if (doc.contains("plans"))
        for (const auto& [k, v] : doc["plans"].items())
            scene.plan_provenance[k] = v.get<std::string>();
    if (doc.contains("notes"))
        for (const json& n : doc["notes"]) scene.notes.push_back(n.get<std::string>());
    return scene;
}

}  // namespace hsm
