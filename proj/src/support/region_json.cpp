#include "hsm/support/region_json.hpp"

#include <nlohmann/json.hpp>

namespace hsm {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json region_to_json(const SupportRegion& r) {
    ordered_json j;
    j["id"] = r.id;
    ordered_json fp = ordered_json::array();
    for (const Vec2& p : r.footprint.pts) fp.push_back({p.x, p.z});
    j["footprint"] = std::move(fp);
    j["surface_height"] = r.surface_height;
    j["clearance"] = r.clearance;
    j["is_top"] = r.is_top;
    j["faces"] = r.faces;
    return j;
}

SupportRegion region_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw Error(path + ": region must be a JSON object");
    SupportRegion r;
    r.id = j.value("id", 0);
    if (!j.contains("footprint") || !j["footprint"].is_array())
        throw Error(path + ".footprint: missing or not an array");
    for (const json& p : j["footprint"]) {
        if (!p.is_array() || p.size() != 2)
            throw Error(path + ".footprint: vertices must be [x,z] pairs");
        r.footprint.pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    if (!j.contains("surface_height") || !j["surface_height"].is_number())
        throw Error(path + ".surface_height: missing or not a number");
    r.surface_height = j["surface_height"].get<double>();
    if (!j.contains("clearance") || !j["clearance"].is_number())
        throw Error(path + ".clearance: missing or not a number");
    r.clearance = j["clearance"].get<double>();
    r.is_top = j.value("is_top", false);
    if (j.contains("faces"))
        for (const json& f : j["faces"]) r.faces.push_back(f.get<uint32_t>());
    return r;
}

ordered_json regions_document(const std::vector<SupportRegion>& regions,
                              const std::string& source) {
    ordered_json doc;
    doc["format"] = "hsm-regions";
    doc["version"] = 1;
    doc["source"] = source;
    ordered_json arr = ordered_json::array();
    for (const SupportRegion& r : regions) arr.push_back(region_to_json(r));
    doc["regions"] = std::move(arr);
    return doc;
}

}  // namespace hsm
