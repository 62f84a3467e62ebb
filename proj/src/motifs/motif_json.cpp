#include "hsm/motifs/motif_json.hpp"

#include <nlohmann/json.hpp>

namespace hsm {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json motif_node_to_json(const MotifNode& node, bool root) {
    ordered_json j;
    j["type"] = node.is_object ? "object" : motif_type_name(node.type);
    j["description"] = node.description;
    if (node.is_object) {
        j["amount"] = node.amount;
    } else {
        ordered_json elems = ordered_json::array();
        for (const MotifNode& child : node.elements)
            elems.push_back(motif_node_to_json(child, false));
        j["elements"] = std::move(elems);
    }
    if (root) j["make_tight"] = node.make_tight;
    return j;
}

MotifNode motif_node_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw MotifError(path + ": hierarchy node must be a JSON object");
    if (!j.contains("type") || !j["type"].is_string())
        throw MotifError(path + ".type: missing or not a string");
    MotifNode node;
    const std::string type = j["type"].get<std::string>();
    node.description = j.value("description", std::string{});
    if (type == "object") {
        node.is_object = true;
        if (j.contains("amount")) {
            if (!j["amount"].is_number_integer())
                throw MotifError(path + ".amount: must be an integer");
            node.amount = j["amount"].get<int>();
        }
        if (j.contains("elements") && !j["elements"].empty())
            throw MotifError(path + ".elements: object leaves take no elements");
    } else {
        auto mt = motif_type_from_name(type);
        if (!mt) throw MotifError(path + ".type: unknown motif type '" + type + "'");
        node.type = *mt;
        if (!j.contains("elements") || !j["elements"].is_array())
            throw MotifError(path + ".elements: missing or not an array");
        size_t i = 0;
        for (const json& child : j["elements"]) {
            node.elements.push_back(
                motif_node_from_json(child, path + ".elements[" + std::to_string(i) + "]"));
            ++i;
        }
    }
    if (j.contains("make_tight")) {
        if (!j["make_tight"].is_boolean())
            throw MotifError(path + ".make_tight: must be a boolean");
        node.make_tight = j["make_tight"].get<bool>();
    }
    return node;
}

}  // namespace hsm
