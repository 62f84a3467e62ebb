#pragma once

#include <nlohmann/json_fwd.hpp>

#include "hsm/motifs/motifs.hpp"

namespace hsm {

// Hierarchy documents use exactly the compositional-JSON shape:
// keys type, description, elements (motifs), amount (objects), and
// make_tight on the root.
nlohmann::ordered_json motif_node_to_json(const MotifNode& node, bool root = true);
MotifNode motif_node_from_json(const nlohmann::json& j, const std::string& path = "root");

}  // namespace hsm
