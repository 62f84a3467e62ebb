#pragma once

#include <nlohmann/json_fwd.hpp>

#include "hsm/support/support.hpp"

namespace hsm {

nlohmann::ordered_json region_to_json(const SupportRegion& r);
SupportRegion region_from_json(const nlohmann::json& j, const std::string& path);

// regions.json for the extract-regions CLI: version, source label, and
// the region list.
nlohmann::ordered_json regions_document(const std::vector<SupportRegion>& regions,
                                        const std::string& source);

}  // namespace hsm
