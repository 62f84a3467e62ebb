#include "hsm/pipeline/planner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace hsm {

using nlohmann::json;

namespace {

const char* kKinds[] = {"decompose", "group", "hierarchy", "place", "augment", "validate"};

bool known_kind(const std::string& kind) {
    for (const char* k : kKinds)
        if (kind == k) return true;
    return false;
}

}  // namespace

bool FilePlanner::supports(const std::string& kind) const {
    if (!known_kind(kind)) return false;
    return std::filesystem::exists(std::filesystem::path(dir_) / (kind + ".json"));
}

json FilePlanner::request(const std::string& kind, const json& payload,
                          const std::string& failure_reason) {
    (void)payload;
    (void)failure_reason;  // canned responses cannot react to feedback
    if (!known_kind(kind)) throw PlanError(kind, "unknown planner request kind");
    std::filesystem::path p = std::filesystem::path(dir_) / (kind + ".json");
    std::ifstream in(p);
    if (!in) throw PlanError(kind, "no canned response " + p.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw PlanError(kind, p.string() + " is not valid JSON");
    return j;
}

}  // namespace hsm
