#pragma once

#include <functional>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "hsm/pipeline/plans.hpp"

namespace hsm {

// External decision maker replacing the VLM. Request kinds: decompose,
// group, hierarchy, place, augment, validate. Responses must parse into
// the corresponding plan documents.
class PlannerClient {
public:
    virtual ~PlannerClient() = default;
    virtual bool supports(const std::string& kind) const = 0;
    // failure_reason carries the validator output of the previous
    // attempt (empty on the first try).
    virtual nlohmann::json request(const std::string& kind, const nlohmann::json& payload,
                                   const std::string& failure_reason) = 0;
};

// Serves pre-authored response documents <kind>.json from a directory.
class FilePlanner : public PlannerClient {
public:
    explicit FilePlanner(std::string dir) : dir_(std::move(dir)) {}
    bool supports(const std::string& kind) const override;
    nlohmann::json request(const std::string& kind, const nlohmann::json& payload,
                           const std::string& failure_reason) override;

private:
    std::string dir_;
};

// HTTP planner: POST <base_url>/plan with {kind, payload, failure_reason}.
// Credentials come from HSM_PLANNER_TOKEN (bearer token when present).
std::unique_ptr<PlannerClient> make_http_planner(const std::string& base_url);

// Issues the request up to `retries` times, appending the validator's
// failure reason to each retry; throws PlanError after exhaustion.
template <typename T>
T request_validated(PlannerClient& client, const std::string& kind,
                    const nlohmann::json& payload,
                    const std::function<T(const nlohmann::json&)>& parse_and_validate,
                    int retries = 3) {
    std::string reason;
    for (int attempt = 0; attempt < retries; ++attempt) {
        nlohmann::json response = client.request(kind, payload, reason);
        try {
            return parse_and_validate(response);
        } catch (const Error& e) {
            reason = e.what();
        }
    }
    throw PlanError(kind, "planner failed after " + std::to_string(retries) +
                              " attempts; last failure: " + reason);
}

}  // namespace hsm
