#include <cstdlib>

#include "httplib.h"
#include "hsm/pipeline/planner.hpp"

namespace hsm {

namespace {

class HttpPlanner : public PlannerClient {
public:
    explicit HttpPlanner(std::string base_url) : base_url_(std::move(base_url)) {}

    bool supports(const std::string&) const override { return true; }

    nlohmann::json request(const std::string& kind, const nlohmann::json& payload,
                           const std::string& failure_reason) override {
        httplib::Client client(base_url_);
        client.set_read_timeout(120, 0);
        httplib::Headers headers;
        if (const char* token = std::getenv("HSM_PLANNER_TOKEN"))
            headers.emplace("Authorization", std::string("Bearer ") + token);
        nlohmann::json body{{"kind", kind}, {"payload", payload}};
        if (!failure_reason.empty()) body["failure_reason"] = failure_reason;
        auto res = client.Post("/plan", headers, body.dump(), "application/json");
        if (!res) throw PlanError(kind, "planner unreachable at " + base_url_);
        if (res->status != 200)
            throw PlanError(kind, "planner returned status " + std::to_string(res->status));
        nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
        if (j.is_discarded()) throw PlanError(kind, "planner response is not valid JSON");
        return j;
    }

private:
    std::string base_url_;
};

}  // namespace

std::unique_ptr<PlannerClient> make_http_planner(const std::string& base_url) {
    return std::make_unique<HttpPlanner>(base_url);
}

}  // namespace hsm
