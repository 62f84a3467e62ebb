#include <cstdlib>

#include <nlohmann/json.hpp>

#include "httplib.h"
#include "hsm/scene/assets.hpp"

namespace hsm {

namespace {

class HttpEmbedder : public Embedder {
public:
    explicit HttpEmbedder(std::string base_url) : base_url_(std::move(base_url)) {}

    std::vector<double> embed(const std::string& text) const override {
        httplib::Client client(base_url_);
        client.set_read_timeout(30, 0);
        httplib::Headers headers;
        if (const char* token = std::getenv("HSM_EMBEDDER_TOKEN"))
            headers.emplace("Authorization", std::string("Bearer ") + token);
        nlohmann::json payload{{"text", text}};
        auto res = client.Post("/embed", headers, payload.dump(), "application/json");
        if (!res)
            throw SceneError("embedding service unreachable at " + base_url_);
        if (res->status != 200)
            throw SceneError("embedding service returned status " +
                             std::to_string(res->status));
        nlohmann::json body = nlohmann::json::parse(res->body, nullptr, false);
        if (body.is_discarded() || !body.contains("embedding") ||
            !body["embedding"].is_array())
            throw SceneError("embedding service response lacks an 'embedding' array");
        std::vector<double> v;
        for (const auto& x : body["embedding"]) v.push_back(x.get<double>());
        if (v.empty()) throw SceneError("embedding service returned an empty vector");
        return v;
    }

private:
    std::string base_url_;
};

}  // namespace

std::unique_ptr<Embedder> make_http_embedder(const std::string& base_url) {
    return std::make_unique<HttpEmbedder>(base_url);
}

}  // namespace hsm
