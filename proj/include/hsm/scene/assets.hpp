#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hsm/geom/vec.hpp"
#include "hsm/scene/scene.hpp"

namespace hsm {

struct AssetRecord {
    std::string id;
    std::string category;
    Vec3 dims;
    std::string mesh_path;  // relative to the manifest file
    std::vector<double> embedding;
};

struct AssetManifest {
    std::vector<AssetRecord> assets;
    size_t embedding_dim = 0;
    std::string base_dir;  // directory of the manifest file

    static AssetManifest load(const std::string& path);
    static AssetManifest parse(const std::string& text, const std::string& base_dir);
};

// Text embedding interface; the manifest's vectors must live in the
// same space.
class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::vector<double> embed(const std::string& text) const = 0;
};

// Deterministic hash-projection embedder for offline runs and tests.
class HashEmbedder : public Embedder {
public:
    explicit HashEmbedder(size_t dim = 16) : dim_(dim) {}
    std::vector<double> embed(const std::string& text) const override;
    size_t dim() const { return dim_; }

private:
    size_t dim_;
};

// Client for an external embedding service:
//   POST <base_url>/embed  {"text": "..."}  ->  {"embedding": [...]}
// Credentials come from the HSM_EMBEDDER_TOKEN environment variable and
// are sent as a bearer token when present.
std::unique_ptr<Embedder> make_http_embedder(const std::string& base_url);

struct RetrievalQuery {
    std::string category;
    std::string style_text;
    Vec3 target_dims;
};

// Category filter -> cosine-similarity top k -> closest dimensions
// (sum of |log(asset_dim / target_dim)| over sorted dims). Ties break
// by ascending asset id. Throws SceneError when the category is empty,
// reporting the nearest category labels.
AssetRecord retrieve_asset(const RetrievalQuery& query, const AssetManifest& manifest,
                           const Embedder& embedder, int k = 5);

}  // namespace hsm
