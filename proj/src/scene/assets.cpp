#include "hsm/scene/assets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hsm {

using nlohmann::json;

namespace {

uint64_t fnv1a64(const std::string& s, uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= b.size(); ++j) {
            size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na <= 0 || nb <= 0) return 0.0;
    return dot / std::sqrt(na * nb);
}

double dimension_mismatch(Vec3 asset, Vec3 target) {
    std::array<double, 3> a{asset.x, asset.y, asset.z};
    std::array<double, 3> t{target.x, target.y, target.z};
    std::sort(a.begin(), a.end());
    std::sort(t.begin(), t.end());
    double sum = 0;
    for (int i = 0; i < 3; ++i) {
        if (a[i] <= 0 || t[i] <= 0) return 1e300;
        sum += std::abs(std::log(a[i] / t[i]));
    }
    return sum;
}

}  // namespace

std::vector<double> HashEmbedder::embed(const std::string& text) const {
    std::vector<double> v(dim_);
    double norm = 0.0;
    for (size_t i = 0; i < dim_; ++i) {
        uint64_t h = fnv1a64(text, 0xcbf29ce484222325ull ^ (0x100000001b3ull * (i + 1)));
        // map to [-1, 1)
        v[i] = static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
        norm += v[i] * v[i];
    }
    norm = std::sqrt(norm);
    if (norm > 0)
        for (double& x : v) x /= norm;
    return v;
}

AssetManifest AssetManifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SceneError("cannot open asset manifest: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string dir = ".";
    size_t slash = path.find_last_of('/');
    if (slash != std::string::npos) dir = path.substr(0, slash);
    return parse(ss.str(), dir);
}

AssetManifest AssetManifest::parse(const std::string& text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SceneError(std::string("asset manifest is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("assets") || !j["assets"].is_array())
        throw SceneError("asset manifest: missing 'assets' array");
    AssetManifest m;
    m.base_dir = base_dir;
    std::set<std::string> ids;
    for (size_t i = 0; i < j["assets"].size(); ++i) {
        const json& e = j["assets"][i];
        std::string where = "assets[" + std::to_string(i) + "]";
        AssetRecord rec;
        if (!e.contains("id") || !e["id"].is_string())
            throw SceneError("asset manifest: " + where + ".id missing");
        rec.id = e["id"].get<std::string>();
        if (!ids.insert(rec.id).second)
            throw SceneError("asset manifest: duplicate asset id '" + rec.id + "'");
        if (!e.contains("category") || !e["category"].is_string())
            throw SceneError("asset manifest: " + where + ".category missing");
        rec.category = e["category"].get<std::string>();
        if (!e.contains("dimensions") || !e["dimensions"].is_array() ||
            e["dimensions"].size() != 3)
            throw SceneError("asset manifest: " + where + ".dimensions must be [w,h,d]");
        rec.dims = {e["dimensions"][0].get<double>(), e["dimensions"][1].get<double>(),
                    e["dimensions"][2].get<double>()};
        if (!(rec.dims.x > 0 && rec.dims.y > 0 && rec.dims.z > 0))
            throw SceneError("asset manifest: " + where + ".dimensions must be positive");
        rec.mesh_path = e.value("mesh", std::string{});
        if (e.contains("embedding")) {
            for (const json& x : e["embedding"]) rec.embedding.push_back(x.get<double>());
        }
        if (m.embedding_dim == 0) m.embedding_dim = rec.embedding.size();
        else if (rec.embedding.size() != m.embedding_dim)
            throw SceneError("asset manifest: " + where +
                             ".embedding length differs from the rest of the manifest");
        m.assets.push_back(std::move(rec));
    }
    return m;
}

AssetRecord retrieve_asset(const RetrievalQuery& query, const AssetManifest& manifest,
                           const Embedder& embedder, int k) {
    std::vector<const AssetRecord*> in_category;
    for (const AssetRecord& a : manifest.assets)
        if (a.category == query.category) in_category.push_back(&a);
    if (in_category.empty()) {
        std::vector<std::pair<size_t, std::string>> near;
        std::set<std::string> cats;
        for (const AssetRecord& a : manifest.assets) cats.insert(a.category);
        for (const std::string& c : cats) near.push_back({edit_distance(query.category, c), c});
        std::sort(near.begin(), near.end());
        std::string hint;
        for (size_t i = 0; i < near.size() && i < 3; ++i)
            hint += (i ? ", " : "") + near[i].second;
        throw SceneError("no asset in category '" + query.category + "'" +
                         (hint.empty() ? "" : " (nearest categories: " + hint + ")"));
    }

    std::vector<double> q = embedder.embed(query.style_text);
    std::vector<std::pair<double, const AssetRecord*>> ranked;
    for (const AssetRecord* a : in_category) {
        if (a->embedding.size() != q.size())
            throw SceneError("asset '" + a->id + "' embedding dimension " +
                             std::to_string(a->embedding.size()) +
                             " does not match the embedder's " + std::to_string(q.size()));
        ranked.push_back({cosine(q, a->embedding), a});
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first > y.first;
        return x.second->id < y.second->id;
    });
    if (static_cast<int>(ranked.size()) > k) ranked.resize(static_cast<size_t>(k));

    const AssetRecord* best = nullptr;
    double best_mismatch = 1e300;
    for (const auto& [sim, rec] : ranked) {
        double mm = dimension_mismatch(rec->dims, query.target_dims);
        if (mm < best_mismatch || (mm == best_mismatch && best && rec->id < best->id)) {
            best_mismatch = mm;
            best = rec;
        }
    }
    return *best;
}

}  // namespace hsm
