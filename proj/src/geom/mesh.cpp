#include "hsm/geom/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace hsm {

namespace {

constexpr double kWeldEps = 1e-9;
constexpr double kMinFaceArea = 1e-12;

struct VertexKey {
    long long x, y, z;
    bool operator<(const VertexKey& o) const {
        if (x != o.x) return x < o.x;
        if (y != o.y) return y < o.y;
        return z < o.z;
    }
};

VertexKey quantize(const Vec3& v) {
    const double s = 1.0 / kWeldEps;
    return {static_cast<long long>(std::llround(v.x * s)),
            static_cast<long long>(std::llround(v.y * s)),
            static_cast<long long>(std::llround(v.z * s))};
}

}  // namespace

TriMesh::TriMesh(std::vector<Vec3> vertices, std::vector<Face> faces)
    : vertices_(std::move(vertices)), faces_(std::move(faces)) {
    for (const Vec3& v : vertices_)
        if (!v.finite()) throw MeshError("mesh vertex has non-finite coordinates");
    for (const Face& f : faces_)
        for (uint32_t idx : f)
            if (idx >= vertices_.size())
                throw MeshError("face index " + std::to_string(idx) + " out of range");
    weld_and_index();
}

void TriMesh::weld_and_index() {
    // Weld coincident vertices.
    std::map<VertexKey, uint32_t> lookup;
    std::vector<uint32_t> remap(vertices_.size());
    std::vector<Vec3> welded;
    welded.reserve(vertices_.size());
    for (size_t i = 0; i < vertices_.size(); ++i) {
        VertexKey key = quantize(vertices_[i]);
        auto [it, inserted] = lookup.try_emplace(key, static_cast<uint32_t>(welded.size()));
        if (inserted) welded.push_back(vertices_[i]);
        remap[i] = it->second;
    }
    vertices_ = std::move(welded);

    std::vector<Face> kept;
    kept.reserve(faces_.size());
    for (Face f : faces_) {
        for (uint32_t& idx : f) idx = remap[idx];
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) continue;
        const Vec3& a = vertices_[f[0]];
        const Vec3& b = vertices_[f[1]];
        const Vec3& c = vertices_[f[2]];
        if ((b - a).cross(c - a).norm() * 0.5 <= kMinFaceArea) continue;
        kept.push_back(f);
    }
    faces_ = std::move(kept);

    // Edge adjacency.
    adjacency_.assign(faces_.size(), {});
    std::map<std::pair<uint32_t, uint32_t>, std::vector<uint32_t>> edge_faces;
    for (size_t fi = 0; fi < faces_.size(); ++fi) {
        const Face& f = faces_[fi];
        for (int e = 0; e < 3; ++e) {
            uint32_t a = f[e], b = f[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            edge_faces[{a, b}].push_back(static_cast<uint32_t>(fi));
        }
    }
    for (const auto& [edge, fs] : edge_faces) {
        for (size_t i = 0; i < fs.size(); ++i)
            for (size_t j = 0; j < fs.size(); ++j)
                if (i != j) adjacency_[fs[i]].push_back(fs[j]);
    }
    for (auto& nb : adjacency_) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
}

Vec3 TriMesh::face_normal(size_t f) const {
    const Face& face = faces_[f];
    const Vec3& a = vertices_[face[0]];
    const Vec3& b = vertices_[face[1]];
    const Vec3& c = vertices_[face[2]];
    return (b - a).cross(c - a).normalized();
}

double TriMesh::face_area(size_t f) const {
    const Face& face = faces_[f];
    const Vec3& a = vertices_[face[0]];
    const Vec3& b = vertices_[face[1]];
    const Vec3& c = vertices_[face[2]];
    return (b - a).cross(c - a).norm() * 0.5;
}

Vec3 TriMesh::face_centroid(size_t f) const {
    const Face& face = faces_[f];
    return (vertices_[face[0]] + vertices_[face[1]] + vertices_[face[2]]) / 3.0;
}

Aabb TriMesh::bounds() const {
    Aabb box;
    for (const Vec3& v : vertices_) box.expand(v);
    return box;
}

TriMesh TriMesh::load_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeshError("cannot open OBJ file: " + path);
    return parse_obj(in, path);
}

TriMesh TriMesh::parse_obj(std::istream& in, const std::string& label) {
    std::vector<Vec3> vertices;
    std::vector<Face> faces;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "v") {
            Vec3 v;
            if (!(ss >> v.x >> v.y >> v.z))
                throw MeshError(label + ":" + std::to_string(line_no) + ": malformed vertex");
            vertices.push_back(v);
        } else if (tag == "f") {
            std::vector<uint32_t> idx;
            std::string tok;
            while (ss >> tok) {
                // "7", "7/1", "7/1/3", "7//3" all reference vertex 7.
                size_t slash = tok.find('/');
                if (slash != std::string::npos) tok = tok.substr(0, slash);
                long v = std::strtol(tok.c_str(), nullptr, 10);
                if (v < 0) v = static_cast<long>(vertices.size()) + v + 1;
                if (v < 1 || v > static_cast<long>(vertices.size()))
                    throw MeshError(label + ":" + std::to_string(line_no) +
                                    ": face index out of range");
                idx.push_back(static_cast<uint32_t>(v - 1));
            }
            if (idx.size() < 3)
                throw MeshError(label + ":" + std::to_string(line_no) +
                                ": face with fewer than 3 vertices");
            for (size_t i = 1; i + 1 < idx.size(); ++i)  // fan triangulation
                faces.push_back({idx[0], idx[i], idx[i + 1]});
        }
        // All other record types (vn, vt, o, g, s, usemtl, mtllib, #) ignored.
    }
    return TriMesh(std::move(vertices), std::move(faces));
}

}  // namespace hsm
