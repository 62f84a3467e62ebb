#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hsm/geom/vec.hpp"

namespace hsm {

class MeshError : public Error {
public:
    explicit MeshError(const std::string& what) : Error(what) {}
};

// Indexed triangle mesh. Construction welds coincident vertices and
// drops degenerate (zero-area) faces so per-face normals are always
// well-defined.
class TriMesh {
public:
    using Face = std::array<uint32_t, 3>;

    TriMesh() = default;
    TriMesh(std::vector<Vec3> vertices, std::vector<Face> faces);

    static TriMesh load_obj(const std::string& path);
    static TriMesh parse_obj(std::istream& in, const std::string& label);

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<Face>& faces() const { return faces_; }
    size_t vertex_count() const { return vertices_.size(); }
    size_t face_count() const { return faces_.size(); }

    Vec3 face_normal(size_t f) const;
    double face_area(size_t f) const;
    Vec3 face_centroid(size_t f) const;

    // Faces sharing an edge with f, ascending face index.
    const std::vector<uint32_t>& neighbors(size_t f) const { return adjacency_[f]; }

    Aabb bounds() const;

private:
    void weld_and_index();

    std::vector<Vec3> vertices_;
    std::vector<Face> faces_;
    std::vector<std::vector<uint32_t>> adjacency_;
};

}  // namespace hsm
