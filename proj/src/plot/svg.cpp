#include "hsm/plot/svg.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace hsm {

namespace {

class SvgWriter {
public:
    SvgWriter(double min_x, double min_z, double max_x, double max_z) {
        margin_ = 0.05 * std::max(max_x - min_x, max_z - min_z) + 0.1;
        min_x_ = min_x - margin_;
        min_z_ = min_z - margin_;
        width_ = (max_x - min_x) + 2 * margin_;
        height_ = (max_z - min_z) + 2 * margin_;
        scale_ = 640.0 / std::max(width_, height_);
        body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
              << width_ * scale_ << "\" height=\"" << height_ * scale_
              << "\" viewBox=\"0 0 " << width_ * scale_ << ' ' << height_ * scale_
              << "\">\n";
        body_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    // World xz to screen (z grows downward on screen).
    double sx(double x) const { return (x - min_x_) * scale_; }
    double sz(double z) const { return (height_ - (z - min_z_)) * scale_; }

    void polygon(const Polygon2& poly, const std::string& fill, const std::string& stroke,
                 double opacity = 1.0) {
        body_ << "<polygon points=\"";
        for (const Vec2& p : poly.pts) body_ << sx(p.x) << ',' << sz(p.z) << ' ';
        body_ << "\" fill=\"" << fill << "\" stroke=\"" << stroke
              << "\" stroke-width=\"1\" fill-opacity=\"" << opacity << "\"/>\n";
    }

    void arrow(const Vec2& from, const Vec2& dir, double len, const std::string& color) {
        Vec2 to = from + dir * len;
        Vec2 left = from + dir * (0.7 * len) + Vec2{-dir.z, dir.x} * (0.15 * len);
        Vec2 right = from + dir * (0.7 * len) + Vec2{dir.z, -dir.x} * (0.15 * len);
        body_ << "<line x1=\"" << sx(from.x) << "\" y1=\"" << sz(from.z) << "\" x2=\""
              << sx(to.x) << "\" y2=\"" << sz(to.z) << "\" stroke=\"" << color
              << "\" stroke-width=\"1.5\"/>\n";
        body_ << "<line x1=\"" << sx(left.x) << "\" y1=\"" << sz(left.z) << "\" x2=\""
              << sx(to.x) << "\" y2=\"" << sz(to.z) << "\" stroke=\"" << color
              << "\" stroke-width=\"1.5\"/>\n";
        body_ << "<line x1=\"" << sx(right.x) << "\" y1=\"" << sz(right.z) << "\" x2=\""
              << sx(to.x) << "\" y2=\"" << sz(to.z) << "\" stroke=\"" << color
              << "\" stroke-width=\"1.5\"/>\n";
    }

    void label(const Vec2& at, const std::string& text) {
        body_ << "<text x=\"" << sx(at.x) << "\" y=\"" << sz(at.z)
              << "\" font-size=\"10\" font-family=\"sans-serif\" text-anchor=\"middle\">"
              << text << "</text>\n";
    }

    void save(const std::string& path) {
        body_ << "</svg>\n";
        std::ofstream out(path);
        if (!out) throw Error("cannot write SVG to " + path);
        out << body_.str();
    }

private:
    std::ostringstream body_;
    double min_x_ = 0, min_z_ = 0, width_ = 1, height_ = 1, scale_ = 1, margin_ = 0;
};

void bounds_of_polygon(const Polygon2& p, double& min_x, double& min_z, double& max_x,
                       double& max_z) {
    for (const Vec2& v : p.pts) {
        min_x = std::min(min_x, v.x);
        min_z = std::min(min_z, v.z);
        max_x = std::max(max_x, v.x);
        max_z = std::max(max_z, v.z);
    }
}

}  // namespace

void write_layout_svg(const std::string& path, const SolveDomain& dom,
                      const std::vector<PlacementRequest>& reqs, const Layout& layout) {
    double min_x = 1e300, min_z = 1e300, max_x = -1e300, max_z = -1e300;
    bounds_of_polygon(dom.boundary, min_x, min_z, max_x, max_z);
    SvgWriter svg(min_x, min_z, max_x, max_z);
    svg.polygon(dom.boundary, "#f4f4f4", "#333");
    for (const Polygon2& obs : dom.obstacles) svg.polygon(obs, "#d88", "#a33", 0.6);
    std::map<std::string, const PlacementRequest*> by_id;
    for (const PlacementRequest& r : reqs) by_id[r.motif_id] = &r;
    for (const PlacedMotif& pm : layout.placed) {
        const PlacementRequest* req = by_id.count(pm.motif_id) ? by_id[pm.motif_id] : nullptr;
        if (!req) continue;
        RotRect rect = req->footprint_at(pm.pose);
        svg.polygon(rect.to_polygon(), "#9bc4e2", "#246", 0.8);
        Vec2 center{pm.pose.position.x, pm.pose.position.z};
        svg.arrow(center, pm.pose.facing(), std::max(0.2, req->depth * 0.4), "#246");
        svg.label(center, pm.motif_id);
    }
    svg.save(path);
}

void write_scene_svg(const std::string& path, const Scene& scene) {
    double min_x = 1e300, min_z = 1e300, max_x = -1e300, max_z = -1e300;
    bounds_of_polygon(scene.room.boundary, min_x, min_z, max_x, max_z);
    SvgWriter svg(min_x, min_z, max_x, max_z);
    svg.polygon(scene.room.boundary, "#f4f4f4", "#333");
    FloorRegion floor = floor_support_region(scene.room);
    for (const Polygon2& obs : floor.obstacles) svg.polygon(obs, "#d88", "#a33", 0.5);
    for (const SceneObject& o : scene.objects) {
        bool small = !o.parent.is_floor;
        svg.polygon(o.footprint().to_polygon(), small ? "#c7e0b8" : "#9bc4e2",
                    small ? "#374" : "#246", small ? 0.9 : 0.75);
        Vec2 center{o.pose.position.x, o.pose.position.z};
        svg.arrow(center, o.pose.facing(), std::max(0.1, o.spec.dims.z * 0.3), "#555");
    }
    for (const SceneMotifRecord& m : scene.motifs) {
        if (!m.parent.is_floor) continue;
        svg.label({m.pose.position.x, m.pose.position.z}, m.id);
    }
    svg.save(path);
}

}  // namespace hsm
