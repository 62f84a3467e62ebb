#include "hsm/motifs/motifs.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hsm {

namespace {

constexpr double kContactEps = 1e-9;
constexpr double kGrowStep = 0.005;  // ring radius growth per relaxation step
constexpr int kGrowLimit = 4000;

// Deterministic across platforms, unlike <random> distributions.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// A motif operand: object or sub-arrangement, in a local frame with
// bounds centered in xz and grounded at y = 0.
struct Unit {
    Vec3 dims;
    std::vector<PlacedObject> members;
};

Unit unit_from_object(const ObjectSpec& spec) {
    Unit u;
    u.dims = spec.dims;
    ObjectSpec single = spec;
    single.amount = 1;
    u.members.push_back({std::move(single), Pose{{0, 0, 0}, 0.0}});
    return u;
}

Unit unit_from_arrangement(const Arrangement& a) {
    Unit u;
    u.dims = a.bounds.extents();
    u.members = a.objects;
    return u;
}

void place_unit(std::vector<PlacedObject>& out, const Unit& unit, double x, double y,
                double z, double yaw) {
    for (const PlacedObject& m : unit.members) {
        PlacedObject p = m;
        Vec3 rotated = rotate_yaw(m.pose.position, yaw);
        p.pose = Pose{{rotated.x + x, rotated.y + y, rotated.z + z}, m.pose.yaw + yaw};
        out.push_back(std::move(p));
    }
}

Aabb bounds_of(const std::vector<PlacedObject>& objects) {
    Aabb box;
    for (const PlacedObject& o : objects) box.expand(o.bounds());
    return box;
}

// Bounds of a unit if placed at (0, 0, 0) with the given yaw.
Aabb unit_bounds_at(const Unit& unit, double yaw) {
    std::vector<PlacedObject> tmp;
    place_unit(tmp, unit, 0, 0, 0, yaw);
    return bounds_of(tmp);
}

struct Operand {
    Unit unit;
    int amount = 1;
};

Operand make_operand(const MotifInput& in) {
    if (in.object) {
        if (in.object->amount < 1)
            throw MotifError("object '" + in.object->name + "' has nonpositive amount");
        if (!(in.object->dims.x > 0 && in.object->dims.y > 0 && in.object->dims.z > 0))
            throw MotifError("object '" + in.object->name + "' has nonpositive dimensions");
        return {unit_from_object(*in.object), in.object->amount};
    }
    if (in.arrangement) {
        if (in.arrangement->objects.empty())
            throw MotifError("empty sub-arrangement passed to motif");
        return {unit_from_arrangement(*in.arrangement), 1};
    }
    throw MotifError("motif input is neither object nor arrangement");
}

double default_small_gap(const MotifParams& p) { return p.gap.value_or(0.03); }

// -- single-object motifs ------------------------------------------------

void exec_stack(std::vector<PlacedObject>& out, const Unit& u, int n, double gap) {
    for (int i = 0; i < n; ++i)
        place_unit(out, u, 0, i * (u.dims.y + gap), 0, 0.0);
}

void exec_pile(std::vector<PlacedObject>& out, const Unit& u, int n, double gap,
               const MotifParams& p) {
    SplitMix64 rng(p.seed);
    double max_dx = p.pile_offset_frac * u.dims.x;
    double max_dz = p.pile_offset_frac * u.dims.z;
    for (int i = 0; i < n; ++i) {
        double dx = rng.range(-max_dx, max_dx);
        double dz = rng.range(-max_dz, max_dz);
        double yaw = rng.range(-p.pile_max_yaw, p.pile_max_yaw);
        place_unit(out, u, dx, i * (u.dims.y + gap), dz, yaw);
    }
}

void exec_row(std::vector<PlacedObject>& out, const Unit& u, int n, double gap) {
    double step = u.dims.x + gap;
    double x0 = -0.5 * step * (n - 1);
    for (int i = 0; i < n; ++i)
        place_unit(out, u, x0 + i * step, 0, 0, 0.0);
}

void exec_grid(std::vector<PlacedObject>& out, const Unit& u, int n,
               const MotifParams& p) {
    int rows, cols;
    if (p.rows || p.cols) {
        rows = p.rows.value_or(0);
        cols = p.cols.value_or(0);
        if (rows < 1 && cols >= 1) rows = n / cols;
        if (cols < 1 && rows >= 1) cols = n / rows;
        if (rows < 1 || cols < 1 || rows * cols != n)
            throw MotifError("grid of " + std::to_string(n) + " cannot form " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    } else {
        rows = 1;
        for (int r = 1; r * r <= n; ++r)
            if (n % r == 0) rows = r;
        cols = n / rows;
    }
    double gx = p.gap.value_or(0.1 * u.dims.x);
    double gz = p.gap.value_or(0.1 * u.dims.z);
    double sx = u.dims.x + gx, sz = u.dims.z + gz;
    double x0 = -0.5 * sx * (cols - 1), z0 = -0.5 * sz * (rows - 1);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            place_unit(out, u, x0 + c * sx, 0, z0 + r * sz, 0.0);
}

// Maximal bottom layer k with k(k+1)/2 <= n; remainder added to the
// lowest layers first. n = 6 reproduces 3/2/1.
std::vector<int> pyramid_layers(int n) {
    int k = 1;
    while ((k + 1) * (k + 2) / 2 <= n) ++k;
    std::vector<int> layers;
    for (int i = k; i >= 1; --i) layers.push_back(i);
    int rem = n - k * (k + 1) / 2;
    for (int i = 0; i < rem; ++i) layers[i] += 1;
    while (!layers.empty() && layers.back() == 0) layers.pop_back();
    return layers;
}

void exec_pyramid(std::vector<PlacedObject>& out, const Unit& u, int n, double gap) {
    std::vector<int> layers = pyramid_layers(n);
    double step = u.dims.x + gap;
    for (size_t layer = 0; layer < layers.size(); ++layer) {
        int count = layers[layer];
        double x0 = -0.5 * step * (count - 1);
        for (int i = 0; i < count; ++i)
            place_unit(out, u, x0 + i * step, static_cast<double>(layer) * u.dims.y, 0, 0.0);
    }
}

// -- relational motifs ---------------------------------------------------

void exec_left_of(std::vector<PlacedObject>& out, const Unit& primary,
                  const Unit& secondary, int n_sec, double gap) {
    place_unit(out, primary, 0, 0, 0, 0.0);
    Aabb pb = unit_bounds_at(primary, 0.0);
    Aabb sb = unit_bounds_at(secondary, 0.0);
    double edge = pb.min.x;
    for (int i = 0; i < n_sec; ++i) {
        double cx = edge - gap - (sb.max.x - sb.min.x) * 0.5;
        place_unit(out, secondary, cx, 0, 0, 0.0);
        edge = cx - (sb.max.x - sb.min.x) * 0.5;
    }
}

void exec_in_front_of(std::vector<PlacedObject>& out, const Unit& primary,
                      const Unit& secondary, int n_sec, double gap) {
    // The facing side of a yaw-0 primary is +z; the secondary faces back.
    place_unit(out, primary, 0, 0, 0, 0.0);
    Aabb pb = unit_bounds_at(primary, 0.0);
    Aabb sb = unit_bounds_at(secondary, 180.0);
    double edge = pb.max.z;
    double depth = sb.max.z - sb.min.z;
    for (int i = 0; i < n_sec; ++i) {
        double cz = edge + gap + depth * 0.5 - (sb.min.z + depth * 0.5);
        // sb is centered in xz for normalized units; keep the general form
        place_unit(out, secondary, 0, 0, cz, 180.0);
        edge = cz + sb.max.z;
    }
}

void exec_on_top(std::vector<PlacedObject>& out, const Unit& primary,
                 const Unit& secondary, int n_sec, double gap) {
    place_unit(out, primary, 0, 0, 0, 0.0);
    double y = primary.dims.y;
    for (int i = 0; i < n_sec; ++i) {
        place_unit(out, secondary, 0, y + gap, 0, 0.0);
        y += gap + secondary.dims.y;
    }
}

double yaw_facing_origin(const Vec2& at) {
    return normalize_yaw(rad_to_deg(std::atan2(-at.x, -at.z)));
}

bool any_overlap(const std::vector<RotRect>& rects, const Polygon2& center_poly) {
    for (size_t i = 0; i < rects.size(); ++i) {
        if (rect_overlaps_convex(rects[i], center_poly, 1e-7)) return true;
        for (size_t j = i + 1; j < rects.size(); ++j)
            if (rects_overlap(rects[i], rects[j], 1e-7)) return true;
    }
    return false;
}

// Distance from the origin to the boundary of the w2 x d2 rectangle
// along direction dir. Equals the half-extent on the axis directions,
// which keeps ring radii exact for chairs at 0/90/180/270.
double ray_rect_distance(const Vec2& dir, double w2, double d2) {
    double dx = std::abs(dir.x) > 1e-12 ? w2 / std::abs(dir.x) : 1e300;
    double dz = std::abs(dir.z) > 1e-12 ? d2 / std::abs(dir.z) : 1e300;
    return std::min(dx, dz);
}

void exec_surround(std::vector<PlacedObject>& out, const Unit& table, const Unit& chair,
                   int n, double gap) {
    place_unit(out, table, 0, 0, 0, 0.0);
    double w2 = table.dims.x * 0.5, d2 = table.dims.z * 0.5;
    Polygon2 table_rect = Polygon2::rect(-w2, -d2, w2, d2);
    double chair_half_d = chair.dims.z * 0.5;
    for (int iter = 0; iter < kGrowLimit; ++iter) {
        double extra = iter * kGrowStep;
        std::vector<Vec2> centers(n);
        std::vector<double> yaws(n);
        std::vector<RotRect> rects;
        for (int i = 0; i < n; ++i) {
            double a = 2.0 * kPi * i / n;
            Vec2 dir{std::cos(a), std::sin(a)};
            double dist = ray_rect_distance(dir, w2, d2) + gap + chair_half_d + extra;
            centers[i] = dir * dist;
            yaws[i] = yaw_facing_origin(centers[i]);
            rects.push_back(RotRect{centers[i], chair.dims.x * 0.5, chair_half_d, yaws[i]});
        }
        if (n > 0 && any_overlap(rects, table_rect) && iter + 1 < kGrowLimit) continue;
        for (int i = 0; i < n; ++i)
            place_unit(out, chair, centers[i].x, 0, centers[i].z, yaws[i]);
        return;
    }
}

// Point at arc length s along the rounded offset rectangle of a W x D
// box inflated by d (flat sides, quarter-circle corners), starting at
// the front-center (+z) and walking toward +x.
Vec2 rounded_rect_point(double w2, double d2, double d, double s, double perimeter) {
    s = std::fmod(s, perimeter);
    if (s < 0) s += perimeter;
    const double arc = 0.5 * kPi * d;
    struct Leg { double len; int kind; double a, b; };
    const Leg legs[] = {
        {w2, 0, 0, 0},                    // front right half: (t, d2+d), t in [0,w2]
        {arc, 1, w2, d2},                 // corner (+,+): angle 90 -> 0
        {d2 * 2, 2, 0, 0},                // right side downward
        {arc, 3, w2, -d2},                // corner (+,-): 0 -> -90
        {w2 * 2, 4, 0, 0},                // back side
        {arc, 5, -w2, -d2},               // corner (-,-)
        {d2 * 2, 6, 0, 0},                // left side upward
        {arc, 7, -w2, d2},                // corner (-,+)
        {w2, 8, 0, 0},                    // front left half back to start
    };
    for (const Leg& leg : legs) {
        if (s > leg.len) { s -= leg.len; continue; }
        double t = leg.len > 0 ? s / leg.len : 0.0;
        switch (leg.kind) {
            case 0: return {t * w2, d2 + d};
            case 1: {
                double a = kPi / 2 * (1 - t);
                return {leg.a + d * std::cos(a), leg.b + d * std::sin(a)};
            }
            case 2: return {w2 + d, d2 - t * 2 * d2};
            case 3: {
                double a = -kPi / 2 * t;
                return {leg.a + d * std::cos(a), leg.b + d * std::sin(a)};
            }
            case 4: return {w2 - t * 2 * w2, -(d2 + d)};
            case 5: {
                double a = -kPi / 2 * (1 + t);
                return {leg.a + d * std::cos(a), leg.b + d * std::sin(a)};
            }
            case 6: return {-(w2 + d), -d2 + t * 2 * d2};
            case 7: {
                double a = kPi - kPi / 2 * t;
                return {leg.a + d * std::cos(a), leg.b + d * std::sin(a)};
            }
            default: return {-w2 + t * w2, d2 + d};
        }
    }
    return {0, d2 + d};
}

void exec_rectangular_perimeter(std::vector<PlacedObject>& out, const Unit& table,
                                const Unit& chair, int n, double gap) {
    place_unit(out, table, 0, 0, 0, 0.0);
    double w2 = table.dims.x * 0.5, d2 = table.dims.z * 0.5;
    Polygon2 table_rect = Polygon2::rect(-w2, -d2, w2, d2);
    for (int iter = 0; iter < kGrowLimit; ++iter) {
        double d = chair.dims.z * 0.5 + gap + iter * kGrowStep;
        double perimeter = 2 * (table.dims.x + table.dims.z) + 2 * kPi * d;
        std::vector<Vec2> centers(n);
        std::vector<double> yaws(n);
        std::vector<RotRect> rects;
        for (int i = 0; i < n; ++i) {
            double s = perimeter * i / n;
            centers[i] = rounded_rect_point(w2, d2, d, s, perimeter);
            yaws[i] = yaw_facing_origin(centers[i]);
            rects.push_back(RotRect{centers[i], chair.dims.x * 0.5, chair.dims.z * 0.5,
                                    yaws[i]});
        }
        if (n > 0 && any_overlap(rects, table_rect) && iter + 1 < kGrowLimit) continue;
        for (int i = 0; i < n; ++i)
            place_unit(out, chair, centers[i].x, 0, centers[i].z, yaws[i]);
        return;
    }
}

void exec_bed_nightstand(std::vector<PlacedObject>& out, const Unit& bed,
                         const Unit& nightstand, int n_ns, double gap) {
    if (n_ns < 1 || n_ns > 2)
        throw MotifError("bed_nightstand places one or two nightstands, got " +
                         std::to_string(n_ns));
    place_unit(out, bed, 0, 0, 0, 0.0);
    // Head of the bed is the -z side; nightstand backs align with it.
    double cz = -bed.dims.z * 0.5 + nightstand.dims.z * 0.5;
    double cx = bed.dims.x * 0.5 + gap + nightstand.dims.x * 0.5;
    place_unit(out, nightstand, cx, 0, cz, 0.0);
    if (n_ns == 2) place_unit(out, nightstand, -cx, 0, cz, 0.0);
}

void exec_on_each_side(std::vector<PlacedObject>& out, const Unit& primary,
                       const Unit& secondary, int n_sec, const Unit& tertiary,
                       int n_ter, double gap) {
    place_unit(out, primary, 0, 0, 0, 0.0);
    double pw2 = primary.dims.x * 0.5;
    double edge = -pw2;
    for (int i = 0; i < n_sec; ++i) {
        double cx = edge - gap - secondary.dims.x * 0.5;
        place_unit(out, secondary, cx, 0, 0, 0.0);
        edge = cx - secondary.dims.x * 0.5;
    }
    edge = pw2;
    for (int i = 0; i < n_ter; ++i) {
        double cx = edge + gap + tertiary.dims.x * 0.5;
        place_unit(out, tertiary, cx, 0, 0, 0.0);
        edge = cx + tertiary.dims.x * 0.5;
    }
}

}  // namespace

const char* motif_type_name(MotifType t) {
    switch (t) {
        case MotifType::stack: return "stack";
        case MotifType::pile: return "pile";
        case MotifType::row: return "row";
        case MotifType::grid: return "grid";
        case MotifType::pyramid: return "pyramid";
        case MotifType::left_of: return "left_of";
        case MotifType::in_front_of: return "in_front_of";
        case MotifType::on_top: return "on_top";
        case MotifType::surround: return "surround";
        case MotifType::rectangular_perimeter: return "rectangular_perimeter";
        case MotifType::bed_nightstand: return "bed_nightstand";
        case MotifType::on_each_side: return "on_each_side";
    }
    return "?";
}

std::optional<MotifType> motif_type_from_name(const std::string& name) {
    static const std::map<std::string, MotifType> table = {
        {"stack", MotifType::stack},
        {"pile", MotifType::pile},
        {"row", MotifType::row},
        {"grid", MotifType::grid},
        {"pyramid", MotifType::pyramid},
        {"left_of", MotifType::left_of},
        {"in_front_of", MotifType::in_front_of},
        {"in_front", MotifType::in_front_of},  // prompt catalogs use both
        {"on_top", MotifType::on_top},
        {"surround", MotifType::surround},
        {"rectangular_perimeter", MotifType::rectangular_perimeter},
        {"bed_nightstand", MotifType::bed_nightstand},
        {"on_each_side", MotifType::on_each_side},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

int motif_arity(MotifType t) {
    switch (t) {
        case MotifType::stack:
        case MotifType::pile:
        case MotifType::row:
        case MotifType::grid:
        case MotifType::pyramid:
            return 1;
        case MotifType::on_each_side:
            return 3;
        default:
            return 2;
    }
}

Aabb PlacedObject::bounds() const {
    Aabb box;
    auto corners = footprint().corners();
    for (const Vec2& c : corners) {
        box.expand({c.x, pose.position.y, c.z});
        box.expand({c.x, pose.position.y + spec.dims.y, c.z});
    }
    return box;
}

void Arrangement::recompute_bounds() { bounds = bounds_of(objects); }

void Arrangement::normalize() {
    recompute_bounds();
    if (objects.empty()) return;
    Vec3 c = bounds.center();
    Vec3 shift{-c.x, -bounds.min.y, -c.z};
    for (PlacedObject& o : objects) o.pose.position += shift;
    recompute_bounds();
}

std::vector<Violation> validate_hierarchy(const MotifNode& root) {
    std::vector<Violation> out;
    std::map<std::string, int> seen;

    auto walk = [&](auto&& self, const MotifNode& node, const std::string& path) -> void {
        if (node.is_object) {
            if (node.description.empty())
                out.push_back({path, "object leaf has no name (empty description)"});
            if (node.amount < 1)
                out.push_back({path, "object '" + node.description +
                                         "' has nonpositive amount " +
                                         std::to_string(node.amount)});
            seen[node.description] += 1;
            if (!node.elements.empty())
                out.push_back({path, "object leaf must not have elements"});
            return;
        }
        const int arity = motif_arity(node.type);
        if (node.elements.empty()) {
            out.push_back({path, std::string(motif_type_name(node.type)) +
                                     " has no elements"});
            return;
        }
        if (static_cast<int>(node.elements.size()) != arity)
            out.push_back({path, std::string(motif_type_name(node.type)) + " takes exactly " +
                                     std::to_string(arity) + " unique object type" +
                                     (arity > 1 ? "s" : "") + ", got " +
                                     std::to_string(node.elements.size())});
        if (arity >= 2 && !node.elements.empty()) {
            const MotifNode& primary = node.elements[0];
            if (primary.is_object && primary.amount != 1)
                out.push_back({path, std::string(motif_type_name(node.type)) +
                                         " primary object amount must be 1"});
        }
        if (node.type == MotifType::bed_nightstand && node.elements.size() >= 2) {
            const MotifNode& sec = node.elements[1];
            if (sec.is_object && (sec.amount < 1 || sec.amount > 2))
                out.push_back({path, "bed_nightstand takes one or two nightstands"});
        }
        for (size_t i = 0; i < node.elements.size(); ++i)
            self(self, node.elements[i], path + "/elements[" + std::to_string(i) + "]");
    };
    walk(walk, root, "root");

    for (const auto& [name, count] : seen)
        if (count > 1)
            out.push_back({"root", "object '" + name + "' appears " + std::to_string(count) +
                                       " times; each object must appear exactly once"});
    return out;
}

Arrangement execute_motif(MotifType type, const std::vector<MotifInput>& inputs,
                          const MotifParams& params) {
    const int arity = motif_arity(type);
    if (static_cast<int>(inputs.size()) != arity)
        throw MotifError(std::string(motif_type_name(type)) + " takes " +
                         std::to_string(arity) + " inputs, got " +
                         std::to_string(inputs.size()));
    std::vector<Operand> ops;
    ops.reserve(inputs.size());
    for (const MotifInput& in : inputs) ops.push_back(make_operand(in));

    Arrangement result;
    std::vector<PlacedObject>& out = result.objects;
    switch (type) {
        case MotifType::stack:
            exec_stack(out, ops[0].unit, ops[0].amount, params.gap.value_or(0.0));
            break;
        case MotifType::pile:
            exec_pile(out, ops[0].unit, ops[0].amount, params.gap.value_or(0.0), params);
            break;
        case MotifType::row:
            exec_row(out, ops[0].unit, ops[0].amount,
                     params.gap.value_or(0.1 * ops[0].unit.dims.x));
            break;
        case MotifType::grid:
            exec_grid(out, ops[0].unit, ops[0].amount, params);
            break;
        case MotifType::pyramid:
            exec_pyramid(out, ops[0].unit, ops[0].amount, params.gap.value_or(0.0));
            break;
        case MotifType::left_of:
            exec_left_of(out, ops[0].unit, ops[1].unit, ops[1].amount,
                         default_small_gap(params));
            break;
        case MotifType::in_front_of:
            exec_in_front_of(out, ops[0].unit, ops[1].unit, ops[1].amount,
                             default_small_gap(params));
            break;
        case MotifType::on_top:
            exec_on_top(out, ops[0].unit, ops[1].unit, ops[1].amount,
                        params.gap.value_or(0.0));
            break;
        case MotifType::surround:
            exec_surround(out, ops[0].unit, ops[1].unit, ops[1].amount,
                          params.gap.value_or(0.05));
            break;
        case MotifType::rectangular_perimeter:
            exec_rectangular_perimeter(out, ops[0].unit, ops[1].unit, ops[1].amount,
                                       params.gap.value_or(0.05));
            break;
        case MotifType::bed_nightstand:
            exec_bed_nightstand(out, ops[0].unit, ops[1].unit, ops[1].amount,
                                params.gap.value_or(0.0));
            break;
        case MotifType::on_each_side:
            exec_on_each_side(out, ops[0].unit, ops[1].unit, ops[1].amount, ops[2].unit,
                              ops[2].amount, default_small_gap(params));
            break;
    }
    result.normalize();
    return result;
}

namespace {

Arrangement instantiate_node(const MotifNode& node,
                             const std::map<std::string, ObjectSpec>& assets,
                             uint64_t seed, bool tight, const std::string& path) {
    if (node.is_object) {
        auto it = assets.find(node.description);
        if (it == assets.end())
            throw MotifError(path + ": no asset bound for object '" + node.description + "'");
        ObjectSpec spec = it->second;
        spec.name = node.description;
        spec.amount = node.amount;
        // A bare multi-object leaf reads as a row of identical objects.
        MotifParams p;
        if (tight) p.gap = 0.0;
        Arrangement a = execute_motif(MotifType::row,
                                      {MotifInput::from_object(std::move(spec))}, p);
        a.provenance = node.description;
        return a;
    }
    std::vector<MotifInput> inputs;
    for (size_t i = 0; i < node.elements.size(); ++i) {
        const MotifNode& child = node.elements[i];
        const std::string child_path = path + "/elements[" + std::to_string(i) + "]";
        if (child.is_object) {
            auto it = assets.find(child.description);
            if (it == assets.end())
                throw MotifError(child_path + ": no asset bound for object '" +
                                 child.description + "'");
            ObjectSpec spec = it->second;
            spec.name = child.description;
            spec.amount = child.amount;
            inputs.push_back(MotifInput::from_object(std::move(spec)));
        } else {
            inputs.push_back(MotifInput::from_arrangement(
                instantiate_node(child, assets, seed, tight, child_path)));
        }
    }
    MotifParams params;
    params.seed = seed ^ fnv1a(path);
    if (tight) params.gap = 0.0;
    try {
        Arrangement a = execute_motif(node.type, inputs, params);
        a.provenance = node.description.empty() ? motif_type_name(node.type)
                                                : node.description;
        return a;
    } catch (const MotifError& e) {
        throw MotifError(path + ": " + e.what());
    }
}

}  // namespace

Arrangement instantiate_scene_motif(const MotifNode& root,
                                    const std::map<std::string, ObjectSpec>& assets,
                                    uint64_t seed) {
    std::vector<Violation> violations = validate_hierarchy(root);
    if (!violations.empty()) {
        std::string msg = "invalid motif hierarchy:";
        for (const Violation& v : violations) msg += "\n  " + v.path + ": " + v.message;
        throw MotifError(msg);
    }
    Arrangement a = instantiate_node(root, assets, seed, root.make_tight, "root");
    a.normalize();
    return a;
}

}  // namespace hsm
