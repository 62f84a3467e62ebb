#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace hsm {

// Right-handed coordinates, y up, units in meters.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        double n = norm();
        if (n == 0.0) throw std::domain_error("cannot normalize zero vector");
        return *this / n;
    }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Point in the xz ground plane.
struct Vec2 {
    double x = 0.0;
    double z = 0.0;

    Vec2() = default;
    Vec2(double x_, double z_) : x(x_), z(z_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, z + o.z}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, z - o.z}; }
    Vec2 operator*(double s) const { return {x * s, z * s}; }
    double dot(const Vec2& o) const { return x * o.x + z * o.z; }
    // z-component of the 3-D cross product of (this, o) lifted to the plane
    double cross(const Vec2& o) const { return x * o.z - z * o.x; }
    double norm() const { return std::sqrt(x * x + z * z); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

// Normalizes an angle in degrees to [0, 360).
inline double normalize_yaw(double deg) {
    double y = std::fmod(deg, 360.0);
    if (y < 0.0) y += 360.0;
    if (y == -0.0) y = 0.0;
    // fmod can return 360 - epsilon-ish values that collapse to 360 on print
    if (y >= 360.0) y -= 360.0;
    return y;
}

// Object anchor = bottom-center of the axis-aligned bounds; yaw in degrees,
// counterclockwise about +y, yaw 0 faces +z.
struct Pose {
    Vec3 position;
    double yaw = 0.0;

    Pose() = default;
    Pose(const Vec3& p, double yaw_deg) : position(p), yaw(normalize_yaw(yaw_deg)) {}

    // Unit facing vector in the xz plane for this yaw.
    Vec2 facing() const {
        double r = deg_to_rad(yaw);
        return {std::sin(r), std::cos(r)};
    }
};

// Rotates v by yaw degrees counterclockwise about +y.
inline Vec2 rotate_yaw(const Vec2& v, double yaw_deg) {
    double r = deg_to_rad(yaw_deg);
    double c = std::cos(r), s = std::sin(r);
    return {v.x * c + v.z * s, -v.x * s + v.z * c};
}

inline Vec3 rotate_yaw(const Vec3& v, double yaw_deg) {
    Vec2 xz = rotate_yaw(Vec2{v.x, v.z}, yaw_deg);
    return {xz.x, v.y, xz.z};
}

struct Aabb {
    Vec3 min{1e300, 1e300, 1e300};
    Vec3 max{-1e300, -1e300, -1e300};

    bool empty() const { return min.x > max.x; }
    void expand(const Vec3& p) {
        min.x = std::min(min.x, p.x); min.y = std::min(min.y, p.y); min.z = std::min(min.z, p.z);
        max.x = std::max(max.x, p.x); max.y = std::max(max.y, p.y); max.z = std::max(max.z, p.z);
    }
    void expand(const Aabb& b) {
        if (b.empty()) return;
        expand(b.min);
        expand(b.max);
    }
    Vec3 extents() const { return max - min; }
    Vec3 center() const { return (min + max) * 0.5; }
};

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateGeometryError : public Error {
public:
    explicit DegenerateGeometryError(const std::string& what) : Error(what) {}
};

class InvalidPolygonError : public Error {
public:
    explicit InvalidPolygonError(const std::string& what) : Error(what) {}
};

class OutsideRegionError : public Error {
public:
    explicit OutsideRegionError(const std::string& what) : Error(what) {}
};

}  // namespace hsm
