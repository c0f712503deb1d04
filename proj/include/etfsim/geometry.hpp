#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "etfsim/errors.hpp"

// Pure 3D primitives shared by the whole library: points, spheres (referred
// transmission ranges), segments (straight-line trajectories), and the handful
// of intersection/distance operations the planner is built from.

namespace etfsim {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Point3 operator+(const Point3& p, const Point3& q) { return {p.x + q.x, p.y + q.y, p.z + q.z}; }
    friend Point3 operator-(const Point3& p, const Point3& q) { return {p.x - q.x, p.y - q.y, p.z - q.z}; }
    friend Point3 operator*(double s, const Point3& p) { return {s * p.x, s * p.y, s * p.z}; }
    friend bool operator==(const Point3& p, const Point3& q) { return p.x == q.x && p.y == q.y && p.z == q.z; }
};

inline double dot(const Point3& p, const Point3& q) { return p.x * q.x + p.y * q.y + p.z * q.z; }
inline Point3 cross(const Point3& p, const Point3& q) {
    return {p.y * q.z - p.z * q.y, p.z * q.x - p.x * q.z, p.x * q.y - p.y * q.x};
}
inline double norm(const Point3& p) { return std::sqrt(dot(p, p)); }
inline bool is_finite(const Point3& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

struct Sphere {
    Point3 center;
    double radius = 0.0;

    bool contains(const Point3& p) const;  // boundary-inclusive
};

struct Segment {
    Point3 a;
    Point3 b;

    double length() const { return norm(b - a); }
    Point3 at(double t) const { return a + t * (b - a); }
};

// Absolute tolerance used for on-surface checks, scaled with the radius.
inline double geo_eps(double radius) { return 1e-9 * std::max(1.0, radius); }

double distance(const Point3& p, const Point3& q);

// One surface crossing of a parametrized segment, t in [0, 1].
struct SegmentSphereHit {
    double t;
    Point3 point;
};

// Roots of |a + t(b-a) - center|^2 = r^2 over the whole line (unclamped),
// sorted ascending. Empty when the line misses the sphere; a tangency yields
// one root.
std::vector<double> line_sphere_roots(const Segment& seg, const Sphere& s);

// Surface crossings restricted to the segment (t clamped to [0, 1], crossings
// outside [0-eps, 1+eps] dropped). 0, 1, or 2 hits, sorted ascending by t.
std::vector<SegmentSphereHit> segment_sphere_intersections(const Segment& seg, const Sphere& s);

// Distance from p to the infinite line through the segment endpoints, computed
// with Heron's formula (height of the triangle over the base a-b). A slightly
// negative radicand from rounding on collinear input is clamped to 0.
double point_line_distance(const Segment& seg, const Point3& p);

// Center of the intersection circle of two overlapping spheres: the point on
// the center line that lies on the radical plane. Equal radii reduce to the
// midpoint of the centers.
Point3 lens_center(const Sphere& s1, const Sphere& s2);

}  // namespace etfsim
