#include "etfsim/geometry.hpp"

#include <algorithm>

namespace etfsim {

bool Sphere::contains(const Point3& p) const {
    return distance(center, p) <= radius + geo_eps(radius);
}

double distance(const Point3& p, const Point3& q) { return norm(q - p); }

std::vector<double> line_sphere_roots(const Segment& seg, const Sphere& s) {
    if (seg.a == seg.b) throw DegenerateSegmentError{};
    const Point3 d = seg.b - seg.a;
    const Point3 f = seg.a - s.center;
    const double qa = dot(d, d);
    const double qb = 2.0 * dot(f, d);
    const double qc = dot(f, f) - s.radius * s.radius;
    const double disc = qb * qb - 4.0 * qa * qc;

    // Tangency window: treat a near-zero discriminant as a single root.
    const double tang_tol = geo_eps(s.radius) * qa;
    if (disc < -tang_tol) return {};
    if (disc <= tang_tol) return {-qb / (2.0 * qa)};
    const double sq = std::sqrt(disc);
    double t0 = (-qb - sq) / (2.0 * qa);
    double t1 = (-qb + sq) / (2.0 * qa);
    if (t0 > t1) std::swap(t0, t1);
    return {t0, t1};
}

std::vector<SegmentSphereHit> segment_sphere_intersections(const Segment& seg, const Sphere& s) {
    const double eps = geo_eps(s.radius) / std::max(seg.length(), 1e-300);
    std::vector<SegmentSphereHit> hits;
    for (double t : line_sphere_roots(seg, s)) {
        if (t < -eps || t > 1.0 + eps) continue;
        t = std::clamp(t, 0.0, 1.0);
        hits.push_back({t, seg.at(t)});
    }
    return hits;
}

double point_line_distance(const Segment& seg, const Point3& p) {
    if (seg.a == seg.b) throw DegenerateSegmentError{};
    const double ab = seg.length();
    const double pa = distance(seg.a, p);
    const double pb = distance(p, seg.b);
    const double sp = (ab + pa + pb) / 2.0;
    const double radicand = sp * (sp - ab) * (sp - pa) * (sp - pb);
    if (radicand <= 0.0) return 0.0;  // collinear, modulo rounding
    return 2.0 * std::sqrt(radicand) / ab;
}

Point3 lens_center(const Sphere& s1, const Sphere& s2) {
    if (s1.center == s2.center) throw CoincidentCentersError{};
    const double d = distance(s1.center, s2.center);
    if (d >= s1.radius + s2.radius) throw NotOverlappingError{};
    const double lambda = (d * d + s1.radius * s1.radius - s2.radius * s2.radius) / (2.0 * d * d);
    return s1.center + lambda * (s2.center - s1.center);
}

}  // namespace etfsim
