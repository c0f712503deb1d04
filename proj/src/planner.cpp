#include "etfsim/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace etfsim {

namespace {

// Larger line root clamped to the segment end: the parameter at which the
// segment stops being covered by the sphere. Requires the sphere to contain
// the point at t_from.
double clamped_exit_t(const Segment& slt, const Sphere& ball) {
    const auto roots = line_sphere_roots(slt, ball);
    if (roots.empty()) throw NoIntersectionError{};
    return std::clamp(roots.back(), 0.0, 1.0);
}

void require(bool ok, const char* what) {
    if (!ok) throw PreconditionError(what);
}

}  // namespace

const char* kind_label(PlanKind kind) {
    switch (kind) {
        case PlanKind::SltShort: return "slt_short";
        case PlanKind::SltLong: return "slt_long";
        case PlanKind::TurnShort: return "turn_short";
        case PlanKind::ChainLong: return "chain_long";
    }
    return "unknown";
}

double TransitionPlan::length() const {
    double total = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i) total += distance(waypoints[i - 1], waypoints[i]);
    return total;
}

Point3 boundary_exit_point(const Sphere& f, const Segment& slt, const Point3& toward) {
    const auto hits = segment_sphere_intersections(slt, f);
    if (hits.empty()) throw NoIntersectionError{};
    const SegmentSphereHit* best = &hits.front();
    for (const auto& h : hits) {
        const double dh = distance(h.point, toward);
        const double db = distance(best->point, toward);
        if (dh < db || (dh == db && h.t > best->t)) best = &h;
    }
    return best->point;
}

// Checking-point walk shared by the long-distance check and the thorough
// variant of the short-distance check. Advances through the points where the
// SLT leaves successive covering forwarders' RTRs.
static LongCheckResult seamless_walk(const TransitionRequest& req, const MulticastTree& tree,
                                     const Fleet& fleet) {
    const Segment slt{req.origin, req.destination};
    const Sphere fb_ball = fleet.uav(req.fb).rtr();
    LongCheckResult res;

    const std::vector<int> covering = covering_forwarders(tree, fleet, slt);
    bool extra = false;
    for (int id : covering)
        if (id != req.fa && id != req.fb) extra = true;
    if (!extra) return res;  // only F_A and F_B cover the SLT: a gap is certain

    const double tie_tol = 1e-9 * std::max(1.0, slt.length());
    std::vector<int> cl;
    double t_i = clamped_exit_t(slt, fleet.uav(req.fa).rtr());
    int owner = req.fa;

    for (std::size_t iter = 0; iter <= covering.size(); ++iter) {
        const Point3 point = slt.at(t_i);
        res.trace.checking_points.push_back({point, owner});
        if (fb_ball.contains(point)) {
            res.seamless = true;
            res.trace.checked_list = cl;
            return res;
        }
        cl.push_back(owner);

        int best_id = -1;
        double best_t = -1.0;
        for (int cand : covering) {  // ascending ids: ties to B go to the smaller id
            if (std::find(cl.begin(), cl.end(), cand) != cl.end()) continue;
            const Sphere ball = fleet.uav(cand).rtr();
            if (!ball.contains(point)) continue;
            const double t_exit = clamped_exit_t(slt, ball);
            if (t_exit > best_t + tie_tol) {
                best_id = cand;
                best_t = t_exit;
            }
        }
        if (best_id < 0) {
            res.trace.checked_list = cl;
            return res;  // nothing covers the point where the SLT leaves coverage
        }
        t_i = best_t;
        owner = best_id;
    }
    throw Error("internal: checking-point walk exceeded the covering-forwarder bound");
}

ShortCheckResult check_short_seamless(const TransitionRequest& req, const MulticastTree& tree,
                                      const Fleet& fleet, const PlannerConfig& config) {
    const Uav& fa = fleet.uav(req.fa);
    const Uav& fb = fleet.uav(req.fb);
    if (!are_overlapping(fa, fb)) throw NotShortDistanceError{};
    require(!(req.origin == req.destination), "short check: origin equals destination");
    require(fa.rtr().contains(req.origin), "short check: origin outside F_A's RTR");
    require(fb.rtr().contains(req.destination), "short check: destination outside F_B's RTR");

    const Segment slt{req.origin, req.destination};
    ShortCheckResult res;

    // C: where the SLT stops being covered by F_A (B itself if it never does).
    // D: where F_B's coverage of the SLT begins (A itself if A is inside).
    const auto fa_roots = line_sphere_roots(slt, fa.rtr());
    const auto fb_roots = line_sphere_roots(slt, fb.rtr());
    const double t_c = std::clamp(fa_roots.back(), 0.0, 1.0);
    const double t_d = std::clamp(fb_roots.front(), 0.0, 1.0);
    res.c = slt.at(t_c);
    res.d = slt.at(t_d);

    const double d_ab = slt.length();
    const double d_ac = distance(req.origin, res.c);
    const double d_db = distance(res.d, req.destination);
    if (d_ab <= d_ac + d_db) {
        res.seamless = true;
        return res;
    }

    // A forwarder overlapping both F_A and F_B that covers C and D bridges the
    // uncovered middle.
    for (int id : tree.forwarders) {
        if (id == req.fa || id == req.fb) continue;
        const Uav& u = fleet.uav(id);
        if (!are_overlapping(u, fa) || !are_overlapping(u, fb)) continue;
        if (u.rtr().contains(res.c) && u.rtr().contains(res.d)) {
            res.seamless = true;
            res.witness = id;
            return res;
        }
    }

    if (config.thorough_short_check) {
        LongCheckResult walked = seamless_walk(req, tree, fleet);
        res.seamless = walked.seamless;
        res.walk_trace = std::move(walked.trace);
    }
    return res;
}

Point3 short_turning_location(const TransitionRequest& req, const Fleet& fleet,
                              TurningCenterMode mode) {
    const Uav& fa = fleet.uav(req.fa);
    const Uav& fb = fleet.uav(req.fb);
    if (!are_overlapping(fa, fb)) throw NotOverlappingError{};
    if (fb.rtr().contains(req.origin)) return req.origin;

    const Point3 o = mode == TurningCenterMode::Lens
                         ? lens_center(fa.rtr(), fb.rtr())
                         : 0.5 * (req.origin + req.destination);
    if (!fb.rtr().contains(o))
        throw NoCrossingError("turning center lies outside F_B's RTR");

    // A outside, O inside: exactly one surface crossing on the segment.
    const auto hits = segment_sphere_intersections(Segment{req.origin, o}, fb.rtr());
    if (hits.empty()) throw NoCrossingError{};
    return hits.front().point;
}

LongCheckResult check_long_seamless(const TransitionRequest& req, const MulticastTree& tree,
                                    const Fleet& fleet) {
    const Uav& fa = fleet.uav(req.fa);
    const Uav& fb = fleet.uav(req.fb);
    if (are_overlapping(fa, fb)) throw ShortDistanceRequestError{};
    require(!(req.origin == req.destination), "long check: origin equals destination");
    require(tree.is_forwarder(req.fa) && tree.is_forwarder(req.fb),
            "long check: endpoints not covered by forwarders");
    require(fa.rtr().contains(req.origin), "long check: origin outside F_A's RTR");
    require(fb.rtr().contains(req.destination), "long check: destination outside F_B's RTR");
    return seamless_walk(req, tree, fleet);
}

std::optional<std::vector<int>> dijkstra_chain(const OverlapGraph& graph, int fa, int fb) {
    if (fa == fb) return std::vector<int>{fa};

    // Paths compare by total weight, then lexicographically by id sequence,
    // which pins down a deterministic chain among equal-weight alternatives.
    using Entry = std::pair<double, std::vector<int>>;
    auto worse = [](const Entry& l, const Entry& r) {
        if (l.first != r.first) return l.first > r.first;
        return l.second > r.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);
    std::set<int> settled;
    queue.push({0.0, {fa}});
    while (!queue.empty()) {
        auto [dist, path] = queue.top();
        queue.pop();
        const int node = path.back();
        if (settled.count(node)) continue;
        settled.insert(node);
        if (node == fb) return path;
        auto it = graph.adjacency.find(node);
        if (it == graph.adjacency.end()) continue;
        for (auto& [next, w] : it->second) {
            if (settled.count(next)) continue;
            auto ext = path;
            ext.push_back(next);
            queue.push({dist + w, std::move(ext)});
        }
    }
    return std::nullopt;
}

// Aim point for the leg into the next RTR. Properly intersecting surfaces use
// the overlap-circle center; a next sphere nested inside the current one has
// no overlap circle, so aim at its center instead.
static Point3 chain_aim_point(const Sphere& cur, const Sphere& next, TurningCenterMode mode) {
    if (mode == TurningCenterMode::AbMidpoint) return 0.5 * (cur.center + next.center);
    const double d = distance(cur.center, next.center);
    if (d <= cur.radius - next.radius) return next.center;
    return lens_center(cur, next);
}

TransitionPlan form_long_trajectory(const TransitionRequest& req, const MulticastTree& tree,
                                    const Fleet& fleet, TurningCenterMode mode) {
    const Uav& fa = fleet.uav(req.fa);
    const Uav& fb = fleet.uav(req.fb);
    if (are_overlapping(fa, fb)) throw ShortDistanceRequestError{};

    std::vector<int> chain;
    if (auto path = same_path_chain(tree, req.fa, req.fb)) {
        chain = *path;
    } else if (auto path2 = dijkstra_chain(overlap_graph(tree, fleet), req.fa, req.fb)) {
        chain = *path2;
    } else {
        throw NoChainError{};
    }

    TransitionPlan plan;
    plan.kind = PlanKind::ChainLong;
    plan.seamless = true;
    plan.trace.chain = chain;

    Point3 t_j = req.origin;
    std::vector<Point3> turns;
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
        const Sphere cur = fleet.uav(chain[j]).rtr();
        const Sphere next = fleet.uav(chain[j + 1]).rtr();
        if (next.contains(t_j)) {
            turns.push_back(t_j);  // already handed over
            continue;
        }
        const Point3 o = chain_aim_point(cur, next, mode);
        if (!next.contains(o)) throw NoCrossingError("chain aim point outside the next RTR");
        const auto hits = segment_sphere_intersections(Segment{t_j, o}, next);
        if (hits.empty()) throw NoCrossingError{};
        t_j = hits.front().point;
        turns.push_back(t_j);
    }
    plan.trace.turning_locations = turns;

    plan.waypoints.push_back(req.origin);
    for (const Point3& t : turns)
        if (!(plan.waypoints.back() == t)) plan.waypoints.push_back(t);
    if (!(plan.waypoints.back() == req.destination)) plan.waypoints.push_back(req.destination);
    return plan;
}

TransitionPlan plan_transition(const TransitionRequest& req, const MulticastTree& tree,
                               const Fleet& fleet, const PlannerConfig& config) {
    const Uav& fa = fleet.uav(req.fa);
    const Uav& fb = fleet.uav(req.fb);
    require(tree.is_forwarder(req.fa), "plan: F_A is not a forwarder");
    require(tree.is_forwarder(req.fb), "plan: F_B is not a forwarder");
    require(fa.rtr().contains(req.origin), "plan: origin outside F_A's RTR");
    require(fb.rtr().contains(req.destination), "plan: destination outside F_B's RTR");

    if (req.origin == req.destination) {
        TransitionPlan stay;
        stay.kind = PlanKind::SltShort;
        stay.seamless = true;
        stay.waypoints = {req.origin};
        return stay;
    }

    TransitionPlan plan;
    if (are_overlapping(fa, fb)) {
        ShortCheckResult check = check_short_seamless(req, tree, fleet, config);
        if (check.seamless) {
            plan.kind = PlanKind::SltShort;
            plan.seamless = true;
            plan.waypoints = {req.origin, req.destination};
            plan.trace = std::move(check.walk_trace);
            if (check.witness) plan.trace.checked_list = {*check.witness};
            return plan;
        }
        const Point3 t = short_turning_location(req, fleet, config.turning_center);
        plan.kind = PlanKind::TurnShort;
        plan.seamless = true;
        plan.trace.turning_locations = {t};
        plan.waypoints = {req.origin};
        if (!(plan.waypoints.back() == t)) plan.waypoints.push_back(t);
        if (!(plan.waypoints.back() == req.destination)) plan.waypoints.push_back(req.destination);
        return plan;
    }

    const LongCheckResult check = check_long_seamless(req, tree, fleet);
    if (check.seamless) {
        plan.kind = PlanKind::SltLong;
        plan.seamless = true;
        plan.waypoints = {req.origin, req.destination};
        plan.trace = check.trace;
        return plan;
    }
    plan = form_long_trajectory(req, tree, fleet, config.turning_center);
    plan.trace.checking_points = check.trace.checking_points;
    plan.trace.checked_list = check.trace.checked_list;
    return plan;
}

bool oracle_is_seamless(std::span<const Point3> waypoints, std::span<const Sphere> spheres,
                        double step) {
    if (!(step > 0.0)) throw PreconditionError("oracle: step must be positive");
    auto covered = [&](const Point3& p) {
        for (const Sphere& s : spheres)
            if (s.contains(p)) return true;
        return false;
    };
    if (waypoints.size() == 1) return covered(waypoints.front());
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        const Point3& a = waypoints[i - 1];
        const Point3& b = waypoints[i];
        const double len = distance(a, b);
        const std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / step)));
        for (std::size_t k = 0; k <= n; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(n);
            if (!covered(a + t * (b - a))) return false;
        }
    }
    return true;
}

}  // namespace etfsim
