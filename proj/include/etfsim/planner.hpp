#pragma once

#include <optional>
#include <span>
#include <vector>

#include "etfsim/topology.hpp"

// The ETF planner: the short-distance seamlessness condition and turning
// location, the long-distance checking-point walk, long-distance chain
// formation over the forwarder overlap graph, the top-level dispatch, and the
// independent sampling oracle used to verify all of it.

namespace etfsim {

struct TransitionRequest {
    int mobile_id = -1;
    Point3 origin;       // A
    Point3 destination;  // B
    int fa = -1;         // forwarder covering A
    int fb = -1;         // forwarder covering B
};

enum class PlanKind { SltShort, SltLong, TurnShort, ChainLong };

const char* kind_label(PlanKind kind);  // "slt_short", "slt_long", "turn_short", "chain_long"

struct CheckingPoint {
    Point3 point;
    int owner;  // forwarder whose RTR the SLT leaves at this point
};

struct CheckTrace {
    std::vector<CheckingPoint> checking_points;
    std::vector<int> checked_list;        // CL, in insertion order, no duplicates
    std::vector<Point3> turning_locations;
    std::vector<int> chain;
};

struct TransitionPlan {
    std::vector<Point3> waypoints;  // first = A, last = B; consecutive points distinct
    PlanKind kind = PlanKind::SltShort;
    bool seamless = false;
    CheckTrace trace;

    double length() const;
};

enum class TurningCenterMode { Lens, AbMidpoint };

struct PlannerConfig {
    TurningCenterMode turning_center = TurningCenterMode::Lens;
    double oracle_step = 0.01;         // meters
    bool thorough_short_check = false; // widen the short check to the full walk
};

// Among the segment's surface crossings, the one closer to `toward`; ties go
// to the larger t. Throws NoIntersectionError when the segment never crosses
// the surface.
Point3 boundary_exit_point(const Sphere& f, const Segment& slt, const Point3& toward);

struct ShortCheckResult {
    bool seamless = false;
    Point3 c;  // where the SLT leaves F_A's RTR (clamped to B if it never does)
    Point3 d;  // where the SLT first meets F_B's RTR (clamped to A)
    std::optional<int> witness;  // forwarder covering both c and d, if used
    CheckTrace walk_trace;       // filled when the thorough fallback walk ran
};

// Short-distance seamlessness: the SLT is seamless when F_A's and F_B's
// coverage of it meet (d(AB) <= d(AC) + d(DB)), or when a forwarder
// overlapping both F_A and F_B covers C and D. With thorough_short_check the
// failing case falls back to the long-distance walk over all covering
// forwarders.
ShortCheckResult check_short_seamless(const TransitionRequest& req, const MulticastTree& tree,
                                      const Fleet& fleet, const PlannerConfig& config = {});

// Turning location for a failed short-distance SLT: the crossing of the
// segment A -> O with F_B's surface, where O is the overlap center (or the
// A/B midpoint in AbMidpoint mode). Returns A itself when A is already inside
// F_B's RTR.
Point3 short_turning_location(const TransitionRequest& req, const Fleet& fleet,
                              TurningCenterMode mode = TurningCenterMode::Lens);

struct LongCheckResult {
    bool seamless = false;
    CheckTrace trace;
};

// Long-distance seamlessness walk: advance through the points where the SLT
// leaves successive covering forwarders' RTRs, always taking the candidate
// crossing closest to B, until a checking point falls inside F_B's RTR
// (seamless) or no unchecked covering forwarder covers it (not seamless).
LongCheckResult check_long_seamless(const TransitionRequest& req, const MulticastTree& tree,
                                    const Fleet& fleet);

// Shortest chain of pairwise-overlapping forwarders from fa to fb: the tree
// path when one end is the other's ancestor, otherwise Dijkstra over the
// overlap graph with Euclidean weights (ties by lexicographically smallest id
// sequence). Absent when fa and fb sit in different components.
std::optional<std::vector<int>> dijkstra_chain(const OverlapGraph& graph, int fa, int fb);

// Seamless trajectory through the chain's combined coverage: walk the chain,
// aiming each leg at the overlap center of the next pair and turning on the
// next RTR's surface. Throws NoChainError when no chain exists.
TransitionPlan form_long_trajectory(const TransitionRequest& req, const MulticastTree& tree,
                                    const Fleet& fleet,
                                    TurningCenterMode mode = TurningCenterMode::Lens);

// Top-level dispatch: short-distance requests get the SLT or a turning-point
// plan; long-distance requests get the SLT or a chain plan. A == B yields the
// trivial stay plan.
TransitionPlan plan_transition(const TransitionRequest& req, const MulticastTree& tree,
                               const Fleet& fleet, const PlannerConfig& config = {});

// Independent verification oracle: samples every polyline leg at arc-length
// intervals <= step (endpoints included) and reports whether each sample lies
// inside at least one sphere, boundary-inclusive.
bool oracle_is_seamless(std::span<const Point3> waypoints, std::span<const Sphere> spheres,
                        double step);

}  // namespace etfsim
