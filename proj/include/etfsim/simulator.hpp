#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "etfsim/planner.hpp"

// Deterministic simulation of multicast data flow over the LCRT tree while
// mobile UAVs execute transitions. Links are abstract single-channel and
// contention-free: each hop adds pure serialization delay, and a receiver gets
// a packet iff a serving forwarder's RTR covers it at the arrival instant.
// Policies: Etf (planned trajectory, served by any covering chain/anchor
// forwarder) and Lcrt (straight-line flight, served only by the original
// parent until re-entering some forwarder's RTR on the destination side).

namespace etfsim {

enum class Policy { Lcrt, Etf };

struct TransitionSpec {
    int mobile_id = -1;
    Point3 origin;
    Point3 destination;
    double speed = 0.0;       // m/s
    double start_time = 0.0;  // s
};

struct Scenario {
    std::string id = "scenario";
    Fleet fleet;
    double traffic_rate = 1e6;     // bits/s at the source
    double packet_size = 8192.0;   // bits
    double channel_rate = 54e6;    // bits/s
    std::vector<TransitionSpec> transitions;
    Policy policy = Policy::Etf;
    double sim_duration = 200.0;   // s
    double flight_power = 174.21;  // W
    double coordinate_record_bytes = 18.0;  // per forwarder in the tree-build exchange
    PlannerConfig planner;
    std::uint64_t rng_seed = 0;
};

// One multicast packet and its delivery times, aligned with
// SimRecords::receiver_ids (absent entry = dropped).
struct PacketRecord {
    std::int64_t seq = 0;
    double sent_at = 0.0;
    std::vector<std::optional<double>> delivered_at;
};

struct PlannedTransition {
    TransitionSpec spec;
    TransitionRequest request;
    TransitionPlan plan;
    double arrival_time = 0.0;
};

struct SimRecords {
    std::vector<int> receiver_ids;  // ascending
    std::vector<int> mobile_ids;    // receivers with transitions, ascending
    std::vector<PacketRecord> packets;
    std::map<int, double> transition_energy_j;  // per mobile
    double aco_bits = 0.0;
};

struct ReceiverStats {
    int id = -1;
    bool mobile = false;
    std::int64_t delivered_packets = 0;
    std::int64_t delivered_bits = 0;
    double mean_delay_s = 0.0;
    double throughput_bps = 0.0;
};

struct MobileEnergyStats {
    int id = -1;
    double energy_j = 0.0;
    std::int64_t received_bits = 0;
    double aeb_j_per_bit = 0.0;  // +inf when no bits were received
    bool aeb_infinite = false;
};

struct MetricsReport {
    double amd_s = 0.0;
    double amt_bps = 0.0;
    double amod_s = 0.0;
    double amot_bps = 0.0;
    double aaeb_j_per_bit = 0.0;
    bool aaeb_infinite = false;
    double aco_bits = 0.0;
    std::vector<ReceiverStats> receivers;
    std::vector<MobileEnergyStats> mobiles;
};

// Position along the plan's polyline at constant speed, clamped to the first
// waypoint before `start` and to the last after arrival.
Point3 mobile_position(const TransitionPlan& plan, double speed, double start, double t);

// Resolve each transition into a request: F_A is the mobile's serving
// forwarder at departure (initially its tree parent, afterwards the previous
// destination forwarder) and F_B the forwarder covering the destination that
// is closest to it, ties by smaller id. Throws InvalidScenarioError with a
// diagnostic naming the transition.
std::vector<TransitionRequest> derive_requests(const Scenario& scenario, const MulticastTree& tree);

// Requests plus the trajectory each mobile will actually fly under the
// scenario policy (planned under Etf, the straight SLT under Lcrt).
std::vector<PlannedTransition> plan_transitions(const Scenario& scenario, const MulticastTree& tree);

SimRecords simulate(const Scenario& scenario);
MetricsReport compute_metrics(const SimRecords& records, const Scenario& scenario);
MetricsReport run(const Scenario& scenario);

}  // namespace etfsim
