#include "etfsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace etfsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string transition_tag(std::size_t k, const TransitionSpec& spec) {
    std::ostringstream os;
    os << "transition " << k << " (mobile " << spec.mobile_id << ")";
    return os.str();
}

// Per-mobile flight timeline under the scenario policy.
struct MobilePhase {
    double start = 0.0;
    double arrival = 0.0;
    double t_disconnect = kInf;  // Lcrt: when the flight leaves the parent's RTR
    int parent_before = -1;
    int parent_after = -1;
    TransitionPlan plan;
    double speed = 0.0;
    std::set<int> anchors;  // Etf serving set while in flight
};

struct MobileTimeline {
    Point3 initial_position;
    int initial_parent = -1;
    std::vector<MobilePhase> phases;  // ordered by start time

    Point3 position(double t) const {
        Point3 pos = initial_position;
        for (const auto& ph : phases) {
            if (t < ph.start) break;
            pos = mobile_position(ph.plan, ph.speed, ph.start, t);
        }
        return pos;
    }
};

std::set<int> etf_anchors(const TransitionRequest& req, const TransitionPlan& plan) {
    std::set<int> anchors{req.fa, req.fb};
    anchors.insert(plan.trace.chain.begin(), plan.trace.chain.end());
    anchors.insert(plan.trace.checked_list.begin(), plan.trace.checked_list.end());
    for (const auto& cp : plan.trace.checking_points) anchors.insert(cp.owner);
    return anchors;
}

}  // namespace

Point3 mobile_position(const TransitionPlan& plan, double speed, double start, double t) {
    if (!(speed > 0.0)) throw PreconditionError("mobile_position: speed must be positive");
    if (plan.waypoints.empty()) throw PreconditionError("mobile_position: empty plan");
    if (t <= start) return plan.waypoints.front();
    double remaining = (t - start) * speed;
    for (std::size_t i = 1; i < plan.waypoints.size(); ++i) {
        const double leg = distance(plan.waypoints[i - 1], plan.waypoints[i]);
        if (remaining < leg) {
            const double f = remaining / leg;
            return plan.waypoints[i - 1] + f * (plan.waypoints[i] - plan.waypoints[i - 1]);
        }
        remaining -= leg;
    }
    return plan.waypoints.back();
}

std::vector<TransitionRequest> derive_requests(const Scenario& scenario, const MulticastTree& tree) {
    const Fleet& fleet = scenario.fleet;
    std::vector<TransitionRequest> requests;
    std::map<int, int> current_parent;    // mobile -> serving forwarder
    std::map<int, Point3> current_position;
    std::map<int, double> last_start;

    for (std::size_t k = 0; k < scenario.transitions.size(); ++k) {
        const TransitionSpec& spec = scenario.transitions[k];
        const std::string tag = transition_tag(k, spec);
        if (!fleet.has(spec.mobile_id)) throw InvalidScenarioError(tag + ": unknown mobile_id");
        const Uav& mobile = fleet.uav(spec.mobile_id);
        if (mobile.role != Role::Receiver)
            throw InvalidScenarioError(tag + ": mobile must be a receiver");
        if (tree.is_forwarder(spec.mobile_id))
            throw InvalidScenarioError(tag + ": mobile was promoted to forwarder by the tree build");
        if (!(spec.speed > 0.0)) throw InvalidScenarioError(tag + ": speed must be positive");
        if (spec.start_time < 0.0) throw InvalidScenarioError(tag + ": start_time must be >= 0");
        if (last_start.count(spec.mobile_id) && spec.start_time <= last_start[spec.mobile_id])
            throw InvalidScenarioError(tag + ": transitions of one mobile must be listed in time order");
        last_start[spec.mobile_id] = spec.start_time;

        if (!current_parent.count(spec.mobile_id)) {
            current_parent[spec.mobile_id] = tree.parent.at(spec.mobile_id);
            current_position[spec.mobile_id] = mobile.position;
        }
        if (distance(spec.origin, current_position[spec.mobile_id]) > 1e-9)
            throw InvalidScenarioError(tag + ": origin does not match the mobile's position");

        const int fa = current_parent[spec.mobile_id];
        if (!fleet.uav(fa).rtr().contains(spec.origin))
            throw InvalidScenarioError(tag + ": origin outside serving forwarder's RTR");

        int fb = -1;
        double best = kInf;
        for (int f : tree.forwarders) {
            const Uav& u = fleet.uav(f);
            if (!u.rtr().contains(spec.destination)) continue;
            const double d = distance(u.position, spec.destination);
            if (d < best) {
                best = d;
                fb = f;
            }
        }
        if (fb < 0) throw InvalidScenarioError(tag + ": destination not covered by any forwarder");

        requests.push_back({spec.mobile_id, spec.origin, spec.destination, fa, fb});
        current_parent[spec.mobile_id] = fb;
        current_position[spec.mobile_id] = spec.destination;
    }
    return requests;
}

std::vector<PlannedTransition> plan_transitions(const Scenario& scenario, const MulticastTree& tree) {
    const auto requests = derive_requests(scenario, tree);
    std::vector<PlannedTransition> out;
    for (std::size_t k = 0; k < scenario.transitions.size(); ++k) {
        const TransitionSpec& spec = scenario.transitions[k];
        PlannedTransition pt;
        pt.spec = spec;
        pt.request = requests[k];
        if (scenario.policy == Policy::Etf) {
            try {
                pt.plan = plan_transition(pt.request, tree, scenario.fleet, scenario.planner);
            } catch (const NoChainError&) {
                throw InvalidScenarioError(transition_tag(k, spec) +
                                           ": no seamless trajectory exists through forwarder RTRs");
            }
        } else {
            pt.plan.kind = are_overlapping(scenario.fleet.uav(pt.request.fa),
                                           scenario.fleet.uav(pt.request.fb))
                               ? PlanKind::SltShort
                               : PlanKind::SltLong;
            pt.plan.seamless = false;  // no handover support; gaps simply drop traffic
            pt.plan.waypoints = {spec.origin};
            if (!(spec.destination == spec.origin)) pt.plan.waypoints.push_back(spec.destination);
        }
        pt.arrival_time = spec.start_time + pt.plan.length() / spec.speed;
        out.push_back(std::move(pt));
    }
    return out;
}

SimRecords simulate(const Scenario& scenario) {
    const Fleet& fleet = scenario.fleet;
    if (!(scenario.sim_duration > 0.0)) throw InvalidScenarioError("sim_duration must be positive");
    if (!(scenario.traffic_rate > 0.0) || !(scenario.packet_size > 0.0) ||
        !(scenario.channel_rate > 0.0))
        throw InvalidScenarioError("traffic parameters must be positive");
    if (scenario.traffic_rate > scenario.channel_rate)
        throw InvalidScenarioError("traffic_rate exceeds channel_rate");

    const MulticastTree tree = build_lcrt_tree(fleet);
    const auto planned = plan_transitions(scenario, tree);

    SimRecords rec;
    for (const Uav& u : fleet.uavs())
        if (u.role == Role::Receiver) rec.receiver_ids.push_back(u.id);
    std::sort(rec.receiver_ids.begin(), rec.receiver_ids.end());

    // Tree-build control exchange: one coordinate record per forwarder. This
    // is the only extra control traffic Etf injects; Lcrt has none.
    rec.aco_bits = scenario.policy == Policy::Etf
                       ? 8.0 * scenario.coordinate_record_bytes *
                             static_cast<double>(tree.forwarders.size())
                       : 0.0;

    // Assemble per-mobile timelines.
    std::map<int, MobileTimeline> timelines;
    for (const auto& pt : planned) {
        auto [it, fresh] = timelines.try_emplace(pt.spec.mobile_id);
        MobileTimeline& tl = it->second;
        if (fresh) {
            tl.initial_position = fleet.uav(pt.spec.mobile_id).position;
            tl.initial_parent = tree.parent.at(pt.spec.mobile_id);
        }
        if (!tl.phases.empty() && pt.spec.start_time < tl.phases.back().arrival)
            throw InvalidScenarioError("mobile " + std::to_string(pt.spec.mobile_id) +
                                       ": transitions overlap in time");
        MobilePhase ph;
        ph.start = pt.spec.start_time;
        ph.arrival = pt.arrival_time;
        ph.parent_before = pt.request.fa;
        ph.parent_after = pt.request.fb;
        ph.plan = pt.plan;
        ph.speed = pt.spec.speed;
        if (scenario.policy == Policy::Etf) {
            ph.anchors = etf_anchors(pt.request, pt.plan);
        } else {
            // When the straight flight leaves the parent's RTR for good.
            const Segment slt{pt.spec.origin, pt.spec.destination};
            const Sphere parent_ball = fleet.uav(pt.request.fa).rtr();
            ph.t_disconnect = kInf;
            if (!(slt.a == slt.b)) {
                const auto roots = line_sphere_roots(slt, parent_ball);
                if (!roots.empty() && roots.back() < 1.0)
                    ph.t_disconnect = ph.start + roots.back() * slt.length() / ph.speed;
            }
        }
        tl.phases.push_back(std::move(ph));
    }
    for (auto& [id, tl] : timelines)
        rec.mobile_ids.push_back(id);

    // Forwarders ordered by (level, id): scanning in this order makes the
    // first feasible server the one with the least delay.
    std::vector<int> fwd_by_depth(tree.forwarders.begin(), tree.forwarders.end());
    std::sort(fwd_by_depth.begin(), fwd_by_depth.end(), [&](int a, int b) {
        if (tree.level(a) != tree.level(b)) return tree.level(a) < tree.level(b);
        return a < b;
    });

    const double tau = scenario.packet_size / scenario.channel_rate;  // per-hop serialization
    const double emit_dt = scenario.packet_size / scenario.traffic_rate;
    const auto n_packets =
        static_cast<std::int64_t>(std::floor(scenario.sim_duration / emit_dt + 1e-9));

    // Serving rule for one candidate forwarder at one arrival instant.
    auto serves = [&](const MobileTimeline& tl, int f, double t_arr) -> bool {
        // Locate the phase state at t_arr.
        const MobilePhase* active = nullptr;
        for (const auto& ph : tl.phases) {
            if (t_arr < ph.start) break;
            active = &ph;
        }
        const Point3 pos = tl.position(t_arr);
        if (!fleet.uav(f).rtr().contains(pos)) return false;
        if (scenario.policy == Policy::Etf) {
            if (active && t_arr <= active->arrival) return active->anchors.count(f) != 0;
            return f == (active ? active->parent_after : tl.initial_parent);
        }
        // Lcrt: only the original parent serves until the flight has left its
        // RTR; after that, any forwarder reached on the destination side.
        if (!active) return f == tl.initial_parent;
        if (t_arr <= active->arrival && t_arr < active->t_disconnect)
            return f == active->parent_before;
        if (t_arr <= active->arrival) return true;
        return f == active->parent_after;
    };

    rec.packets.reserve(static_cast<std::size_t>(n_packets));
    for (std::int64_t seq = 0; seq < n_packets; ++seq) {
        PacketRecord pkt;
        pkt.seq = seq;
        pkt.sent_at = static_cast<double>(seq) * emit_dt;
        pkt.delivered_at.resize(rec.receiver_ids.size());
        for (std::size_t ri = 0; ri < rec.receiver_ids.size(); ++ri) {
            const int rid = rec.receiver_ids[ri];
            auto tl_it = timelines.find(rid);
            if (tl_it == timelines.end()) {
                // Static receiver: always inside its parent's RTR.
                pkt.delivered_at[ri] = pkt.sent_at + tree.level(rid) * tau;
                continue;
            }
            for (int f : fwd_by_depth) {
                const double t_arr = pkt.sent_at + (tree.level(f) + 1) * tau;
                if (serves(tl_it->second, f, t_arr)) {
                    pkt.delivered_at[ri] = t_arr;
                    break;
                }
            }
        }
        rec.packets.push_back(std::move(pkt));
    }

    // Energy charged to each transition UAV: flight along its trajectory plus
    // its share of the control exchange transmitted at channel rate.
    const double n_t = static_cast<double>(rec.mobile_ids.size());
    std::map<int, double> flight;
    for (const auto& pt : planned)
        flight[pt.spec.mobile_id] += scenario.flight_power * pt.plan.length() / pt.spec.speed;
    for (int id : rec.mobile_ids) {
        const double ctrl = n_t > 0 ? (rec.aco_bits / n_t) / scenario.channel_rate * scenario.flight_power
                                    : 0.0;
        rec.transition_energy_j[id] = flight[id] + ctrl;
    }
    return rec;
}

MetricsReport compute_metrics(const SimRecords& records, const Scenario& scenario) {
    MetricsReport report;
    report.aco_bits = records.aco_bits;

    const std::set<int> mobile_set(records.mobile_ids.begin(), records.mobile_ids.end());
    for (std::size_t ri = 0; ri < records.receiver_ids.size(); ++ri) {
        ReceiverStats st;
        st.id = records.receiver_ids[ri];
        st.mobile = mobile_set.count(st.id) != 0;
        double delay_sum = 0.0;
        for (const auto& pkt : records.packets) {
            if (!pkt.delivered_at[ri]) continue;
            ++st.delivered_packets;
            delay_sum += *pkt.delivered_at[ri] - pkt.sent_at;
        }
        st.delivered_bits = static_cast<std::int64_t>(st.delivered_packets * scenario.packet_size);
        st.mean_delay_s = st.delivered_packets > 0 ? delay_sum / st.delivered_packets : 0.0;
        st.throughput_bps = st.delivered_bits / scenario.sim_duration;
        report.receivers.push_back(st);
    }

    double amd = 0.0, amt = 0.0, amod = 0.0, amot = 0.0;
    int n = 0, n_delivering = 0, n_m = 0, n_m_delivering = 0;
    for (const auto& st : report.receivers) {
        ++n;
        amt += st.throughput_bps;
        if (st.delivered_packets > 0) {
            ++n_delivering;
            amd += st.mean_delay_s;
        }
        if (st.mobile) {
            ++n_m;
            amot += st.throughput_bps;
            if (st.delivered_packets > 0) {
                ++n_m_delivering;
                amod += st.mean_delay_s;
            }
        }
    }
    report.amd_s = n_delivering > 0 ? amd / n_delivering : 0.0;
    report.amt_bps = n > 0 ? amt / n : 0.0;
    report.amod_s = n_m_delivering > 0 ? amod / n_m_delivering : 0.0;
    report.amot_bps = n_m > 0 ? amot / n_m : 0.0;

    double aeb_sum = 0.0;
    for (int id : records.mobile_ids) {
        MobileEnergyStats ms;
        ms.id = id;
        ms.energy_j = records.transition_energy_j.at(id);
        for (std::size_t ri = 0; ri < records.receiver_ids.size(); ++ri)
            if (records.receiver_ids[ri] == id)
                ms.received_bits = report.receivers[ri].delivered_bits;
        if (ms.received_bits > 0) {
            ms.aeb_j_per_bit = ms.energy_j / static_cast<double>(ms.received_bits);
        } else {
            ms.aeb_j_per_bit = kInf;
            ms.aeb_infinite = true;
            report.aaeb_infinite = true;
        }
        aeb_sum += ms.aeb_j_per_bit;
        report.mobiles.push_back(ms);
    }
    report.aaeb_j_per_bit = records.mobile_ids.empty()
                                ? 0.0
                                : aeb_sum / static_cast<double>(records.mobile_ids.size());
    return report;
}

MetricsReport run(const Scenario& scenario) { return compute_metrics(simulate(scenario), scenario); }

}  // namespace etfsim
