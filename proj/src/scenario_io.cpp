#include "etfsim/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace etfsim {

using nlohmann::json;

namespace {

Point3 parse_point(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number())
        throw ValidationError(field + ": expected [x, y, z]");
    Point3 p{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    if (!is_finite(p)) throw ValidationError(field + ": coordinates must be finite");
    return p;
}

json point_to_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

Role parse_role(const std::string& s, const std::string& field) {
    if (s == "source") return Role::Source;
    if (s == "receiver") return Role::Receiver;
    if (s == "idle") return Role::Idle;
    throw ValidationError(field + ": role must be source, receiver, or idle");
}

double get_number(const json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number()) throw ValidationError(field + ": expected a number");
    return j[field].get<double>();
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("scenario: top level must be an object");
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != 1)
        throw ValidationError("schema_version: must be the integer 1");
    if (!j.contains("fleet") || !j["fleet"].is_object())
        throw ValidationError("fleet: required object");

    const json& jf = j["fleet"];
    if (!jf.contains("source_id") || !jf["source_id"].is_number_integer())
        throw ValidationError("fleet.source_id: required integer");
    if (!jf.contains("uavs") || !jf["uavs"].is_array() || jf["uavs"].empty())
        throw ValidationError("fleet.uavs: required non-empty array");

    std::vector<Uav> uavs;
    for (const json& ju : jf["uavs"]) {
        Uav u;
        if (!ju.contains("id") || !ju["id"].is_number_integer())
            throw ValidationError("fleet.uavs[].id: required integer");
        u.id = ju["id"].get<int>();
        u.position = parse_point(ju.value("position", json()), "fleet.uavs[].position");
        u.rtr_radius = get_number(ju, "rtr_radius_m", 0.0);
        if (!(u.rtr_radius > 0.0) || !std::isfinite(u.rtr_radius))
            throw ValidationError("fleet.uavs[].rtr_radius_m: must be positive and finite");
        if (!ju.contains("role") || !ju["role"].is_string())
            throw ValidationError("fleet.uavs[].role: required string");
        u.role = parse_role(ju["role"].get<std::string>(), "fleet.uavs[].role");
        uavs.push_back(u);
    }

    Scenario s{.fleet = Fleet(std::move(uavs), jf["source_id"].get<int>())};
    s.id = j.value("id", std::string("scenario"));
    s.rng_seed = j.contains("rng_seed") ? j["rng_seed"].get<std::uint64_t>() : 0;
    s.sim_duration = get_number(j, "sim_duration_s", 200.0);
    if (!(s.sim_duration > 0.0)) throw ValidationError("sim_duration_s: must be positive");

    const std::string policy = j.value("policy", std::string("etf"));
    if (policy == "etf")
        s.policy = Policy::Etf;
    else if (policy == "lcrt")
        s.policy = Policy::Lcrt;
    else
        throw ValidationError("policy: must be \"etf\" or \"lcrt\"");

    const json jt = j.value("traffic", json::object());
    s.traffic_rate = get_number(jt, "rate_bps", 1e6);
    s.packet_size = get_number(jt, "packet_size_bits", 8192.0);
    s.channel_rate = get_number(jt, "channel_rate_bps", 54e6);
    if (!(s.traffic_rate > 0.0)) throw ValidationError("traffic.rate_bps: must be positive");
    if (!(s.packet_size > 0.0)) throw ValidationError("traffic.packet_size_bits: must be positive");
    if (!(s.channel_rate > 0.0)) throw ValidationError("traffic.channel_rate_bps: must be positive");
    if (s.traffic_rate > s.channel_rate)
        throw ValidationError("traffic.rate_bps: must not exceed channel_rate_bps");

    const json je = j.value("energy", json::object());
    s.flight_power = get_number(je, "flight_power_w", 174.21);
    s.coordinate_record_bytes = get_number(je, "coordinate_record_bytes", 18.0);
    if (!(s.flight_power > 0.0)) throw ValidationError("energy.flight_power_w: must be positive");
    if (s.coordinate_record_bytes < 0.0)
        throw ValidationError("energy.coordinate_record_bytes: must be >= 0");

    const json jp = j.value("planner", json::object());
    const std::string mode = jp.value("turning_center", std::string("lens"));
    if (mode == "lens")
        s.planner.turning_center = TurningCenterMode::Lens;
    else if (mode == "ab_midpoint")
        s.planner.turning_center = TurningCenterMode::AbMidpoint;
    else
        throw ValidationError("planner.turning_center: must be \"lens\" or \"ab_midpoint\"");
    s.planner.oracle_step = get_number(jp, "oracle_step_m", 0.01);
    if (!(s.planner.oracle_step > 0.0)) throw ValidationError("planner.oracle_step_m: must be positive");
    s.planner.thorough_short_check = jp.value("thorough_short_check", false);

    for (const json& jtr : j.value("transitions", json::array())) {
        TransitionSpec t;
        if (!jtr.contains("mobile_id") || !jtr["mobile_id"].is_number_integer())
            throw ValidationError("transitions[].mobile_id: required integer");
        t.mobile_id = jtr["mobile_id"].get<int>();
        if (!s.fleet.has(t.mobile_id))
            throw ValidationError("transitions[].mobile_id: unknown uav " + std::to_string(t.mobile_id));
        t.origin = parse_point(jtr.value("origin", json()), "transitions[].origin");
        t.destination = parse_point(jtr.value("destination", json()), "transitions[].destination");
        t.speed = get_number(jtr, "speed_mps", 0.0);
        if (!(t.speed > 0.0)) throw ValidationError("transitions[].speed_mps: must be positive");
        t.start_time = get_number(jtr, "start_time_s", 0.0);
        if (t.start_time < 0.0) throw ValidationError("transitions[].start_time_s: must be >= 0");
        s.transitions.push_back(t);
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("scenario: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["schema_version"] = 1;
    j["id"] = s.id;
    j["rng_seed"] = s.rng_seed;
    j["sim_duration_s"] = s.sim_duration;
    j["policy"] = s.policy == Policy::Etf ? "etf" : "lcrt";
    j["traffic"] = {{"rate_bps", s.traffic_rate},
                    {"packet_size_bits", s.packet_size},
                    {"channel_rate_bps", s.channel_rate}};
    j["energy"] = {{"flight_power_w", s.flight_power},
                   {"coordinate_record_bytes", s.coordinate_record_bytes}};
    j["planner"] = {
        {"turning_center", s.planner.turning_center == TurningCenterMode::Lens ? "lens" : "ab_midpoint"},
        {"oracle_step_m", s.planner.oracle_step},
        {"thorough_short_check", s.planner.thorough_short_check}};
    json uavs = json::array();
    for (const Uav& u : s.fleet.uavs()) {
        const char* role = u.role == Role::Source ? "source" : u.role == Role::Receiver ? "receiver" : "idle";
        uavs.push_back({{"id", u.id},
                        {"position", point_to_json(u.position)},
                        {"rtr_radius_m", u.rtr_radius},
                        {"role", role}});
    }
    j["fleet"] = {{"source_id", s.fleet.source_id()}, {"uavs", uavs}};
    json trans = json::array();
    for (const TransitionSpec& t : s.transitions)
        trans.push_back({{"mobile_id", t.mobile_id},
                         {"origin", point_to_json(t.origin)},
                         {"destination", point_to_json(t.destination)},
                         {"speed_mps", t.speed},
                         {"start_time_s", t.start_time}});
    j["transitions"] = trans;
    return j.dump(2);
}

namespace {

json trace_to_json(const CheckTrace& trace) {
    json jt;
    json cps = json::array();
    for (const auto& cp : trace.checking_points)
        cps.push_back({{"point", point_to_json(cp.point)}, {"owner", cp.owner}});
    jt["checking_points"] = cps;
    jt["checked_list"] = trace.checked_list;
    json turns = json::array();
    for (const auto& t : trace.turning_locations) turns.push_back(point_to_json(t));
    jt["turning_locations"] = turns;
    jt["chain"] = trace.chain;
    return jt;
}

}  // namespace

std::string plan_to_json(const TransitionPlan& plan) {
    json j;
    j["kind"] = kind_label(plan.kind);
    j["seamless"] = plan.seamless;
    json wps = json::array();
    for (const auto& w : plan.waypoints) wps.push_back(point_to_json(w));
    j["waypoints"] = wps;
    j["trace"] = trace_to_json(plan.trace);
    return j.dump(2);
}

std::string check_to_json(const TransitionRequest& req, bool short_distance, bool seamless,
                          const ShortCheckResult* short_evidence, const CheckTrace* trace) {
    json j;
    j["mobile_id"] = req.mobile_id;
    j["fa"] = req.fa;
    j["fb"] = req.fb;
    j["distance_class"] = short_distance ? "short" : "long";
    j["seamless"] = seamless;
    if (short_evidence) {
        j["evidence"] = {{"c", point_to_json(short_evidence->c)},
                         {"d", point_to_json(short_evidence->d)}};
        if (short_evidence->witness) j["evidence"]["witness"] = *short_evidence->witness;
    }
    if (trace) j["trace"] = trace_to_json(*trace);
    return j.dump(2);
}

const char* kReportCsvHeader =
    "scenario_id,policy,traffic_rate,amd_s,amt_bps,amod_s,amot_bps,aaeb_j_per_bit,aco_bits";

std::string report_csv_row(const Scenario& scenario, const MetricsReport& report) {
    std::ostringstream os;
    os.precision(12);
    os << scenario.id << ',' << (scenario.policy == Policy::Etf ? "etf" : "lcrt") << ','
       << scenario.traffic_rate << ',' << report.amd_s << ',' << report.amt_bps << ','
       << report.amod_s << ',' << report.amot_bps << ',' << report.aaeb_j_per_bit << ','
       << report.aco_bits;
    return os.str();
}

void write_packet_trace(std::ostream& os, const SimRecords& records) {
    os << "seq,sent_at,receiver,delivered_at\n";
    os.precision(12);
    for (const auto& pkt : records.packets) {
        for (std::size_t ri = 0; ri < records.receiver_ids.size(); ++ri) {
            os << pkt.seq << ',' << pkt.sent_at << ',' << records.receiver_ids[ri] << ',';
            if (pkt.delivered_at[ri]) os << *pkt.delivered_at[ri];
            os << '\n';
        }
    }
}

}  // namespace etfsim
