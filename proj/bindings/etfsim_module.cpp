#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "etfsim/scenario_io.hpp"

namespace py = pybind11;
using namespace etfsim;

namespace {

std::vector<Sphere> tree_forwarder_spheres(const MulticastTree& tree, const Fleet& fleet) {
    std::vector<Sphere> spheres;
    for (int f : tree.forwarders) spheres.push_back(fleet.uav(f).rtr());
    return spheres;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Seamless UAV transition planning and multicast simulation";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "EtfsimError", PyExc_RuntimeError);

    py::class_<Point3>(m, "Point3")
        .def(py::init<>())
        .def(py::init([](double x, double y, double z) { return Point3{x, y, z}; }),
             py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readwrite("x", &Point3::x)
        .def_readwrite("y", &Point3::y)
        .def_readwrite("z", &Point3::z)
        .def("__repr__", [](const Point3& p) {
            return "Point3(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " +
                   std::to_string(p.z) + ")";
        });

    py::class_<Sphere>(m, "Sphere")
        .def(py::init([](const Point3& c, double r) { return Sphere{c, r}; }),
             py::arg("center"), py::arg("radius"))
        .def_readwrite("center", &Sphere::center)
        .def_readwrite("radius", &Sphere::radius)
        .def("contains", &Sphere::contains);

    py::class_<Segment>(m, "Segment")
        .def(py::init([](const Point3& a, const Point3& b) { return Segment{a, b}; }),
             py::arg("a"), py::arg("b"))
        .def_readwrite("a", &Segment::a)
        .def_readwrite("b", &Segment::b)
        .def("length", &Segment::length);

    py::class_<SegmentSphereHit>(m, "SegmentSphereHit")
        .def_readonly("t", &SegmentSphereHit::t)
        .def_readonly("point", &SegmentSphereHit::point);

    m.def("distance", &distance, py::arg("p"), py::arg("q"));
    m.def("segment_sphere_intersections", &segment_sphere_intersections, py::arg("segment"),
          py::arg("sphere"));
    m.def("point_line_distance", &point_line_distance, py::arg("segment"), py::arg("point"));
    m.def("lens_center", &lens_center, py::arg("s1"), py::arg("s2"));

    py::enum_<Role>(m, "Role")
        .value("Source", Role::Source)
        .value("Forwarder", Role::Forwarder)
        .value("Receiver", Role::Receiver)
        .value("Idle", Role::Idle);

    py::class_<Uav>(m, "Uav")
        .def(py::init([](int id, const Point3& pos, double radius, Role role) {
                 return Uav{id, pos, radius, role};
             }),
             py::arg("id"), py::arg("position"), py::arg("rtr_radius"), py::arg("role"))
        .def_readwrite("id", &Uav::id)
        .def_readwrite("position", &Uav::position)
        .def_readwrite("rtr_radius", &Uav::rtr_radius)
        .def_readwrite("role", &Uav::role)
        .def("rtr", &Uav::rtr);

    py::class_<Fleet>(m, "Fleet")
        .def(py::init<std::vector<Uav>, int>(), py::arg("uavs"), py::arg("source_id"))
        .def_property_readonly("uavs", &Fleet::uavs)
        .def_property_readonly("source_id", &Fleet::source_id)
        .def("uav", py::overload_cast<int>(&Fleet::uav, py::const_),
             py::return_value_policy::reference_internal);

    py::class_<MulticastTree>(m, "MulticastTree")
        .def_readonly("levels", &MulticastTree::levels)
        .def_readonly("parent", &MulticastTree::parent)
        .def_readonly("forwarders", &MulticastTree::forwarders)
        .def("is_forwarder", &MulticastTree::is_forwarder)
        .def("level", &MulticastTree::level);

    m.def("build_lcrt_tree", &build_lcrt_tree, py::arg("fleet"));
    m.def("are_overlapping", &are_overlapping, py::arg("a"), py::arg("b"));
    m.def("covering_forwarders", &covering_forwarders, py::arg("tree"), py::arg("fleet"),
          py::arg("slt"));
    m.def("same_path_chain", &same_path_chain, py::arg("tree"), py::arg("fa"), py::arg("fb"));

    py::class_<OverlapGraph>(m, "OverlapGraph")
        .def_readonly("vertices", &OverlapGraph::vertices)
        .def_readonly("adjacency", &OverlapGraph::adjacency)
        .def("has_edge", &OverlapGraph::has_edge)
        .def("weight", &OverlapGraph::weight);

    m.def("overlap_graph", &overlap_graph, py::arg("tree"), py::arg("fleet"));
    m.def("dijkstra_chain", &dijkstra_chain, py::arg("graph"), py::arg("fa"), py::arg("fb"));

    py::class_<TransitionRequest>(m, "TransitionRequest")
        .def(py::init([](int mobile_id, const Point3& origin, const Point3& destination, int fa,
                         int fb) { return TransitionRequest{mobile_id, origin, destination, fa, fb}; }),
             py::arg("mobile_id"), py::arg("origin"), py::arg("destination"), py::arg("fa"),
             py::arg("fb"))
        .def_readwrite("mobile_id", &TransitionRequest::mobile_id)
        .def_readwrite("origin", &TransitionRequest::origin)
        .def_readwrite("destination", &TransitionRequest::destination)
        .def_readwrite("fa", &TransitionRequest::fa)
        .def_readwrite("fb", &TransitionRequest::fb);

    py::enum_<PlanKind>(m, "PlanKind")
        .value("SltShort", PlanKind::SltShort)
        .value("SltLong", PlanKind::SltLong)
        .value("TurnShort", PlanKind::TurnShort)
        .value("ChainLong", PlanKind::ChainLong);

    py::enum_<TurningCenterMode>(m, "TurningCenterMode")
        .value("Lens", TurningCenterMode::Lens)
        .value("AbMidpoint", TurningCenterMode::AbMidpoint);

    py::class_<PlannerConfig>(m, "PlannerConfig")
        .def(py::init<>())
        .def_readwrite("turning_center", &PlannerConfig::turning_center)
        .def_readwrite("oracle_step", &PlannerConfig::oracle_step)
        .def_readwrite("thorough_short_check", &PlannerConfig::thorough_short_check);

    py::class_<CheckingPoint>(m, "CheckingPoint")
        .def_readonly("point", &CheckingPoint::point)
        .def_readonly("owner", &CheckingPoint::owner);

    py::class_<CheckTrace>(m, "CheckTrace")
        .def_readonly("checking_points", &CheckTrace::checking_points)
        .def_readonly("checked_list", &CheckTrace::checked_list)
        .def_readonly("turning_locations", &CheckTrace::turning_locations)
        .def_readonly("chain", &CheckTrace::chain);

    py::class_<TransitionPlan>(m, "TransitionPlan")
        .def_readonly("waypoints", &TransitionPlan::waypoints)
        .def_readonly("kind", &TransitionPlan::kind)
        .def_readonly("seamless", &TransitionPlan::seamless)
        .def_readonly("trace", &TransitionPlan::trace)
        .def("length", &TransitionPlan::length);

    py::class_<ShortCheckResult>(m, "ShortCheckResult")
        .def_readonly("seamless", &ShortCheckResult::seamless)
        .def_readonly("c", &ShortCheckResult::c)
        .def_readonly("d", &ShortCheckResult::d)
        .def_readonly("witness", &ShortCheckResult::witness);

    py::class_<LongCheckResult>(m, "LongCheckResult")
        .def_readonly("seamless", &LongCheckResult::seamless)
        .def_readonly("trace", &LongCheckResult::trace);

    m.def("boundary_exit_point", &boundary_exit_point, py::arg("sphere"), py::arg("slt"),
          py::arg("toward"));
    m.def("check_short_seamless", &check_short_seamless, py::arg("request"), py::arg("tree"),
          py::arg("fleet"), py::arg("config") = PlannerConfig{});
    m.def("short_turning_location", &short_turning_location, py::arg("request"), py::arg("fleet"),
          py::arg("mode") = TurningCenterMode::Lens);
    m.def("check_long_seamless", &check_long_seamless, py::arg("request"), py::arg("tree"),
          py::arg("fleet"));
    m.def("form_long_trajectory", &form_long_trajectory, py::arg("request"), py::arg("tree"),
          py::arg("fleet"), py::arg("mode") = TurningCenterMode::Lens);
    m.def("plan_transition", &plan_transition, py::arg("request"), py::arg("tree"), py::arg("fleet"),
          py::arg("config") = PlannerConfig{});
    m.def(
        "oracle_is_seamless",
        [](const std::vector<Point3>& waypoints, const std::vector<Sphere>& spheres, double step) {
            return oracle_is_seamless(waypoints, spheres, step);
        },
        py::arg("waypoints"), py::arg("spheres"), py::arg("step"));
    m.def("forwarder_spheres", &tree_forwarder_spheres, py::arg("tree"), py::arg("fleet"));

    py::enum_<Policy>(m, "Policy").value("Lcrt", Policy::Lcrt).value("Etf", Policy::Etf);

    py::class_<TransitionSpec>(m, "TransitionSpec")
        .def(py::init([](int mobile_id, const Point3& origin, const Point3& destination,
                         double speed, double start_time) {
                 return TransitionSpec{mobile_id, origin, destination, speed, start_time};
             }),
             py::arg("mobile_id"), py::arg("origin"), py::arg("destination"), py::arg("speed"),
             py::arg("start_time") = 0.0)
        .def_readwrite("mobile_id", &TransitionSpec::mobile_id)
        .def_readwrite("origin", &TransitionSpec::origin)
        .def_readwrite("destination", &TransitionSpec::destination)
        .def_readwrite("speed", &TransitionSpec::speed)
        .def_readwrite("start_time", &TransitionSpec::start_time);

    py::class_<Scenario>(m, "Scenario")
        .def_readwrite("id", &Scenario::id)
        .def_readonly("fleet", &Scenario::fleet)
        .def_readwrite("traffic_rate", &Scenario::traffic_rate)
        .def_readwrite("packet_size", &Scenario::packet_size)
        .def_readwrite("channel_rate", &Scenario::channel_rate)
        .def_readwrite("transitions", &Scenario::transitions)
        .def_readwrite("policy", &Scenario::policy)
        .def_readwrite("sim_duration", &Scenario::sim_duration)
        .def_readwrite("flight_power", &Scenario::flight_power)
        .def_readwrite("coordinate_record_bytes", &Scenario::coordinate_record_bytes)
        .def_readwrite("planner", &Scenario::planner)
        .def_readwrite("rng_seed", &Scenario::rng_seed);

    py::class_<ReceiverStats>(m, "ReceiverStats")
        .def_readonly("id", &ReceiverStats::id)
        .def_readonly("mobile", &ReceiverStats::mobile)
        .def_readonly("delivered_packets", &ReceiverStats::delivered_packets)
        .def_readonly("delivered_bits", &ReceiverStats::delivered_bits)
        .def_readonly("mean_delay_s", &ReceiverStats::mean_delay_s)
        .def_readonly("throughput_bps", &ReceiverStats::throughput_bps);

    py::class_<MobileEnergyStats>(m, "MobileEnergyStats")
        .def_readonly("id", &MobileEnergyStats::id)
        .def_readonly("energy_j", &MobileEnergyStats::energy_j)
        .def_readonly("received_bits", &MobileEnergyStats::received_bits)
        .def_readonly("aeb_j_per_bit", &MobileEnergyStats::aeb_j_per_bit)
        .def_readonly("aeb_infinite", &MobileEnergyStats::aeb_infinite);

    py::class_<MetricsReport>(m, "MetricsReport")
        .def_readonly("amd_s", &MetricsReport::amd_s)
        .def_readonly("amt_bps", &MetricsReport::amt_bps)
        .def_readonly("amod_s", &MetricsReport::amod_s)
        .def_readonly("amot_bps", &MetricsReport::amot_bps)
        .def_readonly("aaeb_j_per_bit", &MetricsReport::aaeb_j_per_bit)
        .def_readonly("aaeb_infinite", &MetricsReport::aaeb_infinite)
        .def_readonly("aco_bits", &MetricsReport::aco_bits)
        .def_readonly("receivers", &MetricsReport::receivers)
        .def_readonly("mobiles", &MetricsReport::mobiles);

    m.def("mobile_position", &mobile_position, py::arg("plan"), py::arg("speed"), py::arg("start"),
          py::arg("t"));
    m.def("derive_requests", &derive_requests, py::arg("scenario"), py::arg("tree"));
    m.def("run", &run, py::arg("scenario"));
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("parse_scenario", &parse_scenario, py::arg("json_text"));
    m.def("scenario_to_json", &scenario_to_json, py::arg("scenario"));
    m.def("plan_to_json", &plan_to_json, py::arg("plan"));
    m.def(
        "cli_main",
        [](const std::vector<std::string>& args) {
            return cli_dispatch(args, std::cout, std::cerr);
        },
        py::arg("args"));
}
