#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "etfsim/scenario_io.hpp"

namespace etfsim {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

struct LoadedScenario {
    Scenario scenario;
    MulticastTree tree;
    std::vector<TransitionRequest> requests;
};

LoadedScenario load_for_planning(const std::string& path, std::optional<std::uint64_t> seed) {
    LoadedScenario ls{load_scenario(path), {}, {}};
    if (seed) ls.scenario.rng_seed = *seed;
    ls.tree = build_lcrt_tree(ls.scenario.fleet);
    ls.requests = derive_requests(ls.scenario, ls.tree);
    return ls;
}

const TransitionRequest& request_at(const LoadedScenario& ls, int k) {
    if (k < 0 || static_cast<std::size_t>(k) >= ls.requests.size())
        throw ValidationError("transition index " + std::to_string(k) + " out of range (" +
                              std::to_string(ls.requests.size()) + " transitions)");
    return ls.requests[static_cast<std::size_t>(k)];
}

std::vector<Sphere> forwarder_spheres(const LoadedScenario& ls) {
    std::vector<Sphere> spheres;
    for (int f : ls.tree.forwarders) spheres.push_back(ls.scenario.fleet.uav(f).rtr());
    return spheres;
}

int cmd_plan(const std::string& path, int k, std::optional<std::uint64_t> seed, std::ostream& out) {
    const LoadedScenario ls = load_for_planning(path, seed);
    const TransitionPlan plan =
        plan_transition(request_at(ls, k), ls.tree, ls.scenario.fleet, ls.scenario.planner);
    out << plan_to_json(plan) << "\n";
    return kExitOk;
}

int cmd_check(const std::string& path, int k, std::optional<std::uint64_t> seed, std::ostream& out) {
    const LoadedScenario ls = load_for_planning(path, seed);
    const TransitionRequest& req = request_at(ls, k);
    const Fleet& fleet = ls.scenario.fleet;
    if (are_overlapping(fleet.uav(req.fa), fleet.uav(req.fb))) {
        const ShortCheckResult res = check_short_seamless(req, ls.tree, fleet, ls.scenario.planner);
        out << check_to_json(req, true, res.seamless, &res, nullptr) << "\n";
    } else {
        const LongCheckResult res = check_long_seamless(req, ls.tree, fleet);
        out << check_to_json(req, false, res.seamless, nullptr, &res.trace) << "\n";
    }
    return kExitOk;
}

int cmd_simulate(const std::string& path, const std::string& out_csv,
                 const std::string& trace_path, std::optional<std::uint64_t> seed) {
    Scenario scenario = load_scenario(path);
    if (seed) scenario.rng_seed = *seed;
    const SimRecords records = simulate(scenario);
    const MetricsReport report = compute_metrics(records, scenario);

    std::ofstream csv(out_csv, std::ios::binary);
    if (!csv) throw ValidationError("cannot open output file " + out_csv);
    csv << kReportCsvHeader << "\n" << report_csv_row(scenario, report) << "\n";

    if (!trace_path.empty()) {
        std::ofstream tf(trace_path, std::ios::binary);
        if (!tf) throw ValidationError("cannot open trace file " + trace_path);
        write_packet_trace(tf, records);
    }
    return kExitOk;
}

int cmd_verify(const std::string& path, std::optional<std::uint64_t> seed, std::ostream& out,
               std::ostream& err) {
    const LoadedScenario ls = load_for_planning(path, seed);
    const auto spheres = forwarder_spheres(ls);
    bool all_ok = true;
    for (std::size_t k = 0; k < ls.requests.size(); ++k) {
        std::string status;
        try {
            const TransitionPlan plan =
                plan_transition(ls.requests[k], ls.tree, ls.scenario.fleet, ls.scenario.planner);
            const bool covered =
                oracle_is_seamless(plan.waypoints, spheres, ls.scenario.planner.oracle_step);
            status = std::string(kind_label(plan.kind)) + (covered ? " ok" : " NOT COVERED");
            all_ok = all_ok && covered;
        } catch (const NoChainError& e) {
            status = std::string("failed: ") + e.what();
            all_ok = false;
        }
        out << "transition " << k << " (mobile " << ls.requests[k].mobile_id << "): " << status
            << "\n";
    }
    if (!all_ok) err << "error: verification failed\n";
    return all_ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Seamless UAV transition planning and multicast simulation"};
    app.require_subcommand(1);

    std::string scenario_path, out_csv, trace_path;
    int transition_index = 0;
    std::optional<std::uint64_t> seed;

    auto* plan = app.add_subcommand("plan", "Print the planned trajectory for one transition");
    plan->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    plan->add_option("--transition", transition_index, "Transition index")->required();
    plan->add_option("--seed", seed, "Override rng_seed");

    auto* check = app.add_subcommand("check", "Print the seamlessness verdict for one transition");
    check->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    check->add_option("--transition", transition_index, "Transition index")->required();
    check->add_option("--seed", seed, "Override rng_seed");

    auto* simulate = app.add_subcommand("simulate", "Run the simulation and write the metrics CSV");
    simulate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    simulate->add_option("--out", out_csv, "Output CSV file")->required();
    simulate->add_option("--trace", trace_path, "Optional per-packet trace file");
    simulate->add_option("--seed", seed, "Override rng_seed");

    auto* verify = app.add_subcommand("verify", "Replan every transition and check it with the oracle");
    verify->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    verify->add_option("--seed", seed, "Override rng_seed");

    try {
        std::vector<const char*> argv{"etfsim"};
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (app.got_subcommand(plan)) return cmd_plan(scenario_path, transition_index, seed, out);
        if (app.got_subcommand(check)) return cmd_check(scenario_path, transition_index, seed, out);
        if (app.got_subcommand(simulate)) return cmd_simulate(scenario_path, out_csv, trace_path, seed);
        if (app.got_subcommand(verify)) return cmd_verify(scenario_path, seed, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

int cli_dispatch(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return cli_dispatch(args, std::cout, std::cerr);
}

}  // namespace etfsim
