#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "etfsim/simulator.hpp"

// Scenario file parsing/validation (UTF-8 JSON, schema_version 1), report
// emission, plan serialization, and the CLI entry point.

namespace etfsim {

// Parse and fully validate a scenario. Missing optional fields take the
// defaults documented in the README (54 Mbit/s channel, 174.21 W flight power,
// 8192-bit packets, 0.01 m oracle step, 200 s duration). Throws ParseError on
// malformed JSON and ValidationError naming the offending field otherwise.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::filesystem::path& path);

// Inverse of parse_scenario: load(emit(s)) is semantically identical to s.
std::string scenario_to_json(const Scenario& scenario);

std::string plan_to_json(const TransitionPlan& plan);
std::string check_to_json(const TransitionRequest& req, bool short_distance, bool seamless,
                          const ShortCheckResult* short_evidence, const CheckTrace* trace);

// One CSV row per simulation run, fixed column set.
extern const char* kReportCsvHeader;
std::string report_csv_row(const Scenario& scenario, const MetricsReport& report);

void write_packet_trace(std::ostream& os, const SimRecords& records);

// Subcommands: plan, check, simulate, verify. Exit codes: 0 success,
// 1 verification failure, 2 input/usage error.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_dispatch(int argc, const char* const* argv);

}  // namespace etfsim
