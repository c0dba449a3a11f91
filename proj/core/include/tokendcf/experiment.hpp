#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tokendcf/config.hpp"
#include "tokendcf/metrics.hpp"

namespace tokendcf {

struct ResultRow {
  std::string scenario_id;
  Protocol protocol = Protocol::Dcf;
  int n_tx = 0;
  double area = 0.0;
  int pkt_size = 0;
  // Value of the swept parameter, when the row came from a sweep.
  std::string x_value;
  std::vector<MetricsReport> per_run;
  MetricsReport average;
};

/// Mean of each field over the runs that report it; absent if none do.
MetricsReport average_reports(const std::vector<MetricsReport>& runs);

/// Runs `config.runs` independent simulations of one protocol. Run i uses
/// derive_run_seed(config.seed, i), which also fixes its topology, so both
/// protocols see the same networks and arrival streams.
ResultRow run_scenario(const ScenarioConfig& config, Protocol protocol);

/// One row per configured protocol, in configuration order.
std::vector<ResultRow> run_scenario(const ScenarioConfig& config);

/// Cartesian product of `values` x {Dcf, TokenDcf}, value-major.
/// Throws std::invalid_argument on an empty value list and ConfigError on a
/// bad parameter or value.
std::vector<ResultRow> run_sweep(const ScenarioConfig& base, const std::string& param,
                                 const std::vector<std::string>& values);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(std::istream& in);

/// Writes results.csv plus one <metric>_<protocol>.dat per metric and
/// protocol, each holding "x metric" lines of run-averaged values. The x value
/// is the swept value, or the transmitter count for plain runs.
void write_outputs(const std::filesystem::path& dir, const std::vector<ResultRow>& rows);

std::vector<std::string> split_values(const std::string& csv);

}  // namespace tokendcf
