#pragma once

#include <memory>
#include <vector>

#include "tokendcf/config.hpp"
#include "tokendcf/medium.hpp"
#include "tokendcf/metrics.hpp"
#include "tokendcf/simulator.hpp"
#include "tokendcf/station.hpp"
#include "tokendcf/topology.hpp"
#include "tokendcf/traffic.hpp"

namespace tokendcf {

struct Flow {
  StationId src;
  StationId dst;
};

struct NetworkLayout {
  Topology topology;
  std::vector<Flow> flows;
};

/// Receiver of a single-hop flow: ((x + offset) mod d, y).
Position single_hop_receiver(Position tx, double offset_m, double area_side_m);

/// Transmitters 0..n-1 uniform in the square; receivers n..2n-1 either at
/// ((x + offset) mod d, y) or uniform at random.
NetworkLayout generate_topology(const ScenarioConfig& config, std::uint64_t run_seed);

struct RunResult {
  MetricsRecord record;
  MetricsReport report;
  std::uint64_t events = 0;
};

/// One simulation run: stations, medium, traffic and metrics wired together.
class Network {
 public:
  Network(const ScenarioConfig& config, Protocol protocol, std::uint64_t run_seed);
  Network(const ScenarioConfig& config, Protocol protocol, std::uint64_t run_seed,
          NetworkLayout layout);

  Simulator& sim() { return sim_; }
  Medium& medium() { return *medium_; }
  Station& station(StationId id) { return *stations_.at(static_cast<std::size_t>(id)); }
  std::size_t station_count() const { return stations_.size(); }
  const std::vector<Flow>& flows() const { return flows_; }
  MetricsCollector& metrics() { return metrics_; }
  TrafficSource& source(std::size_t flow) { return *sources_.at(flow); }

  /// Starts stations and traffic. Idempotent; called by run().
  void start();
  /// Advances the simulation to `t`, starting it first if needed.
  std::uint64_t advance_to(SimTime t);
  /// Runs to the configured horizon and summarizes.
  RunResult run();

 private:
  ScenarioConfig config_;
  Protocol protocol_;
  Simulator sim_;
  std::unique_ptr<Medium> medium_;
  std::vector<std::unique_ptr<Station>> stations_;
  std::vector<std::unique_ptr<TrafficSource>> sources_;
  std::vector<Flow> flows_;
  MetricsCollector metrics_;
  bool started_ = false;
  std::uint64_t events_ = 0;
};

}  // namespace tokendcf
