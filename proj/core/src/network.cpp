#include "tokendcf/network.hpp"

#include <cmath>

namespace tokendcf {

Position single_hop_receiver(Position tx, double offset_m, double area_side_m) {
  return Position{std::fmod(tx.x + offset_m, area_side_m), tx.y};
}

NetworkLayout generate_topology(const ScenarioConfig& config, std::uint64_t run_seed) {
  validate(config);
  RandomStream rng(run_seed, StreamId{0, -1, StreamPurpose::Topology});
  const double d = config.area_side_m;
  const int n = config.n_transmitters;
  std::vector<Position> pos(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform01() * d;
    const double y = rng.uniform01() * d;
    pos[static_cast<std::size_t>(i)] = Position{x, y};
  }
  std::vector<Flow> flows;
  for (int i = 0; i < n; ++i) {
    const Position& tx = pos[static_cast<std::size_t>(i)];
    Position rx;
    if (config.flows == FlowLayout::SingleHop) {
      rx = single_hop_receiver(tx, config.receiver_offset_m, d);
    } else {
      const double x = rng.uniform01() * d;
      rx = Position{x, rng.uniform01() * d};
    }
    pos[static_cast<std::size_t>(n + i)] = rx;
    flows.push_back(Flow{i, n + i});
  }
  return NetworkLayout{Topology(std::move(pos), config.phy.tx_range_m, config.phy.cs_range_m, d),
                       std::move(flows)};
}

Network::Network(const ScenarioConfig& config, Protocol protocol, std::uint64_t run_seed)
    : Network(config, protocol, run_seed, generate_topology(config, run_seed)) {}

Network::Network(const ScenarioConfig& config, Protocol protocol, std::uint64_t run_seed,
                 NetworkLayout layout)
    : config_(config), protocol_(protocol), flows_(std::move(layout.flows)) {
  validate(config_);
  medium_ = std::make_unique<Medium>(sim_, std::move(layout.topology));
  medium_->set_observer(&metrics_);
  const auto n = static_cast<StationId>(medium_->size());
  for (StationId id = 0; id < n; ++id) {
    Station::Config sc;
    sc.id = id;
    sc.phy = config_.phy;
    sc.mac = config_.mac;
    if (protocol_ == Protocol::TokenDcf) sc.token = config_.token;
    sc.seed = run_seed;
    auto st = std::make_unique<Station>(sim_, *medium_, sc);
    st->set_observer(&metrics_);
    stations_.push_back(std::move(st));
  }
  for (const Flow& f : flows_) {
    Station& src = station(f.src);
    src.set_destination(f.dst);
    medium_->watch(f.dst);
    metrics_.observe(f.dst);
    sources_.push_back(std::make_unique<TrafficSource>(
        sim_, src, config_.traffic,
        RandomStream(run_seed, StreamId{0, f.src, StreamPurpose::Traffic})));
  }
}

void Network::start() {
  if (started_) return;
  started_ = true;
  for (auto& st : stations_) st->start();
  for (auto& src : sources_) src->attach();
}

std::uint64_t Network::advance_to(SimTime t) {
  start();
  const std::uint64_t fired = sim_.run_until(t);
  events_ += fired;
  return fired;
}

RunResult Network::run() {
  advance_to(config_.horizon());
  metrics_.finish(config_.horizon());
  RunResult r;
  r.record = metrics_.record_data();
  r.report = summarize(r.record, config_.phy.slot_us);
  r.events = events_;
  return r;
}

}  // namespace tokendcf
