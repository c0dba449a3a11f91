#pragma once

#include <optional>

#include "tokendcf/random.hpp"
#include "tokendcf/simulator.hpp"
#include "tokendcf/station.hpp"

namespace tokendcf {

struct TrafficSpec {
  enum class Kind { FullBuffer, ParetoOnOff };
  Kind kind = Kind::FullBuffer;
  int packet_size = 500;
  double rate_bps = 0.0;         // sending rate during on periods
  double on_mean_us = 50'000.0;
  double off_mean_us = 50'000.0;
  double shape = 1.5;
};

/// Arrival times of a Pareto on/off source. Packets are spaced by
/// packet_size * 8 / rate of accumulated on-time; on-time left over when a
/// burst ends carries into the next burst, so the long-run offered load is
/// rate * on_mean / (on_mean + off_mean). The first burst starts at t = 0.
class ParetoOnOffProcess {
 public:
  ParetoOnOffProcess(const TrafficSpec& spec, RandomStream rng);

  /// Time of the next arrival, in (fractional) microseconds.
  double next();
  double interval_us() const { return interval_us_; }

 private:
  TrafficSpec spec_;
  RandomStream rng_;
  double interval_us_;
  double cursor_ = 0.0;     // on-time accounting position
  double phase_end_;        // end of the current on period
  double credit_ = 0.0;     // on-time accumulated toward the next arrival
};

/// Feeds packets into one station.
class TrafficSource {
 public:
  TrafficSource(Simulator& sim, Station& station, TrafficSpec spec, RandomStream rng);
  TrafficSource(const TrafficSource&) = delete;
  TrafficSource& operator=(const TrafficSource&) = delete;

  /// Must be called before the simulation starts running.
  void attach();

  /// Next scheduled arrival; none for full-buffer sources, whose refill is
  /// synchronous with dequeue.
  std::optional<SimTime> next_arrival() const;

  std::uint64_t generated() const { return generated_; }

 private:
  void refill();
  void schedule_next();

  Simulator& sim_;
  Station& station_;
  TrafficSpec spec_;
  std::optional<ParetoOnOffProcess> process_;
  std::optional<SimTime> next_at_;
  std::uint64_t generated_ = 0;
};

void validate(const TrafficSpec& spec);

}  // namespace tokendcf
