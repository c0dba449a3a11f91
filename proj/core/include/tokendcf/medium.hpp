#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tokendcf/frame.hpp"
#include "tokendcf/simulator.hpp"
#include "tokendcf/topology.hpp"

namespace tokendcf {

enum class Reception : std::uint8_t { Delivered, Corrupted, NotDecodable };

using TransmissionId = std::uint64_t;

/// MAC-side callbacks. One listener per station.
class MediumListener {
 public:
  virtual ~MediumListener() = default;
  /// Physical carrier sense edge caused by other stations' transmissions.
  virtual void on_carrier_change(bool busy) = 0;
  /// A frame decoded cleanly at this station (addressed or overheard).
  virtual void on_frame(const MacFrame& frame) = 0;
  virtual void on_own_transmission_end(const MacFrame& frame) = 0;
};

struct TransmissionRecord {
  TransmissionId id;
  StationId src;
  MacFrame frame;
  SimTime start;
  SimTime end;
  std::vector<Reception> outcomes;  // indexed by station, filled at end
};

/// Instrumentation hooks for metrics collection.
class MediumObserver {
 public:
  virtual ~MediumObserver() = default;
  virtual void on_transmission_start(StationId /*src*/, const MacFrame& /*frame*/,
                                     SimTime /*start*/, SimTime /*end*/) {}
  virtual void on_transmission_end(const TransmissionRecord& /*record*/) {}
  /// Activity edge around a watched station: busy while any transmission
  /// from the station itself or from within its carrier-sense range is on air.
  virtual void on_activity_change(StationId /*station*/, bool /*busy*/, SimTime /*at*/,
                                  const MacFrame& /*cause*/) {}
};

/// Shared wireless channel with fixed transmission and carrier-sense radii,
/// zero propagation delay, and no capture: any overlap with a transmitter
/// within carrier-sense range of a receiver corrupts the frame there.
class Medium {
 public:
  Medium(Simulator& sim, Topology topology);

  const Topology& topology() const { return topology_; }
  std::size_t size() const { return topology_.size(); }

  void attach(StationId station, MediumListener* listener);
  void set_observer(MediumObserver* observer) { observer_ = observer; }
  void watch(StationId station);
  void enable_log(bool on) { logging_ = on; }
  const std::vector<TransmissionRecord>& log() const { return log_; }

  LinkGeometry link_geometry(StationId a, StationId b) const {
    return topology_.link_geometry(a, b);
  }

  /// Puts a frame on air for `airtime` microseconds and schedules its
  /// finalization. Throws std::logic_error if src is already transmitting.
  TransmissionId begin_transmission(StationId src, const MacFrame& frame, Duration airtime);

  /// Ends a transmission and dispatches Delivered frames. Called by the
  /// scheduled end event; requires now() to equal the transmission end.
  std::vector<Reception> finalize_transmission(TransmissionId id);

  /// True iff a transmission from another station within carrier-sense range
  /// is on air at `at`. Only in-flight transmissions are considered.
  bool carrier_busy(StationId station, SimTime at) const;
  bool carrier_busy(StationId station) const { return sensed_[index(station)] > 0; }
  bool is_transmitting(StationId station) const { return transmitting_[index(station)]; }

  /// Total time the station has sensed the carrier busy, up to now().
  Duration sensed_busy_time(StationId station) const;

  std::span<const StationId> cs_neighbors(StationId s) const { return cs_neighbors_[index(s)]; }
  std::span<const StationId> tx_neighbors(StationId s) const { return tx_neighbors_[index(s)]; }

 private:
  struct Active {
    TransmissionId id;
    StationId src;
    MacFrame frame;
    SimTime start;
    SimTime end;
    std::vector<std::uint8_t> corrupted;
  };

  static std::size_t index(StationId s) { return static_cast<std::size_t>(s); }
  void mark_overlap(Active& victim, StationId interferer);
  void bump_activity(StationId station, int delta, const MacFrame& cause);

  Simulator& sim_;
  Topology topology_;
  std::vector<std::vector<StationId>> cs_neighbors_;
  std::vector<std::vector<StationId>> tx_neighbors_;
  std::vector<MediumListener*> listeners_;
  MediumObserver* observer_ = nullptr;

  std::vector<Active> active_;
  std::vector<int> sensed_;
  std::vector<std::uint8_t> transmitting_;
  std::vector<SimTime> busy_since_;
  std::vector<Duration> busy_total_;
  std::vector<std::uint8_t> watched_;
  std::vector<int> activity_;

  TransmissionId next_id_ = 0;
  bool logging_ = false;
  std::vector<TransmissionRecord> log_;
};

}  // namespace tokendcf
