#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <variant>

#include "tokendcf/medium.hpp"
#include "tokendcf/station.hpp"

namespace tokendcf {

/// Attempts are counted when they resolve (ACK or timeout), so
/// tx_failures <= tx_attempts always holds.
struct MetricsRecord {
  std::int64_t delivered_payload_bits = 0;
  std::int64_t delivered_packets = 0;
  double access_delay_sum_us = 0.0;
  std::int64_t access_delay_count = 0;
  std::int64_t tx_attempts = 0;
  std::int64_t tx_failures = 0;
  double idle_gap_sum_us = 0.0;
  std::int64_t idle_gap_count = 0;
  Duration busy_time_us = 0;  // summed over observed stations
  std::int64_t observers = 0;
  std::int64_t enqueued = 0;
  std::int64_t drops_buffer = 0;
  std::int64_t drops_retry = 0;
  Duration horizon_us = 0;
};

struct MetricsReport {
  double throughput_bps = 0.0;
  std::optional<double> access_delay_us;
  std::optional<double> idle_slots;
  std::optional<double> collision_freq;
  double drops = 0.0;
};

namespace metric {
struct Enqueued { bool accepted; };
struct TxFailure {};
struct Acked { SimTime arrival; SimTime at; int payload_bytes; };
struct Dropped { DropReason reason; };
struct ChannelEdge { StationId observer; bool busy; SimTime at; bool data_start; };
}  // namespace metric

using MetricEvent = std::variant<metric::Enqueued, metric::TxFailure,
                                 metric::Acked, metric::Dropped, metric::ChannelEdge>;

/// throughput = bits / horizon; delay = mean over ACKed packets;
/// idle slots = mean gap / slot; collision frequency = failures / attempts.
/// Fields with no samples are left empty. Throws if horizon <= 0.
MetricsReport summarize(const MetricsRecord& rec, Duration slot_us);

/// T_tr / (T_oh + T_tr). Requires t_tr > 0 and t_oh >= 0.
double efficiency(double t_tr_us, double t_oh_us);

/// Accumulates a MetricsRecord from MAC and medium instrumentation.
///
/// Idle gaps are measured around each observed station: the time from the
/// end of the last activity heard there (its own transmissions included) to
/// the start of the next Data frame that ends the idle period. In a clique
/// every observer sees the same channel, so this is the channel-wide gap.
class MetricsCollector final : public MediumObserver, public MacObserver {
 public:
  void observe(StationId station);
  void record(const MetricEvent& event);
  /// Closes open busy intervals at the horizon and stamps it into the record.
  void finish(SimTime horizon);
  const MetricsRecord& record_data() const { return rec_; }

  // MediumObserver
  void on_activity_change(StationId station, bool busy, SimTime at,
                          const MacFrame& cause) override;
  // MacObserver
  void on_enqueue(StationId station, const Packet& packet, bool accepted) override;
  void on_tx_failure(StationId station, SimTime at) override;
  void on_delivered(StationId station, const Packet& packet, SimTime at) override;
  void on_drop(StationId station, const Packet& packet, DropReason why) override;

 private:
  struct ChannelView {
    bool busy = false;
    SimTime idle_since = 0;
    SimTime busy_since = 0;
  };

  MetricsRecord rec_;
  std::unordered_map<StationId, ChannelView> views_;
};

}  // namespace tokendcf
