#include "tokendcf/metrics.hpp"

#include <stdexcept>

namespace tokendcf {

MetricsReport summarize(const MetricsRecord& rec, Duration slot_us) {
  if (rec.horizon_us <= 0) throw std::invalid_argument("summarize: horizon must be > 0");
  MetricsReport r;
  r.throughput_bps = static_cast<double>(rec.delivered_payload_bits) /
                     (static_cast<double>(rec.horizon_us) / 1e6);
  if (rec.access_delay_count > 0) {
    r.access_delay_us = rec.access_delay_sum_us / static_cast<double>(rec.access_delay_count);
  }
  if (rec.idle_gap_count > 0) {
    r.idle_slots = rec.idle_gap_sum_us / static_cast<double>(rec.idle_gap_count) /
                   static_cast<double>(slot_us);
  }
  if (rec.tx_attempts > 0) {
    r.collision_freq =
        static_cast<double>(rec.tx_failures) / static_cast<double>(rec.tx_attempts);
  }
  r.drops = static_cast<double>(rec.drops_buffer + rec.drops_retry);
  return r;
}

double efficiency(double t_tr_us, double t_oh_us) {
  if (!(t_tr_us > 0.0) || t_oh_us < 0.0) {
    throw std::invalid_argument("efficiency: need t_tr > 0 and t_oh >= 0");
  }
  return t_tr_us / (t_oh_us + t_tr_us);
}

void MetricsCollector::observe(StationId station) {
  if (views_.emplace(station, ChannelView{}).second) ++rec_.observers;
}

void MetricsCollector::record(const MetricEvent& event) {
  std::visit(
      [this](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, metric::Enqueued>) {
          if (e.accepted) ++rec_.enqueued;
        } else if constexpr (std::is_same_v<T, metric::TxFailure>) {
          ++rec_.tx_failures;
          ++rec_.tx_attempts;
        } else if constexpr (std::is_same_v<T, metric::Acked>) {
          ++rec_.tx_attempts;
          ++rec_.delivered_packets;
          rec_.delivered_payload_bits += 8 * static_cast<std::int64_t>(e.payload_bytes);
          rec_.access_delay_sum_us += static_cast<double>(e.at - e.arrival);
          ++rec_.access_delay_count;
        } else if constexpr (std::is_same_v<T, metric::Dropped>) {
          if (e.reason == DropReason::BufferFull) ++rec_.drops_buffer;
          if (e.reason == DropReason::RetryLimit) ++rec_.drops_retry;
        } else if constexpr (std::is_same_v<T, metric::ChannelEdge>) {
          auto it = views_.find(e.observer);
          if (it == views_.end()) return;
          ChannelView& v = it->second;
          if (e.busy == v.busy) return;
          v.busy = e.busy;
          if (e.busy) {
            v.busy_since = e.at;
            if (e.data_start) {
              rec_.idle_gap_sum_us += static_cast<double>(e.at - v.idle_since);
              ++rec_.idle_gap_count;
            }
          } else {
            v.idle_since = e.at;
            rec_.busy_time_us += e.at - v.busy_since;
          }
        }
      },
      event);
}

void MetricsCollector::finish(SimTime horizon) {
  for (auto& [id, v] : views_) {
    if (v.busy) {
      rec_.busy_time_us += horizon - v.busy_since;
      v.busy_since = horizon;
    }
  }
  rec_.horizon_us = horizon;
}

void MetricsCollector::on_activity_change(StationId station, bool busy, SimTime at,
                                          const MacFrame& cause) {
  record(metric::ChannelEdge{station, busy, at, cause.kind == FrameKind::Data});
}

void MetricsCollector::on_enqueue(StationId, const Packet&, bool accepted) {
  record(metric::Enqueued{accepted});
}

void MetricsCollector::on_tx_failure(StationId, SimTime) { record(metric::TxFailure{}); }

void MetricsCollector::on_delivered(StationId, const Packet& packet, SimTime at) {
  record(metric::Acked{packet.arrival, at, packet.bytes});
}

void MetricsCollector::on_drop(StationId, const Packet&, DropReason why) {
  record(metric::Dropped{why});
}

}  // namespace tokendcf
