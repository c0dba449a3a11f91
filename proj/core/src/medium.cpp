#include "tokendcf/medium.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tokendcf {

Medium::Medium(Simulator& sim, Topology topology)
    : sim_(sim), topology_(std::move(topology)) {
  const std::size_t n = topology_.size();
  cs_neighbors_.resize(n);
  tx_neighbors_.resize(n);
  for (StationId a = 0; a < static_cast<StationId>(n); ++a) {
    for (StationId b = 0; b < static_cast<StationId>(n); ++b) {
      if (a == b) continue;
      const LinkGeometry g = topology_.link_geometry(a, b);
      if (g.in_cs_range) cs_neighbors_[index(a)].push_back(b);
      if (g.in_tx_range) tx_neighbors_[index(a)].push_back(b);
    }
  }
  listeners_.assign(n, nullptr);
  sensed_.assign(n, 0);
  transmitting_.assign(n, 0);
  busy_since_.assign(n, 0);
  busy_total_.assign(n, 0);
  watched_.assign(n, 0);
  activity_.assign(n, 0);
}

void Medium::attach(StationId station, MediumListener* listener) {
  topology_.position(station);
  listeners_[index(station)] = listener;
}

void Medium::watch(StationId station) {
  topology_.position(station);
  watched_[index(station)] = 1;
}

void Medium::mark_overlap(Active& victim, StationId interferer) {
  victim.corrupted[index(interferer)] = 1;
  for (StationId r : cs_neighbors_[index(interferer)]) victim.corrupted[index(r)] = 1;
}

void Medium::bump_activity(StationId station, int delta, const MacFrame& cause) {
  int& count = activity_[index(station)];
  const bool was_busy = count > 0;
  count += delta;
  const bool busy = count > 0;
  if (busy != was_busy && watched_[index(station)] && observer_ != nullptr) {
    observer_->on_activity_change(station, busy, sim_.now(), cause);
  }
}

TransmissionId Medium::begin_transmission(StationId src, const MacFrame& frame,
                                          Duration airtime) {
  topology_.position(src);
  if (transmitting_[index(src)]) {
    throw std::logic_error("Medium: station " + std::to_string(src) + " is already transmitting");
  }
  if (airtime <= 0) throw std::invalid_argument("Medium: airtime must be positive");

  Active tx{next_id_++, src, frame, sim_.now(), sim_.now() + airtime,
            std::vector<std::uint8_t>(size(), 0)};
  for (Active& other : active_) {
    // a frame ending at this instant has left the air; only its
    // finalization event is still pending
    if (other.end <= sim_.now()) continue;
    mark_overlap(tx, other.src);
    mark_overlap(other, src);
  }
  transmitting_[index(src)] = 1;
  const TransmissionId id = tx.id;
  const SimTime end = tx.end;
  active_.push_back(std::move(tx));

  if (observer_ != nullptr) observer_->on_transmission_start(src, frame, sim_.now(), end);
  bump_activity(src, +1, frame);
  for (StationId r : cs_neighbors_[index(src)]) {
    bump_activity(r, +1, frame);
    if (sensed_[index(r)]++ == 0) {
      busy_since_[index(r)] = sim_.now();
      if (listeners_[index(r)] != nullptr) listeners_[index(r)]->on_carrier_change(true);
    }
  }

  sim_.schedule_at(end, EventTarget{EventTarget::Kind::Medium, src},
                   [this, id] { finalize_transmission(id); });
  return id;
}

std::vector<Reception> Medium::finalize_transmission(TransmissionId id) {
  auto it = std::find_if(active_.begin(), active_.end(),
                         [id](const Active& a) { return a.id == id; });
  if (it == active_.end()) {
    throw std::out_of_range("Medium: unknown transmission " + std::to_string(id));
  }
  if (it->end != sim_.now()) throw std::logic_error("Medium: finalize before transmission end");

  Active tx = std::move(*it);
  active_.erase(it);
  transmitting_[index(tx.src)] = 0;

  std::vector<Reception> outcomes(size(), Reception::NotDecodable);
  for (StationId r : tx_neighbors_[index(tx.src)]) {
    outcomes[index(r)] = tx.corrupted[index(r)] ? Reception::Corrupted : Reception::Delivered;
  }

  if (logging_ || observer_ != nullptr) {
    TransmissionRecord rec{tx.id, tx.src, tx.frame, tx.start, tx.end, outcomes};
    if (observer_ != nullptr) observer_->on_transmission_end(rec);
    if (logging_) log_.push_back(std::move(rec));
  }

  for (StationId r : tx_neighbors_[index(tx.src)]) {
    if (outcomes[index(r)] == Reception::Delivered && listeners_[index(r)] != nullptr) {
      listeners_[index(r)]->on_frame(tx.frame);
    }
  }
  bump_activity(tx.src, -1, tx.frame);
  for (StationId r : cs_neighbors_[index(tx.src)]) {
    bump_activity(r, -1, tx.frame);
    if (--sensed_[index(r)] == 0) {
      busy_total_[index(r)] += sim_.now() - busy_since_[index(r)];
      if (listeners_[index(r)] != nullptr) listeners_[index(r)]->on_carrier_change(false);
    }
  }
  if (listeners_[index(tx.src)] != nullptr) {
    listeners_[index(tx.src)]->on_own_transmission_end(tx.frame);
  }
  return outcomes;
}

bool Medium::carrier_busy(StationId station, SimTime at) const {
  for (const Active& a : active_) {
    if (a.src == station) continue;
    if (a.start <= at && at < a.end && topology_.link_geometry(a.src, station).in_cs_range) {
      return true;
    }
  }
  return false;
}

Duration Medium::sensed_busy_time(StationId station) const {
  Duration total = busy_total_[index(station)];
  if (sensed_[index(station)] > 0) total += sim_.now() - busy_since_[index(station)];
  return total;
}

}  // namespace tokendcf
