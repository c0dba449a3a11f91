#include "tokendcf/station.hpp"

#include <algorithm>

namespace tokendcf {

Station::Station(Simulator& sim, Medium& medium, Config config)
    : sim_(sim),
      medium_(medium),
      cfg_(std::move(config)),
      backoff_rng_(cfg_.seed, StreamId{cfg_.run, cfg_.id, StreamPurpose::Backoff}),
      grant_rng_(cfg_.seed, StreamId{cfg_.run, cfg_.id, StreamPurpose::Grant}),
      cw_(cfg_.mac.cw_min),
      ack_airtime_(ack_airtime(cfg_.phy, cfg_.mac)) {
  if (cfg_.token) token_.emplace(cfg_.id, *cfg_.token);
  const double rate = static_cast<double>(cfg_.phy.bit_rate_bps);
  capacity_ = [rate](StationId) { return rate; };
  medium_.attach(cfg_.id, this);
}

void Station::start() {
  if (token_) schedule_period_reset();
}

void Station::schedule_period_reset() {
  sim_.schedule(token_->params().period_us, self(), [this] {
    token_->period_reset();
    schedule_period_reset();
  });
}

EnqueueResult Station::enqueue_packet(int bytes) {
  Packet pkt{next_seq_++, sim_.now(), bytes};
  if (static_cast<int>(queue_.size()) >= cfg_.mac.queue_capacity) {
    if (observer_ != nullptr) {
      observer_->on_enqueue(cfg_.id, pkt, false);
      observer_->on_drop(cfg_.id, pkt, DropReason::BufferFull);
    }
    return EnqueueResult::Dropped;
  }
  queue_.push_back(pkt);
  if (observer_ != nullptr) observer_->on_enqueue(cfg_.id, pkt, true);
  maybe_start_access();
  return EnqueueResult::Accepted;
}

void Station::flush_queue() {
  if (contending_) {
    if (timer_ != kNoEvent) sim_.cancel(timer_);
    timer_ = kNoEvent;
    contending_ = false;
    backoff_slots_ = -1;
  }
  while (!queue_.empty() && !awaiting_ack_ && !sending_data_) {
    Packet pkt = queue_.front();
    queue_.pop_front();
    if (observer_ != nullptr) observer_->on_drop(cfg_.id, pkt, DropReason::Flushed);
  }
}

Phase Station::phase() const {
  if (sending_data_ || sending_ack_) return Phase::Transmitting;
  if (awaiting_ack_) return Phase::AwaitAck;
  if (!contending_) return Phase::Idle;
  if (timer_ == kNoEvent) return Phase::Frozen;
  if (plan_.kind == AccessPlan::Kind::Sifs) return Phase::WaitSifs;
  return sim_.now() < countdown_start_ ? Phase::WaitDifs : Phase::CountingDown;
}

int Station::backoff_slots() const {
  if (backoff_slots_ < 0) return -1;
  if (timer_ != kNoEvent && plan_.kind == AccessPlan::Kind::DifsPlusSlots &&
      sim_.now() >= countdown_start_) {
    return backoff_slots_ -
           static_cast<int>((sim_.now() - countdown_start_) / cfg_.phy.slot_us);
  }
  return backoff_slots_;
}

bool Station::channel_busy() const {
  return phys_busy_ || nav_until_ > sim_.now() || sending_data_ || sending_ack_ || ack_pending_;
}

void Station::maybe_start_access() {
  if (contending_ || awaiting_ack_ || sending_data_ || queue_.empty()) return;
  begin_contention();
}

void Station::begin_contention() {
  backoff_slots_ = static_cast<int>(backoff_rng_.uniform_int(0, cw_));
  contending_ = true;
  if (!channel_busy()) start_timer();
}

void Station::start_timer() {
  plan_ = token_ ? plan_access(token_->flag(), FrameKind::Data, backoff_slots_)
                 : AccessPlan{AccessPlan::Kind::DifsPlusSlots, backoff_slots_};
  if (plan_.kind == AccessPlan::Kind::Sifs) {
    timer_at_ = sim_.now() + cfg_.phy.sifs_us;
    countdown_start_ = timer_at_;
  } else {
    countdown_start_ = sim_.now() + cfg_.phy.difs_us;
    timer_at_ = countdown_start_ + static_cast<Duration>(backoff_slots_) * cfg_.phy.slot_us;
  }
  timer_ = sim_.schedule_at(timer_at_, self(), [this] { on_backoff_expired(); });
}

void Station::freeze() {
  if (timer_ == kNoEvent) return;
  // A timer expiring at this very instant wins: the station has already
  // committed to transmit and cannot sense a frame that starts simultaneously.
  if (timer_at_ == sim_.now()) return;
  if (plan_.kind == AccessPlan::Kind::DifsPlusSlots && sim_.now() >= countdown_start_) {
    backoff_slots_ -= static_cast<int>((sim_.now() - countdown_start_) / cfg_.phy.slot_us);
  }
  sim_.cancel(timer_);
  timer_ = kNoEvent;
}

void Station::channel_changed() {
  const bool busy = channel_busy();
  if (busy == last_busy_) return;
  last_busy_ = busy;
  if (!contending_) return;
  if (busy) {
    freeze();
  } else if (timer_ == kNoEvent) {
    start_timer();
  }
}

void Station::on_backoff_expired() {
  timer_ = kNoEvent;
  contending_ = false;
  // Privilege is one-shot: consumed by the expiry whatever plan was used.
  if (token_) token_->clear_flag();
  if (queue_.empty()) {
    backoff_slots_ = -1;
    return;
  }
  transmit_head();
}

void Station::transmit_head() {
  const Packet& head = queue_.front();
  MacFrame frame;
  frame.kind = FrameKind::Data;
  frame.src = cfg_.id;
  frame.dst = dst_;
  frame.payload_bytes = head.bytes;
  frame.seq = head.seq;
  frame.nav_us = cfg_.phy.sifs_us + ack_airtime_;
  if (token_) {
    token_->on_transmit_data(frame, static_cast<int>(queue_.size()), capacity_, grant_rng_);
  }
  last_access_ = plan_.kind;
  backoff_slots_ = -1;
  sending_data_ = true;
  if (observer_ != nullptr) observer_->on_tx_attempt(cfg_.id, frame, plan_.kind, sim_.now());
  medium_.begin_transmission(cfg_.id, frame, frame_airtime(frame, cfg_.phy, cfg_.mac));
  channel_changed();
}

void Station::on_own_transmission_end(const MacFrame& frame) {
  if (frame.kind == FrameKind::Data) {
    sending_data_ = false;
    awaiting_ack_ = true;
    ack_timeout_ = sim_.schedule(cfg_.phy.sifs_us + ack_airtime_ + cfg_.mac.ack_timeout_guard_us,
                                 self(), [this] { on_ack_timeout(); });
  } else {
    sending_ack_ = false;
  }
  channel_changed();
}

void Station::on_carrier_change(bool busy) {
  phys_busy_ = busy;
  channel_changed();
}

void Station::on_frame(const MacFrame& frame) {
  if (frame.kind == FrameKind::Ack) {
    if (frame.dst == cfg_.id && awaiting_ack_) {
      on_ack_received();
    } else {
      ++ignored_acks_;
    }
    return;
  }

  if (token_) token_->on_receive_or_overhear(frame);
  if (frame.dst == cfg_.id) {
    ack_pending_ = true;
    const StationId to = frame.src;
    sim_.schedule(cfg_.phy.sifs_us, self(), [this, to] { send_ack(to); });
  } else if (frame.nav_us > 0) {
    const SimTime until = sim_.now() + frame.nav_us;
    if (until > nav_until_) {
      nav_until_ = until;
      if (nav_event_ != kNoEvent) sim_.cancel(nav_event_);
      nav_event_ = sim_.schedule_at(until, self(), [this] {
        nav_event_ = kNoEvent;
        channel_changed();
      });
    }
  }
  channel_changed();
}

void Station::send_ack(StationId to) {
  ack_pending_ = false;
  if (sending_data_ || sending_ack_) {
    channel_changed();
    return;
  }
  MacFrame ack;
  ack.kind = FrameKind::Ack;
  ack.src = cfg_.id;
  ack.dst = to;
  sending_ack_ = true;
  medium_.begin_transmission(cfg_.id, ack, ack_airtime_);
  channel_changed();
}

void Station::pop_head() {
  queue_.pop_front();
  if (dequeue_hook_) dequeue_hook_();
}

void Station::on_ack_received() {
  sim_.cancel(ack_timeout_);
  ack_timeout_ = kNoEvent;
  awaiting_ack_ = false;
  const Packet pkt = queue_.front();
  cw_ = cfg_.mac.cw_min;
  retries_ = 0;
  if (observer_ != nullptr) observer_->on_delivered(cfg_.id, pkt, sim_.now());
  pop_head();
  maybe_start_access();
}

void Station::on_ack_timeout() {
  ack_timeout_ = kNoEvent;
  awaiting_ack_ = false;
  ++retries_;
  cw_ = std::min(2 * cw_, cfg_.mac.cw_max);
  if (observer_ != nullptr) observer_->on_tx_failure(cfg_.id, sim_.now());
  if (retries_ > cfg_.mac.retry_limit) {
    const Packet pkt = queue_.front();
    cw_ = cfg_.mac.cw_min;
    retries_ = 0;
    if (observer_ != nullptr) observer_->on_drop(cfg_.id, pkt, DropReason::RetryLimit);
    pop_head();
  }
  maybe_start_access();
}

}  // namespace tokendcf
