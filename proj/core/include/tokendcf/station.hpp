#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>

#include "tokendcf/medium.hpp"
#include "tokendcf/params.hpp"
#include "tokendcf/random.hpp"
#include "tokendcf/simulator.hpp"
#include "tokendcf/token_scheduler.hpp"

namespace tokendcf {

struct Packet {
  std::uint64_t seq = 0;
  SimTime arrival = 0;
  int bytes = 0;
};

enum class EnqueueResult { Accepted, Dropped };
enum class DropReason { BufferFull, RetryLimit, Flushed };

enum class Phase { Idle, WaitDifs, WaitSifs, CountingDown, Frozen, Transmitting, AwaitAck };

/// MAC-layer instrumentation hooks.
class MacObserver {
 public:
  virtual ~MacObserver() = default;
  virtual void on_enqueue(StationId /*station*/, const Packet& /*packet*/, bool /*accepted*/) {}
  virtual void on_tx_attempt(StationId /*station*/, const MacFrame& /*frame*/,
                             AccessPlan::Kind /*access*/, SimTime /*at*/) {}
  virtual void on_tx_failure(StationId /*station*/, SimTime /*at*/) {}
  virtual void on_delivered(StationId /*station*/, const Packet& /*packet*/, SimTime /*at*/) {}
  virtual void on_drop(StationId /*station*/, const Packet& /*packet*/, DropReason /*why*/) {}
};

/// An 802.11 DCF station (basic access, no RTS/CTS), optionally running the
/// Token-DCF extension. Backoff is a single timer that expires at
/// DIFS + slots * slot_time after the channel goes idle; when the channel turns
/// busy the elapsed whole slots are subtracted and the timer is cancelled.
class Station final : public MediumListener {
 public:
  struct Config {
    StationId id = 0;
    PhyParams phy;
    MacParams mac;
    std::optional<TokenParams> token;
    std::uint64_t seed = 0;
    std::uint64_t run = 0;
  };

  Station(Simulator& sim, Medium& medium, Config config);
  Station(const Station&) = delete;
  Station& operator=(const Station&) = delete;

  StationId id() const { return cfg_.id; }
  void set_destination(StationId dst) { dst_ = dst; }
  StationId destination() const { return dst_; }
  void set_observer(MacObserver* observer) { observer_ = observer; }
  /// Called after the head packet leaves the queue (ACKed or dropped).
  void set_dequeue_hook(std::function<void()> hook) { dequeue_hook_ = std::move(hook); }

  /// Schedules the periodic scheduler reset when Token-DCF is enabled.
  void start();

  EnqueueResult enqueue_packet(int bytes);
  /// Discards every queued packet and abandons any pending access attempt.
  void flush_queue();

  Phase phase() const;
  int cw() const { return cw_; }
  int retries() const { return retries_; }
  /// Remaining backoff slots at now(), or -1 if no backoff is drawn.
  int backoff_slots() const;
  std::size_t queue_length() const { return queue_.size(); }
  std::size_t queue_capacity() const { return static_cast<std::size_t>(cfg_.mac.queue_capacity); }
  const std::deque<Packet>& queue() const { return queue_; }
  bool channel_busy() const;
  SimTime nav_until() const { return nav_until_; }
  AccessPlan::Kind last_access() const { return last_access_; }

  TokenScheduler* token() { return token_ ? &*token_ : nullptr; }
  const TokenScheduler* token() const { return token_ ? &*token_ : nullptr; }

  std::uint64_t ignored_acks() const { return ignored_acks_; }

  // MediumListener
  void on_carrier_change(bool busy) override;
  void on_frame(const MacFrame& frame) override;
  void on_own_transmission_end(const MacFrame& frame) override;

 private:
  EventTarget self() const { return EventTarget{EventTarget::Kind::Station, cfg_.id}; }
  void maybe_start_access();
  void begin_contention();
  void start_timer();
  void freeze();
  void channel_changed();
  void on_backoff_expired();
  void transmit_head();
  void on_ack_timeout();
  void on_ack_received();
  void send_ack(StationId to);
  void pop_head();
  void schedule_period_reset();

  Simulator& sim_;
  Medium& medium_;
  Config cfg_;
  StationId dst_ = kNoStation;
  MacObserver* observer_ = nullptr;
  std::function<void()> dequeue_hook_;

  RandomStream backoff_rng_;
  RandomStream grant_rng_;
  std::optional<TokenScheduler> token_;
  CapacityFn capacity_;

  std::deque<Packet> queue_;
  std::uint64_t next_seq_ = 0;
  int cw_;
  int retries_ = 0;
  int backoff_slots_ = -1;

  bool contending_ = false;
  EventId timer_ = kNoEvent;
  SimTime timer_at_ = 0;
  SimTime countdown_start_ = 0;
  AccessPlan plan_;
  AccessPlan::Kind last_access_ = AccessPlan::Kind::DifsPlusSlots;

  bool phys_busy_ = false;
  bool last_busy_ = false;
  SimTime nav_until_ = 0;
  EventId nav_event_ = kNoEvent;
  bool sending_data_ = false;
  bool sending_ack_ = false;
  bool ack_pending_ = false;
  bool awaiting_ack_ = false;
  EventId ack_timeout_ = kNoEvent;

  Duration ack_airtime_;
  std::uint64_t ignored_acks_ = 0;
};

}  // namespace tokendcf
