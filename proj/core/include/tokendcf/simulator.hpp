#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tokendcf/sim_time.hpp"

namespace tokendcf {

using EventId = std::uint64_t;
inline constexpr EventId kNoEvent = ~EventId{0};

/// Who an event is addressed to. Only used for tracing.
struct EventTarget {
  enum class Kind : std::uint8_t { Station, Medium, Controller };
  Kind kind = Kind::Controller;
  StationId station = kNoStation;
};

struct TraceEntry {
  SimTime fire_at;
  EventId seq;
  EventTarget target;

  friend bool operator==(const TraceEntry& a, const TraceEntry& b) {
    return a.fire_at == b.fire_at && a.seq == b.seq && a.target.kind == b.target.kind &&
           a.target.station == b.target.station;
  }
};

/// Single-threaded discrete-event engine. Events are delivered in
/// (fire_at, seq) order; seq is assigned at scheduling time, so two events
/// scheduled for the same instant fire in scheduling order.
class Simulator {
 public:
  using Action = std::function<void()>;

  SimTime now() const { return now_; }

  EventId schedule(Duration delay, EventTarget target, Action action);
  EventId schedule_at(SimTime at, EventTarget target, Action action);

  /// True iff the event was pending. A cancelled event never fires.
  bool cancel(EventId id);
  bool is_pending(EventId id) const;

  /// Delivers every event with fire_at <= t_end, then sets now() to t_end.
  std::uint64_t run_until(SimTime t_end);

  std::size_t pending_count() const { return pending_; }

  void enable_trace(bool on) { tracing_ = on; }
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  enum class Status : std::uint8_t { Pending, Fired, Cancelled };

  struct Entry {
    SimTime fire_at;
    EventId seq;
    EventTarget target;
    Action action;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.fire_at != b.fire_at ? a.fire_at > b.fire_at : a.seq > b.seq;
    }
  };

  SimTime now_ = 0;
  EventId next_seq_ = 0;
  std::size_t pending_ = 0;
  std::vector<Entry> heap_;
  std::vector<Status> status_;
  bool tracing_ = false;
  std::vector<TraceEntry> trace_;
};

}  // namespace tokendcf
