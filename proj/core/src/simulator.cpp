#include "tokendcf/simulator.hpp"

#include <algorithm>
#include <stdexcept>

namespace tokendcf {

EventId Simulator::schedule(Duration delay, EventTarget target, Action action) {
  if (delay < 0) throw std::invalid_argument("Simulator::schedule: negative delay");
  return schedule_at(now_ + delay, target, std::move(action));
}

EventId Simulator::schedule_at(SimTime at, EventTarget target, Action action) {
  if (at < now_) throw std::invalid_argument("Simulator::schedule_at: time in the past");
  const EventId id = next_seq_++;
  status_.push_back(Status::Pending);
  heap_.push_back(Entry{at, id, target, std::move(action)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  ++pending_;
  return id;
}

bool Simulator::cancel(EventId id) {
  if (id >= status_.size() || status_[id] != Status::Pending) return false;
  status_[id] = Status::Cancelled;
  --pending_;
  return true;
}

bool Simulator::is_pending(EventId id) const {
  return id < status_.size() && status_[id] == Status::Pending;
}

std::uint64_t Simulator::run_until(SimTime t_end) {
  if (t_end < now_) throw std::invalid_argument("Simulator::run_until: horizon before now");
  std::uint64_t fired = 0;
  while (!heap_.empty() && heap_.front().fire_at <= t_end) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Entry e = std::move(heap_.back());
    heap_.pop_back();
    if (status_[e.seq] != Status::Pending) continue;
    status_[e.seq] = Status::Fired;
    --pending_;
    now_ = e.fire_at;
    if (tracing_) trace_.push_back(TraceEntry{e.fire_at, e.seq, e.target});
    ++fired;
    e.action();
  }
  now_ = t_end;
  return fired;
}

}  // namespace tokendcf
