#include "tokendcf/token_scheduler.hpp"

#include <algorithm>

namespace tokendcf {

AccessPlan plan_access(bool flag, FrameKind head, int backoff_slots) {
  if (flag && head == FrameKind::Data) return AccessPlan{AccessPlan::Kind::Sifs, 0};
  return AccessPlan{AccessPlan::Kind::DifsPlusSlots, backoff_slots};
}

TokenScheduler::TokenScheduler(StationId me, TokenParams params) : me_(me), params_(params) {
  period_reset();
}

void TokenScheduler::period_reset() {
  p_ = 0.0;
  active_.assign(1, me_);
  success_ = 0;
  fail_ = 0;
}

bool TokenScheduler::is_active(StationId s) const {
  return std::binary_search(active_.begin(), active_.end(), s);
}

int TokenScheduler::known_queue(StationId s) const {
  auto it = q_len_.find(s);
  return it == q_len_.end() ? 0 : it->second;
}

void TokenScheduler::adapt(StationId src) {
  auto pos = std::lower_bound(active_.begin(), active_.end(), src);
  if (pos == active_.end() || *pos != src) {
    ++fail_;
    active_.insert(pos, src);
  } else {
    ++success_;
  }

  const int seen = success_ + fail_;
  if (seen < params_.max_num) return;
  const double ratio = static_cast<double>(success_) / static_cast<double>(seen);
  if (ratio >= params_.max_ratio) {
    // Capped at max_p rather than overshooting by one step.
    if (p_ <= params_.max_p) p_ = std::min(p_ + params_.delta, params_.max_p);
    success_ = 0;
    fail_ = 0;
  }
  if (ratio <= params_.min_ratio) {
    if (p_ >= params_.delta) p_ -= params_.delta;
    success_ = 0;
    fail_ = 0;
  }
}

StationId TokenScheduler::best_candidate(int own_queue_len, const CapacityFn& capacity) const {
  StationId best = kNoStation;
  double best_score = -1.0;
  for (StationId s : active_) {
    const double q = s == me_ ? own_queue_len : known_queue(s);
    double score = q;
    if (params_.policy == SchedulingPolicy::Backpressure) score = q * capacity(s);
    if (score > best_score) {
      best_score = score;
      best = s;
    }
  }
  return best;
}

StationId TokenScheduler::select_privileged(int own_queue_len, const CapacityFn& capacity,
                                            RandomStream& rng) const {
  if (p_ <= 0.0 || !rng.bernoulli(p_)) return kNoStation;
  return best_candidate(own_queue_len, capacity);
}

void TokenScheduler::on_transmit_data(MacFrame& frame, int own_queue_len,
                                      const CapacityFn& capacity, RandomStream& rng) {
  if (frame.kind != FrameKind::Data) {
    frame.privileged = kNoStation;
    return;
  }
  frame.token_header = true;
  frame.q_len = own_queue_len;
  frame.privileged = select_privileged(own_queue_len, capacity, rng);
  flag_ = frame.privileged == me_;
  adapt(me_);
}

void TokenScheduler::on_receive_or_overhear(const MacFrame& frame) {
  if (frame.kind != FrameKind::Data) return;
  flag_ = frame.privileged == me_;
  adapt(frame.src);
  q_len_[frame.src] = frame.q_len;
}

}  // namespace tokendcf
