#pragma once

#include <functional>
#include <map>
#include <vector>

#include "tokendcf/frame.hpp"
#include "tokendcf/params.hpp"
#include "tokendcf/random.hpp"

namespace tokendcf {

/// How a station waits for the channel before its next Data frame.
struct AccessPlan {
  enum class Kind { Sifs, DifsPlusSlots };
  Kind kind = Kind::DifsPlusSlots;
  int slots = 0;

  friend bool operator==(const AccessPlan&, const AccessPlan&) = default;
};

/// A privileged station with a Data frame at the head of its queue waits only
/// SIFS; everyone else waits DIFS plus its remaining backoff slots.
AccessPlan plan_access(bool flag, FrameKind head, int backoff_slots);

/// Link capacity used by the backpressure policy, in bits per second.
using CapacityFn = std::function<double(StationId)>;

/// Per-station Token-DCF scheduler: neighbour queue lengths learned by
/// overhearing, the active set, and the grant probability controller.
class TokenScheduler {
 public:
  TokenScheduler(StationId me, TokenParams params);

  StationId id() const { return me_; }
  const TokenParams& params() const { return params_; }

  /// p = 0, active = {me}, success = fail = 0. Flag and queue lengths survive.
  void period_reset();

  /// Counts src as a success if already active, otherwise as a failure and
  /// adds it; then moves p by delta when enough transmissions were seen.
  void adapt(StationId src);

  /// Highest-scoring active station; ties go to the lowest id. Ignores p.
  StationId best_candidate(int own_queue_len, const CapacityFn& capacity) const;

  /// With probability p the best candidate, otherwise kNoStation.
  StationId select_privileged(int own_queue_len, const CapacityFn& capacity,
                              RandomStream& rng) const;

  /// Fills the scheduling header of an outgoing frame. Data frames name the
  /// next privileged station and carry the queue length; the flag tracks
  /// whether this station granted itself. Non-data frames are left untouched.
  void on_transmit_data(MacFrame& frame, int own_queue_len, const CapacityFn& capacity,
                        RandomStream& rng);

  /// Processes a decoded Data frame from a neighbour.
  void on_receive_or_overhear(const MacFrame& frame);

  bool flag() const { return flag_; }
  void clear_flag() { flag_ = false; }
  double p() const { return p_; }
  int success() const { return success_; }
  int fail() const { return fail_; }
  const std::vector<StationId>& active() const { return active_; }
  bool is_active(StationId s) const;
  const std::map<StationId, int>& q_len_map() const { return q_len_; }
  int known_queue(StationId s) const;

  // Test access.
  void set_p(double p) { p_ = p; }
  void set_flag(bool f) { flag_ = f; }

 private:
  StationId me_;
  TokenParams params_;
  double p_ = 0.0;
  std::vector<StationId> active_;  // sorted
  int success_ = 0;
  int fail_ = 0;
  bool flag_ = false;
  std::map<StationId, int> q_len_;
};

}  // namespace tokendcf
