#include "tokendcf/traffic.hpp"

#include <cmath>
#include <stdexcept>

namespace tokendcf {

void validate(const TrafficSpec& spec) {
  if (spec.packet_size <= 0) throw std::invalid_argument("traffic: packet_size must be > 0");
  if (spec.kind == TrafficSpec::Kind::ParetoOnOff) {
    if (!(spec.rate_bps > 0.0)) throw std::invalid_argument("traffic: rate must be > 0");
    if (!(spec.on_mean_us > 0.0) || !(spec.off_mean_us > 0.0)) {
      throw std::invalid_argument("traffic: on/off means must be > 0");
    }
    if (!(spec.shape > 1.0)) throw std::invalid_argument("traffic: shape must be > 1");
  }
}

ParetoOnOffProcess::ParetoOnOffProcess(const TrafficSpec& spec, RandomStream rng)
    : spec_(spec), rng_(std::move(rng)) {
  validate(spec_);
  interval_us_ = spec_.packet_size * 8.0 / spec_.rate_bps * 1e6;
  phase_end_ = rng_.pareto(spec_.on_mean_us, spec_.shape);
}

double ParetoOnOffProcess::next() {
  for (;;) {
    const double need = interval_us_ - credit_;
    if (cursor_ + need <= phase_end_) {
      cursor_ += need;
      credit_ = 0.0;
      return cursor_;
    }
    credit_ += phase_end_ - cursor_;
    const double off_end = phase_end_ + rng_.pareto(spec_.off_mean_us, spec_.shape);
    cursor_ = off_end;
    phase_end_ = off_end + rng_.pareto(spec_.on_mean_us, spec_.shape);
  }
}

TrafficSource::TrafficSource(Simulator& sim, Station& station, TrafficSpec spec,
                             RandomStream rng)
    : sim_(sim), station_(station), spec_(spec) {
  validate(spec_);
  if (spec_.kind == TrafficSpec::Kind::ParetoOnOff) process_.emplace(spec_, std::move(rng));
}

void TrafficSource::attach() {
  if (spec_.kind == TrafficSpec::Kind::FullBuffer) {
    station_.set_dequeue_hook([this] { refill(); });
    refill();
  } else {
    schedule_next();
  }
}

std::optional<SimTime> TrafficSource::next_arrival() const { return next_at_; }

void TrafficSource::refill() {
  while (station_.queue_length() < station_.queue_capacity()) {
    station_.enqueue_packet(spec_.packet_size);
    ++generated_;
  }
}

void TrafficSource::schedule_next() {
  const auto at = static_cast<SimTime>(std::llround(process_->next()));
  next_at_ = std::max(at, sim_.now());
  sim_.schedule_at(*next_at_, EventTarget{EventTarget::Kind::Controller, station_.id()}, [this] {
    ++generated_;
    station_.enqueue_packet(spec_.packet_size);
    schedule_next();
  });
}

}  // namespace tokendcf
