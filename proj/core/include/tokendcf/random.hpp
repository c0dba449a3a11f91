#pragma once

#include <cstdint>
#include <random>

namespace tokendcf {

/// What a random stream is used for. Each (seed, run, owner, purpose) tuple
/// gets an independent stream, so adding a station or a new consumer does not
/// shift the draws seen by anyone else.
enum class StreamPurpose : std::uint32_t {
  Topology = 1,
  Backoff = 2,
  Grant = 3,
  Traffic = 4,
  Test = 99,
};

struct StreamId {
  std::uint64_t run = 0;
  std::int64_t owner = -1;  // station id, or -1 for network-wide streams
  StreamPurpose purpose = StreamPurpose::Test;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Mixes a base seed with a run index into a per-run seed.
std::uint64_t derive_run_seed(std::uint64_t base_seed, std::uint64_t run_index);

/// Reproducible random stream. Distributions are implemented here rather than
/// taken from <random> because the standard distributions are not required to
/// produce identical sequences across library implementations.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, StreamId id);
  explicit RandomStream(std::uint64_t seed) : RandomStream(seed, StreamId{}) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [lo, hi] inclusive. Requires lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform real in [0, 1).
  double uniform01();

  /// Pareto sample with the given mean; scale = mean * (shape - 1) / shape.
  /// Throws std::invalid_argument unless shape > 1 and mean > 0.
  double pareto(double mean, double shape);

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

double pareto_scale(double mean, double shape);

}  // namespace tokendcf
