#include "tokendcf/random.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tokendcf {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, std::uint64_t run_index) {
  return splitmix64(splitmix64(base_seed) ^ (run_index * 0xd1b54a32d192ed03ULL));
}

namespace {

std::uint64_t stream_seed(std::uint64_t seed, const StreamId& id) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ id.run);
  h = splitmix64(h ^ static_cast<std::uint64_t>(id.owner));
  h = splitmix64(h ^ static_cast<std::uint64_t>(id.purpose));
  return h;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, StreamId id) : engine_(stream_seed(seed, id)) {}

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) {
    return static_cast<std::int64_t>(engine_());
  }
  const std::uint64_t range = span + 1;
  // Rejection sampling: discard the tail that would bias the modulo.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % range + 1) % range;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return lo + static_cast<std::int64_t>(x % range);
}

double RandomStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double pareto_scale(double mean, double shape) {
  if (!(shape > 1.0)) throw std::invalid_argument("pareto: shape must be > 1");
  if (!(mean > 0.0)) throw std::invalid_argument("pareto: mean must be > 0");
  return mean * (shape - 1.0) / shape;
}

double RandomStream::pareto(double mean, double shape) {
  const double scale = pareto_scale(mean, shape);
  // 1 - U lies in (0, 1], so the power is finite.
  const double u = 1.0 - uniform01();
  return scale / std::pow(u, 1.0 / shape);
}

}  // namespace tokendcf
