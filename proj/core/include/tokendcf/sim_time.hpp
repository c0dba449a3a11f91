#pragma once

#include <cstdint>

namespace tokendcf {

/// Virtual time in whole microseconds.
using SimTime = std::int64_t;
using Duration = std::int64_t;

using StationId = std::int32_t;
inline constexpr StationId kNoStation = -1;

inline constexpr SimTime kMicrosPerSecond = 1'000'000;

constexpr SimTime seconds_to_us(double s) {
  return static_cast<SimTime>(s * static_cast<double>(kMicrosPerSecond) + 0.5);
}

}  // namespace tokendcf
