#pragma once

#include <cstdint>

#include "tokendcf/params.hpp"
#include "tokendcf/sim_time.hpp"

namespace tokendcf {

enum class FrameKind : std::uint8_t { Data, Ack };

struct MacFrame {
  FrameKind kind = FrameKind::Data;
  StationId src = kNoStation;
  StationId dst = kNoStation;
  int payload_bytes = 0;
  std::uint64_t seq = 0;
  // Token-DCF header. Acks leave these at their defaults.
  StationId privileged = kNoStation;
  int q_len = 0;
  bool token_header = false;
  // Duration field: how long after this frame ends the exchange keeps the
  // medium reserved (SIFS + ACK for unicast Data, 0 for Ack).
  Duration nav_us = 0;
};

/// preamble + ceil(8 * (header + payload) / bit_rate), in whole microseconds.
Duration frame_airtime(const MacFrame& frame, const PhyParams& phy, const MacParams& mac);

Duration ack_airtime(const PhyParams& phy, const MacParams& mac);

}  // namespace tokendcf
