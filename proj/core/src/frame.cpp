#include "tokendcf/frame.hpp"

#include <stdexcept>

namespace tokendcf {

Duration frame_airtime(const MacFrame& frame, const PhyParams& phy, const MacParams& mac) {
  if (phy.bit_rate_bps <= 0) throw std::invalid_argument("frame_airtime: bit rate must be > 0");
  std::int64_t bytes = 0;
  if (frame.kind == FrameKind::Ack) {
    bytes = mac.ack_header_bytes;
  } else {
    bytes = mac.data_header_bytes + frame.payload_bytes +
            (frame.token_header ? mac.token_header_bytes : 0);
  }
  const std::int64_t bits_times_million = 8 * bytes * kMicrosPerSecond;
  const std::int64_t body_us = (bits_times_million + phy.bit_rate_bps - 1) / phy.bit_rate_bps;
  return phy.preamble_us + body_us;
}

Duration ack_airtime(const PhyParams& phy, const MacParams& mac) {
  MacFrame ack;
  ack.kind = FrameKind::Ack;
  return frame_airtime(ack, phy, mac);
}

}  // namespace tokendcf
