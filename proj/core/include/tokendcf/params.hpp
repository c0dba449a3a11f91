#pragma once

#include <cstdint>

#include "tokendcf/sim_time.hpp"

namespace tokendcf {

// 802.11g OFDM timing at 54 Mbps.
struct PhyParams {
  Duration slot_us = 9;
  Duration sifs_us = 10;
  Duration difs_us = 28;
  Duration preamble_us = 16;
  std::int64_t bit_rate_bps = 54'000'000;
  double tx_range_m = 250.0;
  double cs_range_m = 550.0;
};

struct MacParams {
  int cw_min = 16;
  int cw_max = 1024;
  int queue_capacity = 50;
  int retry_limit = 7;
  Duration ack_timeout_guard_us = 20;
  int data_header_bytes = 34;
  int ack_header_bytes = 14;
  // Extra Data header bytes carried by Token-DCF: privileged id + queue length.
  int token_header_bytes = 4;
};

enum class SchedulingPolicy { Lqf, Backpressure };

struct TokenParams {
  double min_ratio = 0.2;
  double max_ratio = 0.8;
  int max_num = 20;
  double delta = 0.1;
  double max_p = 0.9;
  Duration period_us = 100'000;
  SchedulingPolicy policy = SchedulingPolicy::Lqf;
};

}  // namespace tokendcf
