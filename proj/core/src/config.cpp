#include "tokendcf/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace tokendcf {

std::string_view to_string(Protocol p) {
  return p == Protocol::Dcf ? "dcf" : "token_dcf";
}

ConfigError::ConfigError(std::string key, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string{}) +
                         (key.empty() ? std::string{} : "key '" + key + "': ") + message),
      key_(std::move(key)),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct BadValue {
  std::string message;
};

template <typename T>
T parse_number(std::string_view v) {
  T out{};
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end || v.empty()) {
    throw BadValue{"malformed value '" + std::string(v) + "'"};
  }
  return out;
}

int as_int(std::string_view v) { return parse_number<int>(v); }
double as_double(std::string_view v) { return parse_number<double>(v); }
std::int64_t as_i64(std::string_view v) { return parse_number<std::int64_t>(v); }

using Setter = std::function<void(ScenarioConfig&, std::string_view)>;

struct KeySpec {
  const char* section;
  const char* key;
  Setter set;
};

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      {"phy", "slot_time", [](ScenarioConfig& c, std::string_view v) { c.phy.slot_us = as_i64(v); }},
      {"phy", "sifs", [](ScenarioConfig& c, std::string_view v) { c.phy.sifs_us = as_i64(v); }},
      {"phy", "difs", [](ScenarioConfig& c, std::string_view v) { c.phy.difs_us = as_i64(v); }},
      {"phy", "preamble", [](ScenarioConfig& c, std::string_view v) { c.phy.preamble_us = as_i64(v); }},
      {"phy", "bit_rate", [](ScenarioConfig& c, std::string_view v) { c.phy.bit_rate_bps = as_i64(v); }},
      {"phy", "tx_range", [](ScenarioConfig& c, std::string_view v) { c.phy.tx_range_m = as_double(v); }},
      {"phy", "cs_range", [](ScenarioConfig& c, std::string_view v) { c.phy.cs_range_m = as_double(v); }},

      {"mac", "cw_min", [](ScenarioConfig& c, std::string_view v) { c.mac.cw_min = as_int(v); }},
      {"mac", "cw_max", [](ScenarioConfig& c, std::string_view v) { c.mac.cw_max = as_int(v); }},
      {"mac", "queue_capacity", [](ScenarioConfig& c, std::string_view v) { c.mac.queue_capacity = as_int(v); }},
      {"mac", "retry_limit", [](ScenarioConfig& c, std::string_view v) { c.mac.retry_limit = as_int(v); }},
      {"mac", "ack_timeout_guard", [](ScenarioConfig& c, std::string_view v) { c.mac.ack_timeout_guard_us = as_i64(v); }},
      {"mac", "data_header_bytes", [](ScenarioConfig& c, std::string_view v) { c.mac.data_header_bytes = as_int(v); }},
      {"mac", "ack_header_bytes", [](ScenarioConfig& c, std::string_view v) { c.mac.ack_header_bytes = as_int(v); }},
      {"mac", "token_header_bytes", [](ScenarioConfig& c, std::string_view v) { c.mac.token_header_bytes = as_int(v); }},

      {"token", "min_ratio", [](ScenarioConfig& c, std::string_view v) { c.token.min_ratio = as_double(v); }},
      {"token", "max_ratio", [](ScenarioConfig& c, std::string_view v) { c.token.max_ratio = as_double(v); }},
      {"token", "max_num", [](ScenarioConfig& c, std::string_view v) { c.token.max_num = as_int(v); }},
      {"token", "delta", [](ScenarioConfig& c, std::string_view v) { c.token.delta = as_double(v); }},
      {"token", "max_p", [](ScenarioConfig& c, std::string_view v) { c.token.max_p = as_double(v); }},
      {"token", "period", [](ScenarioConfig& c, std::string_view v) {
         const double s = as_double(v);
         if (!(s > 0.0)) throw BadValue{"must be > 0"};
         c.token.period_us = seconds_to_us(s);
       }},
      {"token", "policy", [](ScenarioConfig& c, std::string_view v) {
         if (v == "lqf") c.token.policy = SchedulingPolicy::Lqf;
         else if (v == "backpressure") c.token.policy = SchedulingPolicy::Backpressure;
         else throw BadValue{"expected lqf or backpressure"};
       }},

      {"traffic", "kind", [](ScenarioConfig& c, std::string_view v) {
         if (v == "full_buffer") c.traffic.kind = TrafficSpec::Kind::FullBuffer;
         else if (v == "pareto_on_off") c.traffic.kind = TrafficSpec::Kind::ParetoOnOff;
         else throw BadValue{"expected full_buffer or pareto_on_off"};
       }},
      {"traffic", "packet_size", [](ScenarioConfig& c, std::string_view v) { c.traffic.packet_size = as_int(v); }},
      {"traffic", "rate", [](ScenarioConfig& c, std::string_view v) { c.traffic.rate_bps = as_double(v); }},
      {"traffic", "on_mean", [](ScenarioConfig& c, std::string_view v) { c.traffic.on_mean_us = as_double(v); }},
      {"traffic", "off_mean", [](ScenarioConfig& c, std::string_view v) { c.traffic.off_mean_us = as_double(v); }},
      {"traffic", "shape", [](ScenarioConfig& c, std::string_view v) { c.traffic.shape = as_double(v); }},

      {"experiment", "scenario_id", [](ScenarioConfig& c, std::string_view v) {
         if (v.empty() || v.find(',') != std::string_view::npos) throw BadValue{"must be non-empty without commas"};
         c.scenario_id = std::string(v);
       }},
      {"experiment", "protocol", [](ScenarioConfig& c, std::string_view v) {
         if (v == "dcf") c.protocols = {Protocol::Dcf};
         else if (v == "token_dcf") c.protocols = {Protocol::TokenDcf};
         else if (v == "both") c.protocols = {Protocol::Dcf, Protocol::TokenDcf};
         else throw BadValue{"expected dcf, token_dcf or both"};
       }},
      {"experiment", "n_transmitters", [](ScenarioConfig& c, std::string_view v) { c.n_transmitters = as_int(v); }},
      {"experiment", "area_side", [](ScenarioConfig& c, std::string_view v) { c.area_side_m = as_double(v); }},
      {"experiment", "flows", [](ScenarioConfig& c, std::string_view v) {
         if (v == "single_hop") c.flows = FlowLayout::SingleHop;
         else if (v == "random_receivers") c.flows = FlowLayout::RandomReceivers;
         else throw BadValue{"expected single_hop or random_receivers"};
       }},
      {"experiment", "receiver_offset", [](ScenarioConfig& c, std::string_view v) { c.receiver_offset_m = as_double(v); }},
      {"experiment", "duration", [](ScenarioConfig& c, std::string_view v) { c.duration_s = as_double(v); }},
      {"experiment", "runs", [](ScenarioConfig& c, std::string_view v) { c.runs = as_int(v); }},
      {"experiment", "seed", [](ScenarioConfig& c, std::string_view v) { c.seed = parse_number<std::uint64_t>(v); }},
  };
  return table;
}

const KeySpec* find_key(std::string_view key) {
  const auto& t = key_table();
  auto it = std::find_if(t.begin(), t.end(), [key](const KeySpec& k) { return key == k.key; });
  return it == t.end() ? nullptr : &*it;
}

using LineMap = std::map<std::string, int, std::less<>>;

int line_of(const LineMap& lines, std::string_view key) {
  auto it = lines.find(key);
  return it == lines.end() ? 0 : it->second;
}

void check(bool ok, const LineMap& lines, const char* key, const std::string& msg) {
  if (!ok) throw ConfigError(key, line_of(lines, key), msg);
}

void validate_with_lines(const ScenarioConfig& c, const LineMap& l) {
  check(c.phy.slot_us > 0, l, "slot_time", "must be > 0");
  check(c.phy.sifs_us > 0, l, "sifs", "must be > 0");
  check(c.phy.difs_us > 0, l, "difs", "must be > 0");
  check(c.phy.preamble_us >= 0, l, "preamble", "must be >= 0");
  check(c.phy.bit_rate_bps > 0, l, "bit_rate", "must be > 0");
  check(c.phy.tx_range_m > 0.0, l, "tx_range", "must be > 0");
  check(c.phy.cs_range_m >= c.phy.tx_range_m, l, "cs_range", "must be >= tx_range");

  check(c.mac.cw_min >= 1, l, "cw_min", "must be >= 1");
  check(c.mac.cw_max >= c.mac.cw_min, l, "cw_max", "must be >= cw_min");
  check(c.mac.queue_capacity >= 1, l, "queue_capacity", "must be >= 1");
  check(c.mac.retry_limit >= 0, l, "retry_limit", "must be >= 0");
  check(c.mac.ack_timeout_guard_us >= 0, l, "ack_timeout_guard", "must be >= 0");
  check(c.mac.data_header_bytes >= 0, l, "data_header_bytes", "must be >= 0");
  check(c.mac.ack_header_bytes > 0, l, "ack_header_bytes", "must be > 0");
  check(c.mac.token_header_bytes >= 0, l, "token_header_bytes", "must be >= 0");

  check(c.token.min_ratio >= 0.0, l, "min_ratio", "must be >= 0");
  check(c.token.max_ratio > c.token.min_ratio, l, "max_ratio", "must be > min_ratio");
  check(c.token.max_ratio <= 1.0, l, "max_ratio", "must be <= 1");
  check(c.token.max_num >= 1, l, "max_num", "must be >= 1");
  check(c.token.delta > 0.0, l, "delta", "must be > 0");
  check(c.token.max_p >= c.token.delta, l, "max_p", "must be >= delta");
  check(c.token.max_p < 1.0, l, "max_p", "must be < 1");
  check(c.token.period_us > 0, l, "period", "must be > 0");

  check(c.traffic.packet_size > 0, l, "packet_size", "must be > 0");
  if (c.traffic.kind == TrafficSpec::Kind::ParetoOnOff) {
    check(c.traffic.rate_bps > 0.0, l, "rate", "must be > 0 for pareto_on_off traffic");
  }
  check(c.traffic.on_mean_us > 0.0, l, "on_mean", "must be > 0");
  check(c.traffic.off_mean_us > 0.0, l, "off_mean", "must be > 0");
  check(c.traffic.shape > 1.0, l, "shape", "must be > 1 (finite mean)");

  check(c.n_transmitters >= 1, l, "n_transmitters", "must be >= 1");
  check(c.area_side_m > 0.0, l, "area_side", "must be > 0");
  check(c.receiver_offset_m >= 0.0, l, "receiver_offset", "must be >= 0");
  check(c.duration_s > 0.0, l, "duration", "must be > 0");
  check(c.runs >= 1, l, "runs", "must be >= 1");
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  LineMap lines;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) {
      line = line.substr(0, c);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("", line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (config_keys().count(section) == 0) {
        throw ConfigError("", line_no, "unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const KeySpec* spec = find_key(key);
    if (spec == nullptr) throw ConfigError(key, line_no, "unknown key");
    if (section.empty()) throw ConfigError(key, line_no, "key outside of any section");
    if (section != spec->section) {
      throw ConfigError(key, line_no,
                        "belongs in [" + std::string(spec->section) + "], not [" + section + "]");
    }
    if (lines.count(key) != 0) throw ConfigError(key, line_no, "duplicate key");
    try {
      spec->set(cfg, value);
    } catch (const BadValue& e) {
      throw ConfigError(key, line_no, e.message);
    }
    lines.emplace(key, line_no);
  }
  validate_with_lines(cfg, lines);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value) {
  const KeySpec* spec = find_key(key);
  if (spec == nullptr) throw ConfigError(std::string(key), 0, "unknown key");
  ScenarioConfig next = config;
  try {
    spec->set(next, trim(value));
  } catch (const BadValue& e) {
    throw ConfigError(std::string(key), 0, e.message);
  }
  validate_with_lines(next, {});
  config = std::move(next);
}

void validate(const ScenarioConfig& config) { validate_with_lines(config, {}); }

const std::map<std::string, std::vector<std::string>>& config_keys() {
  static const auto keys = [] {
    std::map<std::string, std::vector<std::string>> m;
    for (const auto& k : key_table()) m[k.section].push_back(k.key);
    return m;
  }();
  return keys;
}

}  // namespace tokendcf
