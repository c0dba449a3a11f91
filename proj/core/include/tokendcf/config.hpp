#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tokendcf/params.hpp"
#include "tokendcf/traffic.hpp"

namespace tokendcf {

enum class Protocol { Dcf, TokenDcf };
enum class FlowLayout { SingleHop, RandomReceivers };

std::string_view to_string(Protocol p);

struct ScenarioConfig {
  std::string scenario_id = "scenario";
  std::vector<Protocol> protocols = {Protocol::Dcf, Protocol::TokenDcf};
  int n_transmitters = 20;
  double area_side_m = 150.0;
  FlowLayout flows = FlowLayout::SingleHop;
  // Distance from a transmitter to its receiver for single-hop flows.
  double receiver_offset_m = 100.0;
  TrafficSpec traffic;
  double duration_s = 30.0;
  int runs = 5;
  std::uint64_t seed = 1;
  PhyParams phy;
  MacParams mac;
  TokenParams token;

  SimTime horizon() const { return seconds_to_us(duration_s); }
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& message);
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

/// Parses an INI-style file: `[section]` headers (phy, mac, token, traffic,
/// experiment) followed by `key = value` lines; `#` and `;` start comments.
/// Unset keys keep their defaults. Throws ConfigError naming the key and line.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

/// Sets one key (bare name, e.g. "n_transmitters") and re-validates.
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);

/// Checks every cross-field invariant. Throws ConfigError.
void validate(const ScenarioConfig& config);

/// All recognised keys, by section.
const std::map<std::string, std::vector<std::string>>& config_keys();

}  // namespace tokendcf
