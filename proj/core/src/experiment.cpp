#include "tokendcf/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tokendcf/network.hpp"
#include "tokendcf/random.hpp"

namespace tokendcf {

namespace {

void accumulate(std::optional<double>& sum, int& count, const std::optional<double>& v) {
  if (!v) return;
  sum = sum.value_or(0.0) + *v;
  ++count;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt_double(*v) : std::string{}; }

std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

const char* kHeader =
    "scenario_id,protocol,n_tx,area,pkt_size,run,throughput_bps,access_delay_us,idle_slots,"
    "collision_freq,drops";

void write_row(std::ostream& out, const ResultRow& row, const std::string& run,
               const MetricsReport& r) {
  out << row.scenario_id << ',' << to_string(row.protocol) << ',' << row.n_tx << ','
      << fmt_double(row.area) << ',' << row.pkt_size << ',' << run << ','
      << fmt_double(r.throughput_bps) << ',' << fmt_opt(r.access_delay_us) << ','
      << fmt_opt(r.idle_slots) << ',' << fmt_opt(r.collision_freq) << ',' << fmt_double(r.drops)
      << '\n';
}

}  // namespace

MetricsReport average_reports(const std::vector<MetricsReport>& runs) {
  MetricsReport avg;
  if (runs.empty()) return avg;
  double thr = 0.0;
  double drops = 0.0;
  std::optional<double> delay, idle, coll;
  int nd = 0, ni = 0, nc = 0;
  for (const auto& r : runs) {
    thr += r.throughput_bps;
    drops += r.drops;
    accumulate(delay, nd, r.access_delay_us);
    accumulate(idle, ni, r.idle_slots);
    accumulate(coll, nc, r.collision_freq);
  }
  const auto n = static_cast<double>(runs.size());
  avg.throughput_bps = thr / n;
  avg.drops = drops / n;
  if (delay) avg.access_delay_us = *delay / nd;
  if (idle) avg.idle_slots = *idle / ni;
  if (coll) avg.collision_freq = *coll / nc;
  return avg;
}

ResultRow run_scenario(const ScenarioConfig& config, Protocol protocol) {
  validate(config);
  ResultRow row;
  row.scenario_id = config.scenario_id;
  row.protocol = protocol;
  row.n_tx = config.n_transmitters;
  row.area = config.area_side_m;
  row.pkt_size = config.traffic.packet_size;
  for (int i = 0; i < config.runs; ++i) {
    Network net(config, protocol, derive_run_seed(config.seed, static_cast<std::uint64_t>(i)));
    row.per_run.push_back(net.run().report);
  }
  row.average = average_reports(row.per_run);
  return row;
}

std::vector<ResultRow> run_scenario(const ScenarioConfig& config) {
  std::vector<ResultRow> rows;
  for (Protocol p : config.protocols) rows.push_back(run_scenario(config, p));
  return rows;
}

std::vector<ResultRow> run_sweep(const ScenarioConfig& base, const std::string& param,
                                 const std::vector<std::string>& values) {
  if (values.empty()) throw std::invalid_argument("run_sweep: empty value list");
  std::vector<ScenarioConfig> configs;
  for (const auto& v : values) {
    ScenarioConfig cfg = base;
    apply_setting(cfg, param, v);
    cfg.scenario_id = base.scenario_id + ":" + param + "=" + v;
    configs.push_back(std::move(cfg));
  }
  std::vector<ResultRow> rows;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    for (Protocol p : {Protocol::Dcf, Protocol::TokenDcf}) {
      ResultRow row = run_scenario(configs[i], p);
      row.x_value = values[i];
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kHeader << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.per_run.size(); ++i) {
      write_row(out, row, std::to_string(i), row.per_run[i]);
    }
    write_row(out, row, "avg", row.average);
  }
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split(line, ',') != split(kHeader, ',')) {
    throw std::runtime_error("read_csv: missing or unexpected header");
  }
  std::vector<ResultRow> rows;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 11) {
      throw std::runtime_error("read_csv: line " + std::to_string(line_no) + ": expected 11 fields");
    }
    const auto key = std::make_pair(f[0], f[1]);
    auto [it, inserted] = index.emplace(key, rows.size());
    if (inserted) {
      ResultRow row;
      row.scenario_id = f[0];
      if (f[1] == "dcf") row.protocol = Protocol::Dcf;
      else if (f[1] == "token_dcf") row.protocol = Protocol::TokenDcf;
      else throw std::runtime_error("read_csv: unknown protocol '" + f[1] + "'");
      row.n_tx = std::stoi(f[2]);
      row.area = std::stod(f[3]);
      row.pkt_size = std::stoi(f[4]);
      rows.push_back(std::move(row));
    }
    MetricsReport r;
    r.throughput_bps = std::stod(f[6]);
    r.access_delay_us = parse_opt(f[7]);
    r.idle_slots = parse_opt(f[8]);
    r.collision_freq = parse_opt(f[9]);
    r.drops = std::stod(f[10]);
    ResultRow& row = rows[it->second];
    if (f[5] == "avg") row.average = r;
    else row.per_run.push_back(r);
  }
  return rows;
}

void write_outputs(const std::filesystem::path& dir, const std::vector<ResultRow>& rows) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "results.csv");
    if (!csv) throw std::runtime_error("cannot write " + (dir / "results.csv").string());
    write_csv(csv, rows);
  }
  struct Metric {
    const char* name;
    std::optional<double> (*get)(const MetricsReport&);
  };
  const Metric metrics[] = {
      {"throughput_bps", [](const MetricsReport& r) -> std::optional<double> { return r.throughput_bps; }},
      {"access_delay_us", [](const MetricsReport& r) { return r.access_delay_us; }},
      {"idle_slots", [](const MetricsReport& r) { return r.idle_slots; }},
      {"collision_freq", [](const MetricsReport& r) { return r.collision_freq; }},
  };
  for (Protocol p : {Protocol::Dcf, Protocol::TokenDcf}) {
    bool any = false;
    for (const auto& row : rows) any = any || row.protocol == p;
    if (!any) continue;
    for (const Metric& m : metrics) {
      std::ofstream dat(dir / (std::string(m.name) + "_" + std::string(to_string(p)) + ".dat"));
      for (const auto& row : rows) {
        if (row.protocol != p) continue;
        const auto v = m.get(row.average);
        if (!v) continue;
        dat << (row.x_value.empty() ? std::to_string(row.n_tx) : row.x_value) << ' '
            << fmt_double(*v) << '\n';
      }
    }
  }
}

std::vector<std::string> split_values(const std::string& csv) {
  std::vector<std::string> out;
  for (auto& v : split(csv, ',')) {
    const auto b = v.find_first_not_of(" \t");
    const auto e = v.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(v.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace tokendcf
