// Acceptance runner. Prints one PASS/FAIL line per criterion; exit status is
// nonzero if any selected criterion fails.
//
//   tokendcf_acceptance                 all criteria
//   tokendcf_acceptance --criterion 4   just one

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "properties.hpp"
#include "tokendcf/experiment.hpp"
#include "tokendcf/frame.hpp"
#include "tokendcf/network.hpp"
#include "tokendcf/token_scheduler.hpp"

using namespace tokendcf;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Standard setup: 30 s runs averaged over 5 topologies.
ScenarioConfig standard_setup(int n_tx, double area, int bytes) {
  ScenarioConfig c;
  c.n_transmitters = n_tx;
  c.area_side_m = area;
  c.traffic.packet_size = bytes;
  c.duration_s = 30.0;
  c.runs = 5;
  c.seed = 1;
  return c;
}

struct Pair {
  MetricsReport dcf;
  MetricsReport tok;
  double seconds;  // wall time for both protocols
};

// Scenario results are shared between criteria.
std::map<std::string, Pair> g_cache;

Pair run_pair(const ScenarioConfig& c) {
  const std::string key = fmt("%d/%g/%d/%d/%g", c.n_transmitters, c.area_side_m,
                              c.traffic.packet_size, static_cast<int>(c.traffic.kind),
                              c.traffic.rate_bps);
  if (auto it = g_cache.find(key); it != g_cache.end()) return it->second;
  const auto t0 = std::chrono::steady_clock::now();
  Pair p;
  p.dcf = run_scenario(c, Protocol::Dcf).average;
  p.tok = run_scenario(c, Protocol::TokenDcf).average;
  p.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  g_cache.emplace(key, p);
  return p;
}

double ratio(double a, double b) { return b > 0 ? a / b : std::nan(""); }

Outcome c1() {
  const Pair p = run_pair(standard_setup(20, 150, 500));
  const double r = ratio(p.tok.throughput_bps, p.dcf.throughput_bps);
  return {r >= 2.0 && p.seconds < 120.0,
          fmt("500 B, 20 tx: dcf %.2f Mbps, token %.2f Mbps, ratio %.3f (need >= 2.0); "
              "wall %.1f s (need < 120)",
              p.dcf.throughput_bps / 1e6, p.tok.throughput_bps / 1e6, r, p.seconds)};
}

Outcome c2() {
  const Pair small = run_pair(standard_setup(20, 150, 500));
  const Pair big = run_pair(standard_setup(20, 150, 1500));
  const double r500 = ratio(small.tok.throughput_bps, small.dcf.throughput_bps);
  const double r1500 = ratio(big.tok.throughput_bps, big.dcf.throughput_bps);
  return {r1500 >= 1.4 && r1500 <= 2.3 && r1500 < r500,
          fmt("1500 B: dcf %.2f Mbps, token %.2f Mbps, ratio %.3f (need [1.4, 2.3]); "
              "500 B ratio %.3f (need 1500 B ratio below it)",
              big.dcf.throughput_bps / 1e6, big.tok.throughput_bps / 1e6, r1500, r500)};
}

Outcome c3() {
  const Pair p = run_pair(standard_setup(20, 150, 500));
  if (!p.dcf.access_delay_us || !p.tok.access_delay_us) return {false, "no delay samples"};
  const double r = *p.tok.access_delay_us / *p.dcf.access_delay_us;
  return {r <= 0.6, fmt("500 B, 20 tx: dcf %.1f ms, token %.1f ms, ratio %.3f (need <= 0.6)",
                        *p.dcf.access_delay_us / 1e3, *p.tok.access_delay_us / 1e3, r)};
}

Outcome c4() {
  bool ok = true;
  std::string detail;
  for (int n : {10, 15, 20, 25, 30}) {
    const Pair p = run_pair(standard_setup(n, 150, 500));
    const double d = p.dcf.idle_slots.value_or(std::nan(""));
    const double t = p.tok.idle_slots.value_or(std::nan(""));
    const bool good = t <= 3.0 && t <= 0.3 * d;
    ok = ok && good;
    detail += fmt("%sn=%d dcf %.2f token %.2f (x%.2f)", detail.empty() ? "" : ", ", n, d, t,
                  t / d);
  }
  return {ok, "idle slots, need token <= 3 and <= 0.3x dcf: " + detail};
}

Outcome c5() {
  bool ok = true;
  std::string detail;
  double prev_d = -1, prev_t = -1;
  for (int n : {5, 10, 15, 20, 25, 30}) {
    const Pair p = run_pair(standard_setup(n, 150, 500));
    const double d = p.dcf.collision_freq.value_or(std::nan(""));
    const double t = p.tok.collision_freq.value_or(std::nan(""));
    const bool good = t < d && d >= prev_d && t >= prev_t;
    ok = ok && good;
    prev_d = d;
    prev_t = t;
    detail += fmt("%sn=%d dcf %.3f token %.3f%s", detail.empty() ? "" : ", ", n, d, t,
                  good ? "" : " (!)");
  }
  return {ok, "collision frequency, need token < dcf and both non-decreasing: " + detail};
}

Outcome c6() {
  const Pair p = run_pair(standard_setup(20, 800, 1500));
  const double r = ratio(p.tok.throughput_bps, p.dcf.throughput_bps);
  const double dr = *p.tok.access_delay_us / *p.dcf.access_delay_us;
  return {r >= 1.5 && dr <= 0.7,
          fmt("800 m, 1500 B, 20 flows: dcf %.2f Mbps, token %.2f Mbps, ratio %.3f "
              "(need >= 1.5); delay ratio %.3f (need <= 0.7)",
              p.dcf.throughput_bps / 1e6, p.tok.throughput_bps / 1e6, r, dr)};
}

Outcome c7() {
  auto pareto = [](double rate) {
    ScenarioConfig c = standard_setup(20, 150, 1500);
    c.traffic.kind = TrafficSpec::Kind::ParetoOnOff;
    c.traffic.rate_bps = rate;
    return c;
  };
  const Pair low = run_pair(pareto(1e3));
  const Pair high = run_pair(pareto(1e8));
  const double gap = std::abs(low.tok.throughput_bps - low.dcf.throughput_bps) /
                     std::max(low.tok.throughput_bps, low.dcf.throughput_bps);
  const double r = ratio(high.tok.throughput_bps, high.dcf.throughput_bps);
  return {gap <= 0.05 && r >= 1.6,
          fmt("1e3 bps: dcf %.0f bps, token %.0f bps, gap %.2f%% (need <= 5%%); "
              "1e8 bps: dcf %.2f Mbps, token %.2f Mbps, ratio %.3f (need >= 1.6)",
              low.dcf.throughput_bps, low.tok.throughput_bps, gap * 100,
              high.dcf.throughput_bps / 1e6, high.tok.throughput_bps / 1e6, r)};
}

Outcome c8() {
  bool ok = true;
  std::string detail;
  for (int bytes : {500, 1500}) {
    ScenarioConfig c = standard_setup(1, 150, bytes);
    c.runs = 1;
    const MetricsReport m = run_scenario(c, Protocol::Dcf).average;
    MacFrame d;
    d.payload_bytes = bytes;
    const double eb = c.mac.cw_min / 2.0;  // mean of uniform [0, CWmin]
    const double cycle = static_cast<double>(c.phy.difs_us) + eb * c.phy.slot_us +
                         static_cast<double>(frame_airtime(d, c.phy, c.mac)) +
                         static_cast<double>(c.phy.sifs_us) +
                         static_cast<double>(ack_airtime(c.phy, c.mac));
    const double expect = bytes * 8.0 / (cycle * 1e-6);
    const double err = std::abs(m.throughput_bps - expect) / expect;
    ok = ok && err <= 0.02;
    detail += fmt("%s%d B: measured %.3f Mbps, model %.3f Mbps, error %.2f%%",
                  detail.empty() ? "" : "; ", bytes, m.throughput_bps / 1e6, expect / 1e6,
                  err * 100);
  }
  return {ok, detail + " (need <= 2%)"};
}

// Adapt rule written out directly, with p capped at max_p.
struct AdaptOracle {
  TokenParams tp;
  StationId me;
  double p = 0.0;
  int success = 0, fail = 0;
  std::set<StationId> active;

  void reset() {
    p = 0.0;
    success = fail = 0;
    active = {me};
  }
  void event(StationId src) {
    if (active.count(src) == 0) {
      fail += 1;
      active.insert(src);
    } else {
      success += 1;
    }
    if (success + fail >= tp.max_num) {
      const double ratio = static_cast<double>(success) / (success + fail);
      if (ratio >= tp.max_ratio) {
        if (p <= tp.max_p) p = std::min(p + tp.delta, tp.max_p);
        success = fail = 0;
      }
      if (ratio <= tp.min_ratio) {
        if (p >= tp.delta) p = p - tp.delta;
        success = fail = 0;
      }
    }
  }
};

Outcome c9() {
  RandomStream rng(20260101, StreamId{0, -1, StreamPurpose::Test});
  const long sequences = 1'000'000;
  long events = 0, mismatches = 0, out_of_range = 0;
  for (long s = 0; s < sequences; ++s) {
    TokenParams tp;
    tp.max_num = static_cast<int>(rng.uniform_int(1, 30));
    tp.min_ratio = 0.05 * static_cast<double>(rng.uniform_int(0, 8));
    tp.max_ratio = tp.min_ratio + 0.05 * static_cast<double>(rng.uniform_int(1, 20 - 4));
    if (tp.max_ratio > 1.0) tp.max_ratio = 1.0;
    tp.delta = 0.05 * static_cast<double>(rng.uniform_int(1, 6));
    tp.max_p = std::min(0.95, tp.delta * static_cast<double>(rng.uniform_int(1, 10)));
    const StationId me = static_cast<StationId>(rng.uniform_int(0, 9));
    const int pool = static_cast<int>(rng.uniform_int(1, 40));
    const int len = static_cast<int>(rng.uniform_int(1, 120));

    TokenScheduler impl(me, tp);
    AdaptOracle ref{tp, me};
    ref.reset();
    for (int e = 0; e < len; ++e) {
      if (rng.uniform_int(0, 99) == 0) {
        impl.period_reset();
        ref.reset();
      } else {
        // favour already-known stations so p climbs as well as falls
        const StationId src = rng.uniform01() < 0.7 ? static_cast<StationId>(rng.uniform_int(0, 2))
                                                    : static_cast<StationId>(rng.uniform_int(0, pool));
        impl.adapt(src);
        ref.event(src);
      }
      ++events;
      const std::vector<StationId> ref_active(ref.active.begin(), ref.active.end());
      if (impl.p() != ref.p || impl.success() != ref.success || impl.fail() != ref.fail ||
          impl.active() != ref_active) {
        ++mismatches;
      }
      if (impl.p() < 0.0 || impl.p() > tp.max_p) ++out_of_range;
    }
  }
  return {mismatches == 0 && out_of_range == 0,
          fmt("%ld sequences, %ld events: %ld state mismatches, %ld p out of [0, maxP]",
              sequences, events, mismatches, out_of_range)};
}

Outcome c10() {
  using namespace tokendcf::testing;
  std::vector<std::string> parts;
  bool ok = true;
  auto note = [&](bool good, const std::string& what) {
    ok = ok && good;
    parts.push_back((good ? "ok " : "FAILED ") + what);
  };

  {
    ScenarioConfig c = standard_setup(10, 150, 500);
    c.duration_s = 2.0;
    c.runs = 2;
    const std::string a = csv_text(run_scenario(c));
    const std::string b = csv_text(run_scenario(c));
    note(a == b, fmt("determinism (%zu CSV bytes)", a.size()));
  }
  {
    long violations = 0, stations = 0;
    for (Protocol proto : {Protocol::Dcf, Protocol::TokenDcf}) {
      for (double area : {150.0, 800.0}) {
        ScenarioConfig c = standard_setup(20, area, 1500);
        c.traffic.kind = TrafficSpec::Kind::ParetoOnOff;
        c.traffic.rate_bps = 5e6;
        c.duration_s = 3.0;
        const auto r = check_conservation(c, proto, derive_run_seed(c.seed, 0));
        violations += r.violations;
        stations += r.stations_checked;
      }
    }
    note(violations == 0, fmt("conservation (%ld stations)", stations));
  }
  {
    ScenarioConfig c = standard_setup(20, 150, 500);
    c.duration_s = 5.0;
    const auto r = check_privilege(c, derive_run_seed(c.seed, 0));
    note(r.flag_violations == 0 && r.delivered_data > 0,
         fmt("single privilege (%ld delivered Data frames)", r.delivered_data));
    note(r.sifs_gap_violations == 0 && r.sifs_after_ack > 0,
         fmt("SIFS gap (%ld privileged accesses after an Ack)", r.sifs_after_ack));
  }
  {
    ScenarioConfig c = standard_setup(20, 150, 500);
    c.duration_s = 3.0;
    c.token.max_num = 1'000'000'000;
    const auto d = channel_trace(c, Protocol::Dcf, derive_run_seed(c.seed, 0));
    const auto t = channel_trace(c, Protocol::TokenDcf, derive_run_seed(c.seed, 0));
    note(d == t && !d.empty(), fmt("p=0 trace equivalence (%zu frames)", d.size()));
  }
  {
    long frames = 0, mismatches = 0;
    for (double area : {150.0, 800.0, 1500.0}) {
      for (Protocol proto : {Protocol::Dcf, Protocol::TokenDcf}) {
        ScenarioConfig c = standard_setup(20, area, 1500);
        c.duration_s = 1.0;
        Network net(c, proto, derive_run_seed(c.seed, 0));
        net.medium().enable_log(true);
        net.advance_to(c.horizon() + 20'000);
        const auto r = replay_medium_log(net.medium(), c.horizon());
        frames += r.frames;
        mismatches += r.mismatches;
      }
    }
    note(mismatches == 0, fmt("medium replay (%ld frames)", frames));
  }
  std::string detail;
  for (const auto& s : parts) detail += (detail.empty() ? "" : "; ") + s;
  return {ok, detail};
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria = {
    {"single-hop saturated gain, 500 B", c1},
    {"single-hop saturated gain, 1500 B", c2},
    {"access delay reduction, 500 B", c3},
    {"idle slot collapse", c4},
    {"collision ordering", c5},
    {"multi-hop network gain", c6},
    {"unsaturated convergence", c7},
    {"DCF analytic sanity", c8},
    {"Adapt controller oracle", c9},
    {"property suite", c10},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(kCriteria.size())) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = kCriteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                kCriteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
