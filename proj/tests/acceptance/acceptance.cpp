// Acceptance suite. Prints one PASS/FAIL line per criterion; with arguments,
// runs only the listed criterion numbers.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "manet/codec.hpp"
#include "manet/experiment.hpp"
#include "manet/metrics.hpp"
#include "manet/simulator.hpp"

using namespace manet;

namespace {

struct Outcome {
  bool pass = false;
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

Flow flow(NodeId src, NodeId dst, double start, double interval, double stop) {
  Flow f;
  f.src = src;
  f.dst = dst;
  f.start = start;
  f.interval = interval;
  f.stop = stop;
  return f;
}

Scenario fixed(std::vector<Point> positions, Protocol protocol, double field, double range = 250.0) {
  Scenario s;
  s.node_count = static_cast<std::uint32_t>(positions.size());
  s.positions = std::move(positions);
  s.mobility = MobilityModel::Static;
  s.field_x = field;
  s.field_y = field;
  s.radio_range = range;
  s.protocol = protocol;
  s.random_flows = 0;
  return s;
}

std::set<NodeId> route_keys(const Simulator& sim, NodeId node) {
  std::set<NodeId> keys;
  for (const auto& [dest, e] : dynamic_cast<const DymoRouter&>(sim.router(node)).table()) keys.insert(dest);
  return keys;
}

std::string show(const std::set<NodeId>& s) {
  std::string out = "{";
  for (NodeId n : s) out += (out.size() > 1 ? "," : "") + std::to_string(n);
  return out + "}";
}

std::string show(const std::vector<NodeId>& v) {
  std::string out;
  for (NodeId n : v) out += (out.empty() ? "" : "-") + std::to_string(n);
  return out;
}

// Eleven-node layout with source 1 and target 10; node 0 is parked out of reach.
// Range 250: links 1-2, 2-6, 6-10, 1-3, 1-4, 2-5, 10-7, 10-8, 8-9, 7-9.
std::vector<Point> eleven_nodes() {
  return {{1900, 1900}, {100, 500}, {300, 500}, {100, 300}, {0, 700}, {330, 720},
          {500, 500},   {900, 520}, {700, 300}, {900, 300}, {680, 520}};
}

// ---------------------------------------------------------------------------

Outcome ordinal_ranking() {
  SweepSpec spec;
  spec.base.node_count = 40;
  spec.base.field_x = spec.base.field_y = 800;
  spec.base.radio_range = 250;
  spec.base.random_flows = 10;
  spec.base.packet_size = 512;
  spec.base.interval = 0.1;
  spec.base.duration = 200;
  spec.protocols = {Protocol::Dymo, Protocol::Aodv, Protocol::Dsdv, Protocol::Dsr};
  spec.pause_times = {0, 20, 40, 60, 80, 100};
  for (std::uint64_t s = 1; s <= 10; ++s) spec.seeds.push_back(s);
  const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto points = aggregate_by_point(run_sweep(spec, jobs));

  auto mean = [&](const char* p, double pause, const Stat Aggregate::*m) {
    return (points.at({p, pause}).*m).mean;
  };
  int ro = 0, tp = 0, aeed = 0, pdf = 0;
  std::string values;
  for (double pause : spec.pause_times) {
    ro += mean("dymo", pause, &Aggregate::ro) < mean("aodv", pause, &Aggregate::ro) &&
          mean("aodv", pause, &Aggregate::ro) < mean("dsdv", pause, &Aggregate::ro);
    tp += mean("dymo", pause, &Aggregate::tp) > mean("aodv", pause, &Aggregate::tp);
    aeed += mean("dymo", pause, &Aggregate::aeed) < mean("aodv", pause, &Aggregate::aeed) &&
            mean("aodv", pause, &Aggregate::aeed) < mean("dsdv", pause, &Aggregate::aeed);
    pdf += mean("dymo", pause, &Aggregate::pdf) >= mean("aodv", pause, &Aggregate::pdf) &&
           mean("aodv", pause, &Aggregate::pdf) > mean("dsdv", pause, &Aggregate::pdf);
    values += fmt("\n    pause %3g: pdf dymo %.4f aodv %.4f dsdv %.4f | aeed dymo %.5f aodv %.5f dsdv %.5f | "
                  "ro dymo %.0f aodv %.0f dsdv %.0f | tp dymo %.0f aodv %.0f",
                  pause, mean("dymo", pause, &Aggregate::pdf), mean("aodv", pause, &Aggregate::pdf),
                  mean("dsdv", pause, &Aggregate::pdf), mean("dymo", pause, &Aggregate::aeed),
                  mean("aodv", pause, &Aggregate::aeed), mean("dsdv", pause, &Aggregate::aeed),
                  mean("dymo", pause, &Aggregate::ro), mean("aodv", pause, &Aggregate::ro),
                  mean("dsdv", pause, &Aggregate::ro), mean("dymo", pause, &Aggregate::tp),
                  mean("aodv", pause, &Aggregate::tp));
  }
  const bool pass = ro >= 4 && tp >= 4 && aeed >= 4 && pdf >= 4;
  return {pass, fmt("orderings held at RO %d/6, TP %d/6, AEED %d/6, PDF %d/6 (need 4/6 each)", ro, tp, aeed, pdf) +
                    values};
}

Outcome scripted_discovery() {
  Scenario s = fixed(eleven_nodes(), Protocol::Dymo, 2000);
  s.duration = 3;
  s.flows = {flow(1, 10, 1.0, 1.0, 1.5)};
  Simulator sim(s);
  std::vector<TraceRecord> trace;
  sim.set_trace_sink([&](const TraceRecord& r) { trace.push_back(r); });
  sim.run_until(1.5);

  const auto at6 = route_keys(sim, 6), at2 = route_keys(sim, 2);
  std::vector<NodeId> rreq_tx;
  for (const auto& r : trace) {
    if (r.kind == MessageKind::RREQ && (r.event == TraceEvent::Send || r.event == TraceEvent::Forward)) {
      rreq_tx.push_back(r.node);
    }
  }
  const std::set<NodeId> forwarders(rreq_tx.begin(), rreq_tx.end());
  const auto& delivered = sim.delivered();
  const bool pass = at6 == std::set<NodeId>{1, 2, 10} && at2 == std::set<NodeId>{1, 6, 10} &&
                    delivered.size() == 1 && delivered[0].hop_count == 3 &&
                    delivered[0].path == std::vector<NodeId>{1, 2, 6, 10} && rreq_tx.size() == forwarders.size() &&
                    forwarders == std::set<NodeId>{1, 2, 3, 4, 5, 6};
  return {pass, fmt("node6 %s node2 %s hop_count %d path %s RREQ transmissions %zu by %s", show(at6).c_str(),
                    show(at2).c_str(), delivered.empty() ? -1 : delivered[0].hop_count,
                    delivered.empty() ? "-" : show(delivered[0].path).c_str(), rreq_tx.size(),
                    show(forwarders).c_str())};
}

Outcome break_and_repair() {
  Scenario s = fixed(eleven_nodes(), Protocol::Dymo, 2000);
  s.duration = 8;
  s.flows = {flow(1, 10, 1.0, 0.1, 7.0)};
  // Node 6 slides away from 2 but stays within reach of 5 and 10.
  s.moves = {{6, 3.0, 3.01, {540, 700}}};

  std::vector<TraceRecord> trace;
  double rerr_at_1 = -1;
  {
    Simulator sim(s);
    sim.set_trace_sink([&](const TraceRecord& r) { trace.push_back(r); });
    sim.set_receive_observer([&](double t, NodeId node, NodeId, const Message& m, std::span<const NodeId>) {
      if (node == 1 && m.kind == MessageKind::RERR && rerr_at_1 < 0) rerr_at_1 = t;
    });
    sim.run();
  }

  double broke = -1;
  std::vector<std::pair<char, NodeId>> rerr_tx;
  std::vector<Unreachable> listed;
  for (const auto& r : trace) {
    if (broke < 0 && r.drop_reason == DropReason::LinkBreak && r.node == 2) broke = r.time;
    if (r.kind == MessageKind::RERR) rerr_tx.emplace_back(static_cast<char>(r.event), r.node);
  }

  // Replay to the instant node 1 handled the RERR and inspect its table.
  std::set<NodeId> at1_after;
  std::vector<NodeId> unreachable;
  if (rerr_at_1 >= 0) {
    Simulator replay(s);
    replay.set_receive_observer([&](double t, NodeId node, NodeId, const Message& m, std::span<const NodeId>) {
      if (node == 1 && m.kind == MessageKind::RERR && t == rerr_at_1) {
        for (const auto& u : m.unreachable) unreachable.push_back(u.dest);
      }
    });
    replay.run_until(rerr_at_1);
    at1_after = route_keys(replay, 1);
  }

  Simulator sim(s);
  sim.run();
  double resumed = -1;
  std::vector<NodeId> path;
  for (const auto& d : sim.delivered()) {
    if (d.sent > broke && broke >= 0) {
      resumed = d.received;
      path = d.path;
      break;
    }
  }
  const double tx = 535 * 8 / s.bitrate;
  const double limit = broke + 2 * s.protocol_config.dymo.rreq_wait + tx;
  const bool pass = broke >= 0 && rerr_tx == std::vector<std::pair<char, NodeId>>{{'s', 2}, {'f', 1}} &&
                    unreachable == std::vector<NodeId>{6, 10} && !at1_after.contains(6) &&
                    !at1_after.contains(10) && path == std::vector<NodeId>{1, 2, 5, 6, 10} && resumed >= 0 &&
                    resumed <= limit;
  std::string tx_list;
  for (const auto& [e, n] : rerr_tx) tx_list += fmt("%c@%u ", e, n);
  return {pass, fmt("break at %.6f; RERR transmissions %slisting %s; node1 routes after RERR %s; resumed %.6f via "
                    "%s (limit %.6f)",
                    broke, tx_list.c_str(), show(std::set<NodeId>(unreachable.begin(), unreachable.end())).c_str(),
                    show(at1_after).c_str(), resumed, show(path).c_str(), limit)};
}

std::vector<int> bfs(const std::vector<Point>& pos, double range, NodeId src) {
  std::vector<int> dist(pos.size(), -1);
  std::queue<NodeId> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    for (NodeId v = 0; v < pos.size(); ++v) {
      const double dx = pos[u].x - pos[v].x, dy = pos[u].y - pos[v].y;
      if (dist[v] < 0 && dx * dx + dy * dy <= range * range) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

Outcome bfs_oracle() {
  std::mt19937_64 gen(2024);
  int graphs = 0, pairs = 0, mismatches = 0;
  std::string first_bad;
  while (graphs < 50) {
    const int n = 5 + static_cast<int>(gen() % 21);
    std::uniform_real_distribution<double> coord(0, 700);
    std::vector<Point> pos(n);
    for (auto& p : pos) p = {coord(gen), coord(gen)};
    const auto from0 = bfs(pos, 250, 0);
    if (std::count(from0.begin(), from0.end(), -1) > 0) continue;  // not connected
    ++graphs;
    for (int k = 0; k < 5; ++k) {
      const NodeId src = gen() % n;
      NodeId dst = gen() % n;
      if (dst == src) dst = (dst + 1) % n;
      // Fresh network per pair: cached routes would let intermediate
      // replies splice non-shortest paths.
      Scenario s = fixed(pos, Protocol::Dymo, 700);
      s.duration = 2;
      s.flows = {flow(src, dst, 0.5, 1.0, 0.6)};
      Simulator sim(s);
      sim.run();
      const auto* route = dynamic_cast<const DymoRouter&>(sim.router(src)).table().find(dst);
      const int want = bfs(pos, 250, src)[dst];
      const int got = route ? route->hop_count : -1;
      const int hops = sim.delivered().size() == 1 ? sim.delivered()[0].hop_count : -1;
      ++pairs;
      if (got != want || hops != want) {
        ++mismatches;
        if (first_bad.empty()) first_bad = fmt(" first: graph %d %u->%u bfs %d route %d data %d", graphs, src, dst,
                                               want, got, hops);
      }
    }
  }
  return {mismatches == 0, fmt("%d graphs, %d pairs, %d mismatches%s", graphs, pairs, mismatches, first_bad.c_str())};
}

Outcome loop_freedom() {
  std::size_t delivered = 0, loops = 0, runs = 0;
  for (auto p : {Protocol::Dymo, Protocol::Aodv}) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      Scenario s;
      s.protocol = p;
      s.seed = seed;
      s.pause_time = 0;
      Simulator sim(s);
      sim.run();
      ++runs;
      for (const auto& d : sim.delivered()) {
        ++delivered;
        std::set<NodeId> seen(d.path.begin(), d.path.end());
        loops += seen.size() != d.path.size();
      }
    }
  }
  return {loops == 0 && delivered > 0,
          fmt("%zu runs, %zu delivered packets, %zu with a repeated node", runs, delivered, loops)};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "manet_acceptance_determinism";
  fs::create_directories(dir);
  std::vector<Scenario> scenarios;
  for (auto p : {Protocol::Dymo, Protocol::Aodv, Protocol::Dsdv, Protocol::Dsr}) {
    Scenario s;
    s.protocol = p;
    s.duration = 60;
    s.seed = 7;
    s.pause_time = 10;
    scenarios.push_back(s);
  }
  Scenario moving = fixed(eleven_nodes(), Protocol::Dymo, 2000);
  moving.duration = 8;
  moving.flows = {flow(1, 10, 1.0, 0.1, 7.0)};
  moving.moves = {{6, 3.0, 3.01, {540, 700}}};
  scenarios.push_back(moving);

  int identical = 0;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    std::string bytes[2];
    for (int k = 0; k < 2; ++k) {
      const auto path = dir / fmt("run%zu_%d.tr", i, k);
      {
        std::ofstream out(path, std::ios::binary);
        write_trace(out, run(scenarios[i]).trace);
      }
      std::ifstream in(path, std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      bytes[k] = ss.str();
    }
    identical += !bytes[0].empty() && bytes[0] == bytes[1];
  }
  fs::remove_all(dir);
  return {identical == 5, fmt("%d/5 scenarios byte-identical across two runs", identical)};
}

Outcome static_delivery() {
  std::mt19937_64 gen(77);
  int scenarios = 0;
  std::string detail;
  bool pass = true;
  while (scenarios < 5) {
    std::uniform_real_distribution<double> coord(0, 500);
    std::vector<Point> pos(10);
    for (auto& p : pos) p = {coord(gen), coord(gen)};
    const auto d = bfs(pos, 250, 0);
    if (std::count(d.begin(), d.end(), -1) > 0) continue;
    ++scenarios;
    for (auto p : {Protocol::Dymo, Protocol::Aodv}) {
      Scenario s = fixed(pos, p, 500);
      s.duration = 30;
      s.flows = {flow(0, 9, 1.0, 0.1, 25.0), flow(3, 6, 2.0, 0.1, 25.0), flow(8, 1, 3.0, 0.1, 25.0)};
      const auto m = compute_metrics(run(s).trace, s.duration);
      pass &= m.pdf && *m.pdf == 1.0;
      detail += fmt("%s%s %.4f", detail.empty() ? "" : ", ", std::string(to_string(p)).c_str(), m.pdf.value_or(-1));
    }
  }
  return {pass, "pdf per topology: " + detail};
}

Outcome accumulation_contrast() {
  std::vector<Point> chain;
  for (int i = 0; i < 5; ++i) chain.push_back({100.0 + 200.0 * i, 500});
  std::size_t rreqs[2];
  int i = 0;
  for (auto p : {Protocol::Dymo, Protocol::Aodv}) {
    Scenario s = fixed(chain, p, 1000);
    s.duration = 4;
    // A(0) -> E(4) first; B(1) -> D(3) lies on that path.
    s.flows = {flow(0, 4, 1.0, 0.1, 3.0), flow(1, 3, 2.0, 0.1, 3.0)};
    std::size_t n = 0;
    for (const auto& r : run(s).trace) n += r.kind == MessageKind::RREQ && r.event == TraceEvent::Send;
    rreqs[i++] = n;
  }
  return {rreqs[0] == 1 && rreqs[1] == 2, fmt("RREQ originations: dymo %zu, aodv %zu", rreqs[0], rreqs[1])};
}

Outcome energy_gating() {
  // S(0) - L(1) - D(2) is the short path; S - a(3) - b(4) - c(5) - D the long one.
  const std::vector<Point> pos = {{100, 500}, {300, 500}, {500, 500}, {100, 740}, {300, 760}, {500, 740}};
  Scenario s = fixed(pos, Protocol::Dymo, 1000);
  s.duration = 10;
  s.protocol_config.dymo.energy_threshold = 10;
  s.energy = {{0, 100}, {1, 0}, {2, 100}, {3, 100}, {4, 100}, {5, 100}};
  s.flows = {flow(0, 2, 1.0, 0.1, 8.0)};
  Simulator sim(s);
  std::size_t lists = 0, with_low = 0, low_forwards = 0;
  sim.set_receive_observer([&](double, NodeId, NodeId, const Message& m, std::span<const NodeId>) {
    if (m.kind != MessageKind::RREQ && m.kind != MessageKind::RREP) return;
    ++lists;
    with_low += contains_address(m, 1);
  });
  sim.set_trace_sink([&](const TraceRecord& r) {
    low_forwards += r.node == 1 && r.event == TraceEvent::Forward;
  });
  sim.run();
  std::string route = "none";
  if (!sim.delivered().empty()) route = show(sim.delivered().front().path);
  return {lists > 0 && with_low == 0 && low_forwards == 0,
          fmt("%zu accumulated lists observed, %zu contain the low node, %zu forwards by it; delivered %zu via %s",
              lists, with_low, low_forwards, sim.delivered().size(), route.c_str())};
}

Message random_message(std::mt19937_64& gen) {
  Message m;
  m.kind = static_cast<MessageKind>(1 + gen() % 6);
  m.orig = static_cast<NodeId>(gen());
  m.orig_seqnum = SeqNum{static_cast<std::uint32_t>(gen())};
  m.target = static_cast<NodeId>(gen());
  if (gen() % 2) m.target_seqnum = SeqNum{static_cast<std::uint32_t>(gen() % kUnknownSeqNum)};
  m.hop_count = static_cast<std::uint8_t>(gen());
  m.ttl = static_cast<std::uint8_t>(gen());
  const std::size_t n = gen() % 40;
  std::set<NodeId> used;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId a = static_cast<NodeId>(gen());
    if (!used.insert(a).second) continue;
    if (m.kind == MessageKind::RERR) {
      m.unreachable.push_back({a, SeqNum{static_cast<std::uint32_t>(gen())}});
    } else {
      m.accumulated.push_back({a, SeqNum{static_cast<std::uint32_t>(gen())}, static_cast<std::uint8_t>(gen())});
    }
  }
  if (m.kind == MessageKind::Data) m.payload_size = static_cast<std::uint16_t>(gen() % 1501);
  return m;
}

Outcome codec() {
  std::mt19937_64 gen(10000);
  int mismatches = 0, length_errors = 0;
  for (int i = 0; i < 10000; ++i) {
    const Message m = random_message(gen);
    const auto bytes = encode_message(m);
    const std::size_t declared = (std::size_t{bytes[19]} << 8 | bytes[20]) * kElementSize + kHeaderSize +
                                 (std::size_t{bytes[21]} << 8 | bytes[22]);
    length_errors += declared != bytes.size() || encoded_size(m) != bytes.size();
    mismatches += !(decode_message(bytes) == m);
  }

  using Bytes = std::vector<std::uint8_t>;
  struct Golden {
    Message msg;
    Bytes bytes;
  };
  std::vector<Golden> golden;
  {
    Message m;
    m.kind = MessageKind::RREQ;
    m.orig = 1;
    m.orig_seqnum = SeqNum{42};
    m.target = 10;
    m.hop_count = 1;
    m.ttl = 31;
    m.accumulated = {{2, SeqNum{7}, 0}};
    golden.push_back({m, {0x01, 0, 0, 0, 1, 0, 0, 0, 0x2A, 0, 0, 0, 0x0A, 0xFF, 0xFF, 0xFF, 0xFF, 0x01, 0x1F, 0, 1,
                          0, 0, 0, 0, 0, 2, 0, 0, 0, 7, 0}});
  }
  {
    Message m;
    m.kind = MessageKind::RREP;
    m.orig = 10;
    m.orig_seqnum = SeqNum{5};
    m.target = 1;
    m.target_seqnum = SeqNum{42};
    m.ttl = 32;
    golden.push_back({m, {0x02, 0, 0, 0, 0x0A, 0, 0, 0, 5, 0, 0, 0, 1, 0, 0, 0, 0x2A, 0, 0x20, 0, 0, 0, 0}});
  }
  {
    Message m;
    m.kind = MessageKind::RERR;
    m.orig = 2;
    m.orig_seqnum = SeqNum{3};
    m.target = kBroadcast;
    m.ttl = 32;
    m.unreachable = {{6, SeqNum{4}}, {10, SeqNum{5}}};
    golden.push_back({m, {0x03, 0, 0, 0, 2, 0, 0, 0, 3, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0, 0x20, 0, 2,
                          0, 0, 0, 0, 0, 6, 0, 0, 0, 4, 0, 0, 0, 0, 0x0A, 0, 0, 0, 5, 0}});
  }
  {
    Message m;
    m.kind = MessageKind::HELLO;
    m.orig = 4;
    m.target = kBroadcast;
    m.ttl = 1;
    golden.push_back({m, {0x04, 0, 0, 0, 4, 0, 0, 0, 0, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0, 1, 0, 0,
                          0, 0}});
  }
  {
    Message m;
    m.kind = MessageKind::Data;
    m.orig = 1;
    m.target = 10;
    m.ttl = 32;
    m.hop_count = 2;
    m.payload_size = 4;
    golden.push_back({m, {0x05, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0x0A, 0xFF, 0xFF, 0xFF, 0xFF, 2, 0x20, 0, 0, 0, 4,
                          0, 0, 0, 0}});
  }
  {
    Message m;
    m.kind = MessageKind::TableUpdate;
    m.orig = 3;
    m.orig_seqnum = SeqNum{8};
    m.target = kBroadcast;
    m.ttl = 1;
    m.accumulated = {{3, SeqNum{8}, 0}, {5, SeqNum{2}, 0xFF}};
    golden.push_back({m, {0x06, 0, 0, 0, 3, 0, 0, 0, 8, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0, 1, 0, 2,
                          0, 0, 0, 0, 0, 3, 0, 0, 0, 8, 0, 0, 0, 0, 5, 0, 0, 0, 2, 0xFF}});
  }
  int golden_ok = 0;
  for (const auto& g : golden) {
    golden_ok += encode_message(g.msg) == g.bytes && decode_message(g.bytes) == g.msg;
  }
  return {mismatches == 0 && length_errors == 0 && golden_ok == 6,
          fmt("10000 round trips: %d mismatches, %d length errors; golden vectors %d/6", mismatches, length_errors,
              golden_ok)};
}

Outcome metrics_examples() {
  auto rec = [](TraceEvent e, double t, std::uint64_t id) {
    TraceRecord r;
    r.event = e;
    r.time = t;
    r.msg_id = id;
    r.kind = MessageKind::Data;
    r.size = 512;
    return r;
  };
  int ok = 0, total = 0;
  auto check = [&](bool c) {
    ++total;
    ok += c;
  };
  std::vector<TraceRecord> t;
  for (int i = 0; i < 100; ++i) t.push_back(rec(TraceEvent::Send, i, i));
  for (int i = 0; i < 95; ++i) t.push_back(rec(TraceEvent::Recv, i + 0.5, i));
  check(compute_pdf(t) == 0.95);
  check(!compute_pdf({}).has_value());
  check(compute_aeed({rec(TraceEvent::Send, 1.0, 1), rec(TraceEvent::Recv, 1.25, 1)}) == 0.25);
  check(std::fabs(compute_aeed({rec(TraceEvent::Send, 0, 1), rec(TraceEvent::Send, 0, 2), rec(TraceEvent::Send, 0, 3),
                                rec(TraceEvent::Recv, 0.1, 1), rec(TraceEvent::Recv, 0.2, 2),
                                rec(TraceEvent::Recv, 0.3, 3)}) -
                  0.2) < 1e-15);
  bool threw = false;
  try {
    compute_aeed({rec(TraceEvent::Send, 0, 1)});
  } catch (const NoDeliveredPackets&) {
    threw = true;
  }
  check(threw);
  std::vector<TraceRecord> flood;
  for (int i = 0; i < 6; ++i) {
    auto r = rec(i == 0 ? TraceEvent::Send : TraceEvent::Forward, 0.01 * i, 9);
    r.kind = MessageKind::RREQ;
    flood.push_back(r);
  }
  check(compute_ro(flood) == 6);
  check(compute_ro(t) == 0);
  std::vector<TraceRecord> got;
  for (int i = 0; i < 100; ++i) got.push_back(rec(TraceEvent::Recv, i * 0.1, i));
  check(compute_tp(got, 10) == 40960);
  check(compute_tp({}, 10) == 0);
  auto report = [](double pdf) {
    MetricsReport r;
    r.pdf = pdf;
    return r;
  };
  const auto flat = aggregate({report(0.9), report(0.9), report(0.9)});
  check(std::fabs(flat.pdf.mean - 0.9) < 1e-15 && flat.pdf.stddev == 0);
  const auto two = aggregate({report(0.8), report(1.0)});
  check(std::fabs(two.pdf.mean - 0.9) < 1e-15 && std::fabs(two.pdf.stddev - std::sqrt(0.02)) < 1e-15);

  Scenario lossless = fixed({{0, 0}, {100, 0}}, Protocol::Dymo, 200);
  lossless.duration = 12;
  lossless.flows = {flow(0, 1, 0.0, 0.1, 10.0)};
  const auto m = compute_metrics(run(lossless).trace, lossless.duration);
  check(m.pdf == 1.0);
  check(std::fabs(m.tp - *m.pdf * m.data_sent * 512 * 8 / lossless.duration) < 1e-9);
  return {ok == total, fmt("%d/%d metric examples exact (pdf %.2f, aeed %.2f s, tp %.0f bit/s, sd %.4f)", ok, total,
                           *compute_pdf(t), 0.2, compute_tp(got, 10), two.pdf.stddev)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "ordinal ranking", ordinal_ranking},
      {2, "scripted discovery", scripted_discovery},
      {3, "break and repair", break_and_repair},
      {4, "hop count equals BFS", bfs_oracle},
      {5, "loop freedom", loop_freedom},
      {6, "determinism", determinism},
      {7, "static delivery", static_delivery},
      {8, "path accumulation overhead", accumulation_contrast},
      {9, "energy gating", energy_gating},
      {10, "codec", codec},
      {11, "metrics examples", metrics_examples},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && !wanted.contains(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s C%d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
