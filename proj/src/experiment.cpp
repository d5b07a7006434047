#include "manet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "manet/simulator.hpp"

namespace manet {

MetricsReport run_metrics(const Scenario& scenario, std::vector<TraceRecord>* trace) {
  MetricsAccumulator acc;
  Simulator sim(scenario);
  sim.set_trace_sink([&](const TraceRecord& r) {
    acc.add(r);
    if (trace != nullptr) trace->push_back(r);
  });
  sim.run();
  MetricsReport report = acc.report(scenario.duration);
  report.protocol = std::string(to_string(scenario.protocol));
  report.nodes = scenario.node_count;
  report.pause_time = scenario.pause_time;
  report.seed = scenario.seed;
  return report;
}

std::vector<MetricsReport> run_sweep(const SweepSpec& spec, unsigned jobs,
                                     const std::function<void(std::size_t, std::size_t)>& progress) {
  std::vector<Scenario> runs;
  for (Protocol p : spec.protocols) {
    for (double pause : spec.pause_times) {
      for (std::uint64_t seed : spec.seeds) {
        Scenario s = spec.base;
        s.protocol = p;
        s.pause_time = pause;
        s.seed = seed;
        s.validate();
        runs.push_back(std::move(s));
      }
    }
  }

  std::vector<MetricsReport> out(runs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex lock;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        out[i] = run_metrics(runs[i]);
      } catch (...) {
        std::lock_guard g(lock);
        if (!error) error = std::current_exception();
        next = runs.size();
        return;
      }
      const std::size_t d = ++done;
      if (progress) {
        std::lock_guard g(lock);
        progress(d, runs.size());
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(runs.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::map<std::pair<std::string, double>, Aggregate> aggregate_by_point(const std::vector<MetricsReport>& reports) {
  std::map<std::pair<std::string, double>, std::vector<MetricsReport>> groups;
  for (const auto& r : reports) {
    groups[{r.protocol, r.pause_time}].push_back(r);
  }
  std::map<std::pair<std::string, double>, Aggregate> out;
  for (const auto& [key, group] : groups) {
    out.emplace(key, aggregate(group));
  }
  return out;
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string format_rank_table(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) throw EmptyInput();
  std::ostringstream out;
  const auto points = aggregate_by_point(reports);

  out << "protocol  pause     pdf       aeed_s    ro          tp_bps      runs\n";
  for (const auto& [key, a] : points) {
    char line[160];
    std::snprintf(line, sizeof line, "%-9s %-9g %-9s %-9s %-11.1f %-11.1f %zu\n", key.first.c_str(), key.second,
                  a.pdf.count ? fmt("%.4f", a.pdf.mean).c_str() : "NA",
                  a.aeed.count ? fmt("%.4f", a.aeed.mean).c_str() : "NA", a.ro.mean, a.tp.mean, a.runs);
    out << line;
  }

  // One overall mean per protocol and metric, across all runs.
  std::map<std::string, std::vector<MetricsReport>> by_protocol;
  for (const auto& r : reports) by_protocol[r.protocol].push_back(r);
  struct Column {
    const char* title;
    const Stat Aggregate::*stat;
  };
  const Column columns[] = {{"Routing Overhead", &Aggregate::ro},
                            {"Throughput", &Aggregate::tp},
                            {"Packet Delivery Fraction", &Aggregate::pdf},
                            {"Average End to End Delay", &Aggregate::aeed}};
  std::vector<std::vector<std::string>> ranked;
  for (const auto& c : columns) {
    std::vector<std::pair<double, std::string>> order;
    for (const auto& [name, rs] : by_protocol) {
      const Stat& s = aggregate(rs).*c.stat;
      if (s.count > 0) order.emplace_back(s.mean, name);
    }
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::string> names;
    for (const auto& o : order) names.push_back(o.second);
    ranked.push_back(std::move(names));
  }

  static const char* const levels[] = {"High", "Medium", "Low", "Very low"};
  std::size_t rows = 0;
  for (const auto& r : ranked) rows = std::max(rows, r.size());
  char line[200];
  std::snprintf(line, sizeof line, "\n%-10s %-18s %-12s %-26s %s\n", "Level", columns[0].title, columns[1].title,
                columns[2].title, columns[3].title);
  out << line;
  for (std::size_t i = 0; i < rows; ++i) {
    auto cell = [&](std::size_t c) { return i < ranked[c].size() ? ranked[c][i] : std::string("-"); };
    const std::string level = i < 4 ? levels[i] : "#" + std::to_string(i + 1);
    std::snprintf(line, sizeof line, "%-10s %-18s %-12s %-26s %s\n", level.c_str(), cell(0).c_str(),
                  cell(1).c_str(), cell(2).c_str(), cell(3).c_str());
    out << line;
  }
  return out.str();
}

}  // namespace manet
