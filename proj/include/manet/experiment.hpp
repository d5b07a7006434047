#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "manet/metrics.hpp"
#include "manet/scenario.hpp"

namespace manet {

/// Runs one scenario, computing metrics on the fly. If `trace` is given
/// every record is also appended to it.
MetricsReport run_metrics(const Scenario& scenario, std::vector<TraceRecord>* trace = nullptr);

struct SweepSpec {
  Scenario base;
  std::vector<Protocol> protocols;
  std::vector<double> pause_times;
  std::vector<std::uint64_t> seeds;
};

/// Every (protocol, pause, seed) combination in that nesting order. Runs
/// execute on up to `jobs` threads; the result order never depends on it.
std::vector<MetricsReport> run_sweep(const SweepSpec& spec, unsigned jobs = 1,
                                     const std::function<void(std::size_t done, std::size_t total)>& progress = {});

/// Aggregates keyed by (protocol, pause_time), in key order.
std::map<std::pair<std::string, double>, Aggregate> aggregate_by_point(const std::vector<MetricsReport>& reports);

/// Per-point means followed by the overall ordinal table: for each metric
/// the protocols sorted by mean, highest first, labelled High, Medium, Low,
/// Very low.
std::string format_rank_table(const std::vector<MetricsReport>& reports);

}  // namespace manet
