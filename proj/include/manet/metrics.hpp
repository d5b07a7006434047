#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "manet/trace.hpp"

namespace manet {

class NoDeliveredPackets : public std::runtime_error {
 public:
  NoDeliveredPackets() : std::runtime_error("no data packet was delivered") {}
};

class EmptyInput : public std::runtime_error {
 public:
  EmptyInput() : std::runtime_error("no reports to aggregate") {}
};

/// Per-run metrics. pdf is absent when no data was sent; aeed when none
/// was delivered.
struct MetricsReport {
  std::string protocol;
  std::uint32_t nodes = 0;
  double pause_time = 0.0;
  std::uint64_t seed = 0;
  double duration = 0.0;

  std::optional<double> pdf;
  std::optional<double> aeed;
  std::uint64_t ro = 0;
  double tp = 0.0;
  std::uint64_t data_sent = 0;
  std::uint64_t data_delivered = 0;
  std::uint64_t data_dropped = 0;
};

/// Streaming form of the four metrics, so a run never has to keep its trace.
class MetricsAccumulator {
 public:
  void add(const TraceRecord& record);

  /// Throws ConfigError unless duration > 0.
  MetricsReport report(double duration) const;

 private:
  std::uint64_t sent_ = 0;
  std::uint64_t delivered_ = 0;
  std::uint64_t dropped_ = 0;
  std::uint64_t ro_ = 0;
  std::uint64_t delivered_bits_ = 0;
  std::unordered_map<std::uint64_t, double> sent_at_;
  std::unordered_map<std::uint64_t, double> received_at_;
};

std::optional<double> compute_pdf(const std::vector<TraceRecord>& trace);
/// Throws NoDeliveredPackets.
double compute_aeed(const std::vector<TraceRecord>& trace);
std::uint64_t compute_ro(const std::vector<TraceRecord>& trace);
double compute_tp(const std::vector<TraceRecord>& trace, double duration);
MetricsReport compute_metrics(const std::vector<TraceRecord>& trace, double duration);

struct Stat {
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

/// Sample statistics (n - 1 denominator; 0 for a single value).
Stat summarize(const std::vector<double>& values);

struct Aggregate {
  std::string protocol;
  std::uint32_t nodes = 0;
  double pause_time = 0.0;
  std::size_t runs = 0;
  Stat pdf;
  Stat aeed;
  Stat ro;
  Stat tp;
  std::size_t pdf_excluded = 0;
  std::size_t aeed_excluded = 0;
  double sent = 0.0;
  double delivered = 0.0;
  double dropped = 0.0;
};

/// Throws EmptyInput.
Aggregate aggregate(const std::vector<MetricsReport>& reports);

inline constexpr const char* kCsvHeader = "protocol,nodes,pause_time,seed,pdf,aeed_s,ro,tp_bps,sent,delivered,dropped";
inline constexpr const char* kAggregateCsvHeader =
    "protocol,nodes,pause_time,seed,pdf,aeed_s,ro,tp_bps,sent,delivered,dropped,pdf_sd,aeed_s_sd,ro_sd,tp_bps_sd";

/// Undefined values are written as NA.
std::string format_csv_row(const MetricsReport& report);
std::string format_aggregate_row(const Aggregate& agg);

/// Reads per-run rows, skipping aggregate (seed = agg) rows. Throws
/// std::runtime_error naming the line on bad input.
std::vector<MetricsReport> read_csv(std::istream& in);

}  // namespace manet
