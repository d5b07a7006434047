#include "manet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

namespace manet {

void MetricsAccumulator::add(const TraceRecord& r) {
  if (r.kind != MessageKind::Data) {
    if (r.event == TraceEvent::Send || r.event == TraceEvent::Forward) {
      ++ro_;
    }
    return;
  }
  switch (r.event) {
    case TraceEvent::Send:
      ++sent_;
      sent_at_.emplace(r.msg_id, r.time);
      break;
    case TraceEvent::Recv:
      ++delivered_;
      delivered_bits_ += static_cast<std::uint64_t>(r.size) * 8;
      received_at_.emplace(r.msg_id, r.time);
      break;
    case TraceEvent::Drop:
      ++dropped_;
      break;
    case TraceEvent::Forward:
      break;
  }
}

MetricsReport MetricsAccumulator::report(double duration) const {
  if (!(duration > 0.0)) {
    throw ConfigError("duration must be > 0");
  }
  MetricsReport m;
  m.duration = duration;
  m.data_sent = sent_;
  m.data_delivered = delivered_;
  m.data_dropped = dropped_;
  m.ro = ro_;
  m.tp = static_cast<double>(delivered_bits_) / duration;
  if (sent_ > 0) {
    m.pdf = static_cast<double>(delivered_) / static_cast<double>(sent_);
  }
  // Sum in msg_id order so the result does not depend on hash iteration.
  std::vector<std::pair<std::uint64_t, double>> delays;
  delays.reserve(received_at_.size());
  for (const auto& [id, t] : received_at_) {
    if (auto s = sent_at_.find(id); s != sent_at_.end()) {
      delays.emplace_back(id, t - s->second);
    }
  }
  if (!delays.empty()) {
    std::sort(delays.begin(), delays.end());
    double sum = 0.0;
    for (const auto& d : delays) {
      sum += d.second;
    }
    m.aeed = sum / static_cast<double>(delays.size());
  }
  return m;
}

MetricsReport compute_metrics(const std::vector<TraceRecord>& trace, double duration) {
  MetricsAccumulator acc;
  for (const auto& r : trace) {
    acc.add(r);
  }
  return acc.report(duration);
}

std::optional<double> compute_pdf(const std::vector<TraceRecord>& trace) {
  return compute_metrics(trace, 1.0).pdf;
}

double compute_aeed(const std::vector<TraceRecord>& trace) {
  auto aeed = compute_metrics(trace, 1.0).aeed;
  if (!aeed) {
    throw NoDeliveredPackets();
  }
  return *aeed;
}

std::uint64_t compute_ro(const std::vector<TraceRecord>& trace) {
  return std::count_if(trace.begin(), trace.end(), [](const TraceRecord& r) {
    return is_routing(r.kind) && (r.event == TraceEvent::Send || r.event == TraceEvent::Forward);
  });
}

double compute_tp(const std::vector<TraceRecord>& trace, double duration) {
  return compute_metrics(trace, duration).tp;
}

Stat summarize(const std::vector<double>& values) {
  Stat s;
  s.count = values.size();
  if (values.empty()) {
    return s;
  }
  double sum = 0.0;
  s.min = values.front();
  s.max = values.front();
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) {
      sq += (v - s.mean) * (v - s.mean);
    }
    s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

Aggregate aggregate(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) {
    throw EmptyInput();
  }
  Aggregate a;
  a.protocol = reports.front().protocol;
  a.nodes = reports.front().nodes;
  a.pause_time = reports.front().pause_time;
  a.runs = reports.size();
  std::vector<double> pdf, aeed, ro, tp;
  for (const auto& r : reports) {
    if (r.pdf) {
      pdf.push_back(*r.pdf);
    } else {
      ++a.pdf_excluded;
    }
    if (r.aeed) {
      aeed.push_back(*r.aeed);
    } else {
      ++a.aeed_excluded;
    }
    ro.push_back(static_cast<double>(r.ro));
    tp.push_back(r.tp);
    a.sent += static_cast<double>(r.data_sent);
    a.delivered += static_cast<double>(r.data_delivered);
    a.dropped += static_cast<double>(r.data_dropped);
  }
  const double n = static_cast<double>(reports.size());
  a.sent /= n;
  a.delivered /= n;
  a.dropped /= n;
  a.pdf = summarize(pdf);
  a.aeed = summarize(aeed);
  a.ro = summarize(ro);
  a.tp = summarize(tp);
  return a;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

std::string stat_or_na(const Stat& s, double Stat::*field) { return s.count == 0 ? "NA" : num(s.*field); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == sep) {
    out.emplace_back();
  }
  return out;
}

}  // namespace

std::string format_csv_row(const MetricsReport& r) {
  std::ostringstream out;
  out << r.protocol << ',' << r.nodes << ',' << num(r.pause_time) << ',' << r.seed << ',' << opt(r.pdf) << ','
      << opt(r.aeed) << ',' << r.ro << ',' << num(r.tp) << ',' << r.data_sent << ',' << r.data_delivered << ','
      << r.data_dropped;
  return out.str();
}

std::string format_aggregate_row(const Aggregate& a) {
  std::ostringstream out;
  out << a.protocol << ',' << a.nodes << ',' << num(a.pause_time) << ",agg," << stat_or_na(a.pdf, &Stat::mean) << ','
      << stat_or_na(a.aeed, &Stat::mean) << ',' << num(a.ro.mean) << ',' << num(a.tp.mean) << ',' << num(a.sent)
      << ',' << num(a.delivered) << ',' << num(a.dropped) << ',' << stat_or_na(a.pdf, &Stat::stddev) << ','
      << stat_or_na(a.aeed, &Stat::stddev) << ',' << num(a.ro.stddev) << ',' << num(a.tp.stddev);
  return out.str();
}

std::vector<MetricsReport> read_csv(std::istream& in) {
  std::vector<MetricsReport> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line.rfind("protocol,", 0) == 0) {
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() < 11) {
      throw std::runtime_error("line " + std::to_string(n) + ": expected 11 columns, got " +
                               std::to_string(f.size()));
    }
    if (f[3] == "agg") {
      continue;
    }
    try {
      MetricsReport r;
      r.protocol = f[0];
      r.nodes = static_cast<std::uint32_t>(std::stoul(f[1]));
      r.pause_time = std::stod(f[2]);
      r.seed = std::stoull(f[3]);
      if (f[4] != "NA") r.pdf = std::stod(f[4]);
      if (f[5] != "NA") r.aeed = std::stod(f[5]);
      r.ro = std::stoull(f[6]);
      r.tp = std::stod(f[7]);
      r.data_sent = std::stoull(f[8]);
      r.data_delivered = std::stoull(f[9]);
      r.data_dropped = std::stoull(f[10]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw std::runtime_error("line " + std::to_string(n) + ": bad number in '" + line + "'");
    }
  }
  return rows;
}

}  // namespace manet
