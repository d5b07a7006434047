#include "manet/trace.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>

namespace manet {
namespace {

std::optional<DropReason> parse_drop_reason(std::string_view text) {
  for (auto r : {DropReason::BufferFull, DropReason::NoRoute, DropReason::DropTail,
                 DropReason::TtlExpired, DropReason::LinkBreak}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

template <typename T>
bool parse_uint(std::string_view text, T& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

MalformedTrace::MalformedTrace(std::size_t line, const std::string& why)
    : std::runtime_error("malformed trace at line " + std::to_string(line) + ": " + why), line_(line) {}

std::string format_trace_record(const TraceRecord& r) {
  char buf[192];
  const auto kind = to_string(r.kind);
  int n = std::snprintf(buf, sizeof buf, "%c\t%.6f\t%u\t%llu\t%.*s\t%u\t%u\t%u", static_cast<char>(r.event),
                        r.time, r.node, static_cast<unsigned long long>(r.msg_id),
                        static_cast<int>(kind.size()), kind.data(), r.size, r.src, r.dst);
  std::string line(buf, static_cast<std::size_t>(n));
  if (r.drop_reason) {
    line += '\t';
    line += to_string(*r.drop_reason);
  }
  return line;
}

void write_trace(std::ostream& out, const std::vector<TraceRecord>& trace) {
  for (const auto& r : trace) {
    out << format_trace_record(r) << '\n';
  }
}

TraceRecord parse_trace_record(const std::string& line, std::size_t line_number) {
  std::vector<std::string_view> fields;
  std::string_view rest(line);
  while (true) {
    const auto tab = rest.find('\t');
    fields.push_back(rest.substr(0, tab));
    if (tab == std::string_view::npos) break;
    rest.remove_prefix(tab + 1);
  }
  if (fields.size() < 8 || fields.size() > 9) {
    throw MalformedTrace(line_number, "expected 8 or 9 tab-separated fields");
  }

  TraceRecord r;
  if (fields[0].size() != 1 || std::string_view("srfd").find(fields[0][0]) == std::string_view::npos) {
    throw MalformedTrace(line_number, "unknown event '" + std::string(fields[0]) + "'");
  }
  r.event = static_cast<TraceEvent>(fields[0][0]);
  try {
    std::size_t used = 0;
    r.time = std::stod(std::string(fields[1]), &used);
    if (used != fields[1].size()) throw std::invalid_argument("time");
  } catch (const std::exception&) {
    throw MalformedTrace(line_number, "bad time");
  }
  if (!parse_uint(fields[2], r.node) || !parse_uint(fields[3], r.msg_id) || !parse_uint(fields[5], r.size) ||
      !parse_uint(fields[6], r.src) || !parse_uint(fields[7], r.dst)) {
    throw MalformedTrace(line_number, "bad integer field");
  }
  const auto kind = parse_message_kind(fields[4]);
  if (!kind) {
    throw MalformedTrace(line_number, "unknown kind '" + std::string(fields[4]) + "'");
  }
  r.kind = *kind;
  if (fields.size() == 9) {
    r.drop_reason = parse_drop_reason(fields[8]);
    if (!r.drop_reason) {
      throw MalformedTrace(line_number, "unknown drop reason '" + std::string(fields[8]) + "'");
    }
  }
  if ((r.event == TraceEvent::Drop) != r.drop_reason.has_value()) {
    throw MalformedTrace(line_number, "drop reason present iff event is d");
  }
  return r;
}

std::vector<TraceRecord> read_trace(std::istream& in) {
  std::vector<TraceRecord> trace;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    trace.push_back(parse_trace_record(line, number));
  }
  return trace;
}

}  // namespace manet
