#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "manet/message.hpp"
#include "manet/router.hpp"

namespace manet {

enum class TraceEvent : char { Send = 's', Recv = 'r', Forward = 'f', Drop = 'd' };

/// One line of the ground-truth trace. `size` is the payload size for Data
/// and the encoded wire size for routing messages.
struct TraceRecord {
  double time = 0.0;
  TraceEvent event = TraceEvent::Send;
  NodeId node = 0;
  std::uint64_t msg_id = 0;
  MessageKind kind = MessageKind::Data;
  std::uint32_t size = 0;
  NodeId src = 0;
  NodeId dst = 0;
  std::optional<DropReason> drop_reason;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

class MalformedTrace : public std::runtime_error {
 public:
  MalformedTrace(std::size_t line, const std::string& why);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Tab-separated `event time node msg_id kind size src dst [drop_reason]`,
/// time with six decimals, no trailing newline.
std::string format_trace_record(const TraceRecord& record);
void write_trace(std::ostream& out, const std::vector<TraceRecord>& trace);

/// Line numbers in MalformedTrace are 1-based.
TraceRecord parse_trace_record(const std::string& line, std::size_t line_number = 1);
std::vector<TraceRecord> read_trace(std::istream& in);

}  // namespace manet
