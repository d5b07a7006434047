#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "manet/types.hpp"

namespace manet {

enum class MessageKind : std::uint8_t {
  RREQ = 0x01,
  RREP = 0x02,
  RERR = 0x03,
  HELLO = 0x04,
  Data = 0x05,
  TableUpdate = 0x06,
};

std::string_view to_string(MessageKind kind);
std::optional<MessageKind> parse_message_kind(std::string_view text);

/// True for every kind that counts toward routing overhead.
constexpr bool is_routing(MessageKind kind) { return kind != MessageKind::Data; }

/// One accumulated address. For TableUpdate rows `hop_distance` is the
/// advertised metric and for DSR source routes it is the position in the route.
struct AddressBlock {
  NodeId addr = 0;
  SeqNum seqnum{};
  std::uint8_t hop_distance = 0;

  friend bool operator==(const AddressBlock&, const AddressBlock&) = default;
};

struct Unreachable {
  NodeId dest = 0;
  SeqNum seqnum{};

  friend bool operator==(const Unreachable&, const Unreachable&) = default;
};

/// Every protocol message, routing or data. `accumulated` carries path
/// blocks (RREQ/RREP), table rows (TableUpdate) or a source route (DSR Data);
/// `unreachable` is used by RERR only. `msg_id` is simulator metadata and is
/// not part of the wire encoding.
struct Message {
  MessageKind kind = MessageKind::Data;
  NodeId orig = 0;
  SeqNum orig_seqnum{};
  NodeId target = 0;
  std::optional<SeqNum> target_seqnum;
  std::uint8_t hop_count = 0;
  std::uint8_t ttl = 0;
  std::vector<AddressBlock> accumulated;
  std::uint16_t payload_size = 0;
  std::vector<Unreachable> unreachable;
  std::uint64_t msg_id = 0;

  friend bool operator==(const Message&, const Message&) = default;
};

/// Thrown by append_address when the appending node is already on the path.
class DuplicateAddress : public std::runtime_error {
 public:
  explicit DuplicateAddress(NodeId node);
  NodeId node() const { return node_; }

 private:
  NodeId node_;
};

bool contains_address(const Message& msg, NodeId node);

/// Path accumulation: ages every existing block by one hop, appends
/// (self, self_seqnum, 0) and bumps hop_count.
Message append_address(Message msg, NodeId self, SeqNum self_seqnum);

/// Globally unique id: originator in the upper 32 bits, per-node counter below.
constexpr std::uint64_t make_msg_id(NodeId originator, std::uint32_t counter) {
  return (static_cast<std::uint64_t>(originator) << 32) | counter;
}

}  // namespace manet
