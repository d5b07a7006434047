#include "manet/message.hpp"

#include <algorithm>
#include <string>

namespace manet {

std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::RREQ: return "RREQ";
    case MessageKind::RREP: return "RREP";
    case MessageKind::RERR: return "RERR";
    case MessageKind::HELLO: return "HELLO";
    case MessageKind::Data: return "Data";
    case MessageKind::TableUpdate: return "TableUpdate";
  }
  return "?";
}

std::optional<MessageKind> parse_message_kind(std::string_view text) {
  for (auto kind : {MessageKind::RREQ, MessageKind::RREP, MessageKind::RERR, MessageKind::HELLO,
                    MessageKind::Data, MessageKind::TableUpdate}) {
    if (to_string(kind) == text) {
      return kind;
    }
  }
  return std::nullopt;
}

DuplicateAddress::DuplicateAddress(NodeId node)
    : std::runtime_error("node " + std::to_string(node) + " already on accumulated path"),
      node_(node) {}

bool contains_address(const Message& msg, NodeId node) {
  return std::any_of(msg.accumulated.begin(), msg.accumulated.end(),
                     [node](const AddressBlock& b) { return b.addr == node; });
}

Message append_address(Message msg, NodeId self, SeqNum self_seqnum) {
  if (contains_address(msg, self)) {
    throw DuplicateAddress(self);
  }
  for (auto& block : msg.accumulated) {
    ++block.hop_distance;
  }
  msg.accumulated.push_back(AddressBlock{self, self_seqnum, 0});
  ++msg.hop_count;
  return msg;
}

}  // namespace manet
