#include "manet/codec.hpp"

#include <string>

namespace manet {
namespace {

std::string describe(DecodeError::Kind kind, std::size_t offset) {
  const char* name = kind == DecodeError::Kind::Truncated ? "truncated"
                     : kind == DecodeError::Kind::BadKind ? "bad message kind"
                                                          : "bad length";
  return std::string(name) + " at byte " + std::to_string(offset);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>((b[at] << 8) | b[at + 1]);
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

std::size_t element_count(const Message& msg) {
  return msg.kind == MessageKind::RERR ? msg.unreachable.size() : msg.accumulated.size();
}

}  // namespace

DecodeError::DecodeError(Kind kind, std::size_t offset)
    : std::runtime_error(describe(kind, offset)), kind_(kind), offset_(offset) {}

std::size_t encoded_size(const Message& msg) {
  return kHeaderSize + kElementSize * element_count(msg) + msg.payload_size;
}

std::vector<std::uint8_t> encode_message(const Message& msg) {
  if (msg.kind == MessageKind::RERR ? !msg.accumulated.empty() : !msg.unreachable.empty()) {
    throw std::invalid_argument("message carries elements its kind cannot encode");
  }
  const std::size_t count = element_count(msg);
  if (count > 0xFFFF) {
    throw std::invalid_argument("too many elements for a 16-bit count");
  }

  std::vector<std::uint8_t> out;
  out.reserve(encoded_size(msg));
  out.push_back(static_cast<std::uint8_t>(msg.kind));
  put_u32(out, msg.orig);
  put_u32(out, msg.orig_seqnum.value);
  put_u32(out, msg.target);
  put_u32(out, msg.target_seqnum ? msg.target_seqnum->value : kUnknownSeqNum);
  out.push_back(msg.hop_count);
  out.push_back(msg.ttl);
  put_u16(out, static_cast<std::uint16_t>(count));
  put_u16(out, msg.payload_size);

  if (msg.kind == MessageKind::RERR) {
    for (const auto& u : msg.unreachable) {
      put_u32(out, u.dest);
      put_u32(out, u.seqnum.value);
      out.push_back(0);
    }
  } else {
    for (const auto& b : msg.accumulated) {
      put_u32(out, b.addr);
      put_u32(out, b.seqnum.value);
      out.push_back(b.hop_distance);
    }
  }
  out.resize(out.size() + msg.payload_size, 0);
  return out;
}

Message decode_message(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) {
    throw DecodeError(DecodeError::Kind::Truncated, 0);
  }
  const std::uint8_t kind = bytes[0];
  if (kind < 0x01 || kind > 0x06) {
    throw DecodeError(DecodeError::Kind::BadKind, 0);
  }
  if (bytes.size() < kHeaderSize) {
    throw DecodeError(DecodeError::Kind::Truncated, bytes.size());
  }

  Message msg;
  msg.kind = static_cast<MessageKind>(kind);
  msg.orig = get_u32(bytes, 1);
  msg.orig_seqnum = SeqNum{get_u32(bytes, 5)};
  msg.target = get_u32(bytes, 9);
  if (const auto ts = get_u32(bytes, 13); ts != kUnknownSeqNum) {
    msg.target_seqnum = SeqNum{ts};
  }
  msg.hop_count = bytes[17];
  msg.ttl = bytes[18];
  const std::size_t count = get_u16(bytes, 19);
  msg.payload_size = get_u16(bytes, 21);

  const std::size_t expected = kHeaderSize + kElementSize * count + msg.payload_size;
  if (bytes.size() < expected) {
    throw DecodeError(DecodeError::Kind::Truncated, bytes.size());
  }
  if (bytes.size() > expected) {
    throw DecodeError(DecodeError::Kind::BadLength, expected);
  }

  std::size_t at = kHeaderSize;
  for (std::size_t i = 0; i < count; ++i, at += kElementSize) {
    const NodeId addr = get_u32(bytes, at);
    const SeqNum seq{get_u32(bytes, at + 4)};
    const std::uint8_t distance = bytes[at + 8];
    if (msg.kind == MessageKind::RERR) {
      msg.unreachable.push_back(Unreachable{addr, seq});
    } else {
      msg.accumulated.push_back(AddressBlock{addr, seq, distance});
    }
  }
  return msg;
}

}  // namespace manet
