#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "manet/message.hpp"

namespace manet {

/// Fixed big-endian layout:
///
///   0      kind
///   1..4   orig            5..8   orig_seqnum
///   9..12  target          13..16 target_seqnum (0xFFFFFFFF = unknown)
///   17     hop_count       18     ttl
///   19..20 element count   21..22 payload_size
///   then count x 9-byte elements (addr 4, seqnum 4, hop_distance 1)
///   then payload_size payload bytes (zero filled)
///
/// Elements are the accumulated blocks, or the unreachable list for RERR.
inline constexpr std::size_t kHeaderSize = 23;
inline constexpr std::size_t kElementSize = 9;
inline constexpr std::uint32_t kUnknownSeqNum = 0xFFFFFFFFu;

class DecodeError : public std::runtime_error {
 public:
  enum class Kind { Truncated, BadKind, BadLength };

  DecodeError(Kind kind, std::size_t offset);

  Kind kind() const { return kind_; }
  /// First offending byte offset.
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

/// Size in bytes of encode_message(msg), computed without encoding.
std::size_t encoded_size(const Message& msg);

/// Throws std::invalid_argument if the message cannot be represented
/// (RERR with accumulated blocks, non-RERR with an unreachable list,
/// more than 65535 elements).
std::vector<std::uint8_t> encode_message(const Message& msg);

/// Inverse of encode_message. msg_id of the result is 0.
Message decode_message(std::span<const std::uint8_t> bytes);

}  // namespace manet
