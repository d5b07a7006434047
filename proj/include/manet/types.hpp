#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace manet {

/// Node identifier, unique within a scenario (0 <= id < node_count).
using NodeId = std::uint32_t;

/// Target address used for link-local broadcasts (HELLO, TableUpdate, RERR).
inline constexpr NodeId kBroadcast = std::numeric_limits<NodeId>::max();

/// Per-node sequence number. Compared circularly (signed 32-bit difference).
struct SeqNum {
  std::uint32_t value = 0;

  friend constexpr bool operator==(SeqNum, SeqNum) = default;
};

enum class SeqOrder { Superior, Same, Inferior };

/// Orders `incoming` relative to `existing` using the sign of the 32-bit
/// wrapped difference, so 1 is Superior to 0xFFFFFFFA. Pairs exactly 2^31
/// apart have no signed winner; the larger raw value is taken as Superior
/// so the relation stays antisymmetric.
constexpr SeqOrder seqnum_compare(SeqNum incoming, SeqNum existing) {
  if (incoming.value == existing.value) {
    return SeqOrder::Same;
  }
  const std::uint32_t diff = incoming.value - existing.value;
  if (diff == 0x80000000u) {
    return incoming.value > existing.value ? SeqOrder::Superior : SeqOrder::Inferior;
  }
  return diff < 0x80000000u ? SeqOrder::Superior : SeqOrder::Inferior;
}

/// Raised when a scenario, flag or config value violates its invariants.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace manet
