#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "manet/types.hpp"

namespace manet {

enum class RouteState { Valid, Broken };

struct RouteEntry {
  NodeId dest = 0;
  NodeId next_hop = 0;
  SeqNum seqnum{};
  std::uint8_t hop_count = 1;
  RouteState state = RouteState::Valid;
  double expiry_time = 0.0;

  bool usable(double now) const { return state == RouteState::Valid && expiry_time > now; }
};

/// Route offered by an incoming message, before the table decides on it.
struct RouteCandidate {
  NodeId dest = 0;
  NodeId next_hop = 0;
  SeqNum seqnum{};
  std::uint8_t hop_count = 1;
};

enum class RouteDecision { Install, Discard };

/// Update rule for DYMO: only superior sequence numbers replace an entry.
/// Same-seqnum information is discarded whatever its hop count.
RouteDecision route_update_decision(const RouteEntry* existing, const RouteCandidate& candidate);

/// RFC 3561 flavour used by the AODV baseline: same seqnum with strictly
/// fewer hops also replaces the entry.
RouteDecision aodv_update_decision(const RouteEntry* existing, const RouteCandidate& candidate);

/// At most one entry per destination. Ordered so iteration (and therefore
/// every action derived from it) is deterministic.
class RoutingTable {
 public:
  explicit RoutingTable(NodeId owner) : owner_(owner) {}

  NodeId owner() const { return owner_; }

  const RouteEntry* find(NodeId dest) const;
  RouteEntry* find(NodeId dest);

  /// Valid and unexpired entry, or nullptr.
  const RouteEntry* lookup(NodeId dest, double now) const;

  void install(const RouteCandidate& candidate, double expiry_time);
  bool erase(NodeId dest);

  /// Removes entries whose expiry_time <= now; returns the removed dests.
  std::vector<NodeId> purge_expired(double now);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  NodeId owner_;
  std::map<NodeId, RouteEntry> entries_;
};

}  // namespace manet
