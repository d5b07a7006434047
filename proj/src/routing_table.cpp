#include "manet/routing_table.hpp"

namespace manet {

RouteDecision route_update_decision(const RouteEntry* existing, const RouteCandidate& candidate) {
  if (existing == nullptr) {
    return RouteDecision::Install;
  }
  return seqnum_compare(candidate.seqnum, existing->seqnum) == SeqOrder::Superior
             ? RouteDecision::Install
             : RouteDecision::Discard;
}

RouteDecision aodv_update_decision(const RouteEntry* existing, const RouteCandidate& candidate) {
  if (existing == nullptr) {
    return RouteDecision::Install;
  }
  switch (seqnum_compare(candidate.seqnum, existing->seqnum)) {
    case SeqOrder::Superior:
      return RouteDecision::Install;
    case SeqOrder::Same:
      return candidate.hop_count < existing->hop_count ? RouteDecision::Install
                                                       : RouteDecision::Discard;
    case SeqOrder::Inferior:
      break;
  }
  return RouteDecision::Discard;
}

const RouteEntry* RoutingTable::find(NodeId dest) const {
  auto it = entries_.find(dest);
  return it == entries_.end() ? nullptr : &it->second;
}

RouteEntry* RoutingTable::find(NodeId dest) {
  auto it = entries_.find(dest);
  return it == entries_.end() ? nullptr : &it->second;
}

const RouteEntry* RoutingTable::lookup(NodeId dest, double now) const {
  const RouteEntry* e = find(dest);
  return e != nullptr && e->usable(now) ? e : nullptr;
}

void RoutingTable::install(const RouteCandidate& candidate, double expiry_time) {
  entries_[candidate.dest] = RouteEntry{candidate.dest,      candidate.next_hop, candidate.seqnum,
                                        candidate.hop_count, RouteState::Valid,  expiry_time};
}

bool RoutingTable::erase(NodeId dest) { return entries_.erase(dest) > 0; }

std::vector<NodeId> RoutingTable::purge_expired(double now) {
  std::vector<NodeId> removed;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second.expiry_time <= now) {
      removed.push_back(it->first);
      it = entries_.erase(it);
    } else {
      ++it;
    }
  }
  return removed;
}

}  // namespace manet
