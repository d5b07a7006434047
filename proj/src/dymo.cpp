#include "manet/dymo.hpp"

#include <algorithm>
#include <limits>

namespace manet {
namespace {

std::uint8_t plus_one(std::uint8_t hops) {
  return hops == std::numeric_limits<std::uint8_t>::max() ? hops : static_cast<std::uint8_t>(hops + 1);
}

}  // namespace

void DymoConfig::validate() const {
  if (!(route_timeout > 0.0)) throw ConfigError("dymo.route_timeout must be > 0");
  if (!(rreq_wait > 0.0)) throw ConfigError("dymo.rreq_wait must be > 0");
  if (rreq_max_retries < 1) throw ConfigError("dymo.rreq_max_retries must be >= 1");
  if (rreq_ttl == 0) throw ConfigError("dymo.rreq_ttl must be > 0");
  if (buffer_capacity == 0) throw ConfigError("dymo.buffer_capacity must be > 0");
  if (!(rreq_seen_lifetime > 0.0)) throw ConfigError("dymo.rreq_seen_lifetime must be > 0");
  if (!(energy_threshold >= 0.0)) throw ConfigError("dymo.energy_threshold must be >= 0");
}

DymoRouter::DymoRouter(NodeId self, DymoConfig config, double energy)
    : Router(self), table_(self), config_(config), energy_(energy) {
  config_.validate();
}

std::size_t DymoRouter::buffered(NodeId dest) const {
  auto it = pending_.find(dest);
  return it == pending_.end() ? 0 : it->second.buffer.size();
}

RouteDecision DymoRouter::decide(const RouteEntry* existing, const RouteCandidate& candidate) const {
  return route_update_decision(existing, candidate);
}

void DymoRouter::remember(NodeId dest, SeqNum seqnum) { known_seqnums_[dest] = seqnum; }

void DymoRouter::erase_route(NodeId dest) {
  if (const RouteEntry* e = table_.find(dest)) {
    remember(dest, e->seqnum);
    table_.erase(dest);
  }
}

bool DymoRouter::offer_route(const RouteCandidate& candidate, double now) {
  if (candidate.dest == self()) {
    return false;
  }
  const RouteEntry* existing = table_.find(candidate.dest);
  if (existing != nullptr && !existing->usable(now)) {
    erase_route(candidate.dest);
    existing = nullptr;
  }
  if (decide(existing, candidate) != RouteDecision::Install) {
    return false;
  }
  table_.install(candidate, now + config_.route_timeout);
  remember(candidate.dest, candidate.seqnum);
  return true;
}

Actions DymoRouter::on_tick(double) { return {}; }

Actions DymoRouter::on_data(Message packet, double now) {
  Actions out;
  if (packet.orig != self()) {
    forward_data(std::move(packet), now, out);
    finish(now, out);
    return out;
  }

  const NodeId dest = packet.target;
  if (RouteEntry* route = table_.find(dest); route != nullptr && route->usable(now)) {
    route->expiry_time = now + config_.route_timeout;
    packet.hop_count = plus_one(packet.hop_count);
    out.emplace_back(action::Unicast{std::move(packet), route->next_hop});
    finish(now, out);
    return out;
  }

  auto [it, fresh] = pending_.try_emplace(dest);
  Pending& pending = it->second;
  if (pending.buffer.size() >= config_.buffer_capacity) {
    out.emplace_back(action::Drop{std::move(pending.buffer.front()), DropReason::BufferFull});
    pending.buffer.pop_front();
  }
  pending.buffer.push_back(std::move(packet));
  if (fresh) {
    send_rreq(dest, now, out);
  }
  finish(now, out);
  return out;
}

Actions DymoRouter::originate_rreq(NodeId dest, double now) {
  Actions out;
  if (table_.lookup(dest, now) != nullptr) {
    return out;
  }
  auto [it, fresh] = pending_.try_emplace(dest);
  if (!fresh && it->second.next_retry_time > now) {
    return out;
  }
  send_rreq(dest, now, out);
  finish(now, out);
  return out;
}

void DymoRouter::send_rreq(NodeId dest, double now, Actions& out) {
  ++own_seqnum_.value;

  Message rreq;
  rreq.kind = MessageKind::RREQ;
  rreq.orig = self();
  rreq.orig_seqnum = own_seqnum_;
  rreq.target = dest;
  if (auto it = known_seqnums_.find(dest); it != known_seqnums_.end()) {
    rreq.target_seqnum = it->second;
  }
  rreq.hop_count = 0;
  rreq.ttl = config_.rreq_ttl;
  rreq.msg_id = next_msg_id();
  out.emplace_back(action::Broadcast{std::move(rreq)});

  Pending& pending = pending_[dest];
  pending.next_retry_time = now + config_.rreq_wait;
  out.emplace_back(action::SetTimer{pending.next_retry_time, TimerTag::RreqRetry});
}

Actions DymoRouter::process_message(const Message& msg, NodeId from, double now) {
  switch (msg.kind) {
    case MessageKind::RREQ:
      return process_rreq(msg, from, now);
    case MessageKind::RREP:
      return process_rrep(msg, from, now);
    case MessageKind::RERR:
      return process_rerr(msg, from, now);
    case MessageKind::Data: {
      Actions out;
      if (msg.target == self()) {
        out.emplace_back(action::Deliver{msg});
      } else {
        forward_data(msg, now, out);
      }
      finish(now, out);
      return out;
    }
    case MessageKind::HELLO:
    case MessageKind::TableUpdate:
      break;
  }
  return {};
}

void DymoRouter::forward_data(Message packet, double now, Actions& out) {
  if (packet.ttl <= 1) {
    out.emplace_back(action::Drop{std::move(packet), DropReason::TtlExpired});
    return;
  }
  RouteEntry* route = table_.find(packet.target);
  if (route != nullptr && route->usable(now)) {
    route->expiry_time = now + config_.route_timeout;
    --packet.ttl;
    packet.hop_count = plus_one(packet.hop_count);
    out.emplace_back(action::Unicast{std::move(packet), route->next_hop});
    return;
  }
  // Upstream still believes we have a route: tell it otherwise.
  const NodeId dest = packet.target;
  out.emplace_back(action::Drop{std::move(packet), DropReason::NoRoute});
  if (route != nullptr) {
    erase_route(dest);
  }
  if (auto it = known_seqnums_.find(dest); it != known_seqnums_.end()) {
    out.emplace_back(action::Broadcast{make_rerr({Unreachable{dest, it->second}})});
  }
}

EnergyVerdict DymoRouter::energy_gate(const Message&) const {
  return energy_ < config_.energy_threshold ? EnergyVerdict::Suppress : EnergyVerdict::Forward;
}

Actions DymoRouter::process_rreq(const Message& rreq, NodeId from, double now) {
  Actions out;
  if (rreq.orig == self()) {
    return out;
  }
  const auto key = std::make_pair(rreq.orig, rreq.orig_seqnum.value);
  if (seen_rreqs_.contains(key)) {
    return out;
  }
  seen_rreqs_.emplace(key, now);

  // Backward path: the originator and, with accumulation, every forwarder.
  offer_route({rreq.orig, from, rreq.orig_seqnum, plus_one(rreq.hop_count)}, now);
  if (accumulates_path()) {
    for (const auto& block : rreq.accumulated) {
      offer_route({block.addr, from, block.seqnum, plus_one(block.hop_distance)}, now);
    }
  }

  if (rreq.target == self()) {
    ++own_seqnum_.value;
    if (const RouteEntry* back = table_.lookup(rreq.orig, now)) {
      Message rrep;
      rrep.kind = MessageKind::RREP;
      rrep.orig = self();
      rrep.orig_seqnum = own_seqnum_;
      rrep.target = rreq.orig;
      rrep.target_seqnum = rreq.orig_seqnum;
      rrep.hop_count = 0;
      rrep.ttl = config_.rreq_ttl;
      rrep.msg_id = next_msg_id();
      out.emplace_back(action::Unicast{std::move(rrep), back->next_hop});
    }
    finish(now, out);
    return out;
  }

  if (energy_gate(rreq) == EnergyVerdict::Suppress) {
    finish(now, out);
    return out;
  }

  const RouteEntry* known = config_.intermediate_rrep ? table_.lookup(rreq.target, now) : nullptr;
  const RouteEntry* back = table_.lookup(rreq.orig, now);
  if (known != nullptr && back != nullptr && known->next_hop != from) {
    Message rrep;
    rrep.kind = MessageKind::RREP;
    rrep.orig = rreq.target;
    rrep.orig_seqnum = known->seqnum;
    rrep.target = rreq.orig;
    rrep.target_seqnum = rreq.orig_seqnum;
    rrep.ttl = config_.rreq_ttl;
    rrep.msg_id = next_msg_id();
    if (accumulates_path()) {
      rrep.hop_count = static_cast<std::uint8_t>(known->hop_count - 1);
      rrep = append_address(std::move(rrep), self(), own_seqnum_);
    } else {
      rrep.hop_count = known->hop_count;
    }
    out.emplace_back(action::Unicast{std::move(rrep), back->next_hop});
  } else if (rreq.ttl > 1) {
    if (accumulates_path() && contains_address(rreq, self())) {
      finish(now, out);  // loop guard
      return out;
    }
    Message fwd = rreq;
    --fwd.ttl;
    if (accumulates_path()) {
      fwd = append_address(std::move(fwd), self(), own_seqnum_);
    } else {
      fwd.hop_count = plus_one(fwd.hop_count);
    }
    out.emplace_back(action::Broadcast{std::move(fwd)});
  }
  finish(now, out);
  return out;
}

Actions DymoRouter::process_rrep(const Message& rrep, NodeId from, double now) {
  Actions out;
  if (rrep.orig == self() || (accumulates_path() && contains_address(rrep, self()))) {
    return out;
  }

  offer_route({rrep.orig, from, rrep.orig_seqnum, plus_one(rrep.hop_count)}, now);
  if (accumulates_path()) {
    for (const auto& block : rrep.accumulated) {
      offer_route({block.addr, from, block.seqnum, plus_one(block.hop_distance)}, now);
    }
  }

  if (rrep.target != self()) {
    const RouteEntry* back = table_.lookup(rrep.target, now);
    // No backward route (expired): drop, the originator will retry.
    if (back != nullptr && back->next_hop != from && rrep.ttl > 1) {
      Message fwd = rrep;
      --fwd.ttl;
      if (accumulates_path()) {
        fwd = append_address(std::move(fwd), self(), own_seqnum_);
      } else {
        fwd.hop_count = plus_one(fwd.hop_count);
      }
      out.emplace_back(action::Unicast{std::move(fwd), back->next_hop});
    }
  }
  finish(now, out);
  return out;
}

Message DymoRouter::make_rerr(std::vector<Unreachable> unreachable) {
  Message rerr;
  rerr.kind = MessageKind::RERR;
  rerr.orig = self();
  rerr.orig_seqnum = own_seqnum_;
  rerr.target = kBroadcast;
  rerr.hop_count = 0;
  rerr.ttl = config_.rreq_ttl;
  rerr.unreachable = std::move(unreachable);
  rerr.msg_id = next_msg_id();
  return rerr;
}

void DymoRouter::break_link(NodeId neighbor, double, Actions& out) {
  std::vector<Unreachable> lost;
  for (const auto& [dest, entry] : table_) {
    if (entry.state == RouteState::Valid && entry.next_hop == neighbor) {
      lost.push_back(Unreachable{dest, entry.seqnum});
    }
  }
  if (lost.empty()) {
    return;
  }
  for (const auto& u : lost) {
    erase_route(u.dest);
  }
  out.emplace_back(action::Broadcast{make_rerr(std::move(lost))});
}

Actions DymoRouter::on_link_break(NodeId neighbor, double now) {
  Actions out;
  break_link(neighbor, now, out);
  finish(now, out);
  return out;
}

Actions DymoRouter::process_rerr(const Message& rerr, NodeId from, double now) {
  Actions out;
  std::vector<Unreachable> forwarded;
  for (const auto& u : rerr.unreachable) {
    const RouteEntry* e = table_.find(u.dest);
    if (e != nullptr && e->state == RouteState::Valid && e->next_hop == from &&
        seqnum_compare(e->seqnum, u.seqnum) != SeqOrder::Superior) {
      erase_route(u.dest);
      forwarded.push_back(u);
    }
  }
  if (!forwarded.empty() && rerr.ttl > 1) {
    Message fwd = rerr;
    fwd.unreachable = std::move(forwarded);
    --fwd.ttl;
    fwd.hop_count = plus_one(fwd.hop_count);
    out.emplace_back(action::Broadcast{std::move(fwd)});
  }
  finish(now, out);
  return out;
}

Actions DymoRouter::on_timer(double now) {
  Actions out;
  if (timer_at_ && *timer_at_ <= now) {
    timer_at_.reset();
  }

  std::vector<NodeId> expired;
  for (const auto& [dest, entry] : table_) {
    if (entry.expiry_time <= now) {
      expired.push_back(dest);
    }
  }
  for (NodeId dest : expired) {
    erase_route(dest);
  }
  std::erase_if(seen_rreqs_, [&](const auto& kv) {
    return kv.second + config_.rreq_seen_lifetime <= now;
  });

  for (auto it = pending_.begin(); it != pending_.end();) {
    Pending& p = it->second;
    if (p.next_retry_time > now || table_.lookup(it->first, now) != nullptr) {
      ++it;
      continue;
    }
    if (p.retry_count < config_.rreq_max_retries) {
      ++p.retry_count;
      send_rreq(it->first, now, out);
      ++it;
    } else {
      for (auto& packet : p.buffer) {
        out.emplace_back(action::Drop{std::move(packet), DropReason::NoRoute});
      }
      it = pending_.erase(it);
    }
  }
  finish(now, out);
  return out;
}

void DymoRouter::finish(double now, Actions& out) {
  for (auto it = pending_.begin(); it != pending_.end();) {
    RouteEntry* route = table_.find(it->first);
    if (route == nullptr || !route->usable(now)) {
      ++it;
      continue;
    }
    route->expiry_time = now + config_.route_timeout;
    for (auto& packet : it->second.buffer) {
      packet.hop_count = plus_one(packet.hop_count);
      out.emplace_back(action::Unicast{std::move(packet), route->next_hop});
    }
    it = pending_.erase(it);
  }

  // One housekeeping timer for the earliest route or seen-RREQ expiry.
  std::optional<double> earliest;
  auto consider = [&](double t) {
    if (!earliest || t < *earliest) earliest = t;
  };
  for (const auto& [dest, entry] : table_) consider(entry.expiry_time);
  for (const auto& [key, seen] : seen_rreqs_) consider(seen + config_.rreq_seen_lifetime);
  if (earliest && (!timer_at_ || *earliest < *timer_at_)) {
    timer_at_ = std::max(*earliest, now);
    out.emplace_back(action::SetTimer{*timer_at_, TimerTag::RouteExpiry});
  }
}

}  // namespace manet
