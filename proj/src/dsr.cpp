#include "manet/dsr.hpp"

#include <algorithm>

namespace manet {
namespace {

SourceRoute route_of(const Message& msg) {
  SourceRoute route;
  route.reserve(msg.accumulated.size());
  for (const auto& b : msg.accumulated) {
    route.push_back(b.addr);
  }
  return route;
}

std::vector<AddressBlock> blocks_of(const SourceRoute& route) {
  std::vector<AddressBlock> blocks;
  blocks.reserve(route.size());
  for (std::size_t i = 0; i < route.size(); ++i) {
    blocks.push_back(AddressBlock{route[i], SeqNum{}, static_cast<std::uint8_t>(i)});
  }
  return blocks;
}

std::ptrdiff_t index_of(const SourceRoute& route, NodeId node) {
  auto it = std::find(route.begin(), route.end(), node);
  return it == route.end() ? -1 : it - route.begin();
}

bool uses_link(const SourceRoute& route, NodeId a, NodeId b) {
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    if ((route[i] == a && route[i + 1] == b) || (route[i] == b && route[i + 1] == a)) {
      return true;
    }
  }
  return false;
}

}  // namespace

bool DsrRouteCache::add(const SourceRoute& route) {
  if (route.size() < 2 || route.front() != owner_) {
    return false;
  }
  auto& known = routes_[route.back()];
  if (std::find(known.begin(), known.end(), route) != known.end()) {
    return false;
  }
  known.push_back(route);
  return true;
}

std::size_t DsrRouteCache::learn(const SourceRoute& path) {
  const auto k = index_of(path, owner_);
  if (k < 0) {
    return 0;
  }
  std::size_t added = 0;
  for (std::size_t j = static_cast<std::size_t>(k) + 1; j < path.size(); ++j) {
    added += add(SourceRoute(path.begin() + k, path.begin() + static_cast<std::ptrdiff_t>(j) + 1));
  }
  for (std::ptrdiff_t j = k - 1; j >= 0; --j) {
    SourceRoute back(path.begin() + j, path.begin() + k + 1);
    std::reverse(back.begin(), back.end());
    added += add(back);
  }
  return added;
}

const SourceRoute* DsrRouteCache::best(NodeId dest) const {
  auto it = routes_.find(dest);
  if (it == routes_.end() || it->second.empty()) {
    return nullptr;
  }
  const SourceRoute* best = &it->second.front();
  for (const auto& r : it->second) {
    if (r.size() < best->size()) {
      best = &r;
    }
  }
  return best;
}

std::size_t DsrRouteCache::remove_link(NodeId a, NodeId b) {
  std::size_t removed = 0;
  for (auto it = routes_.begin(); it != routes_.end();) {
    removed += std::erase_if(it->second, [&](const SourceRoute& r) { return uses_link(r, a, b); });
    it = it->second.empty() ? routes_.erase(it) : std::next(it);
  }
  return removed;
}

std::size_t DsrRouteCache::size() const {
  std::size_t n = 0;
  for (const auto& [dest, list] : routes_) {
    n += list.size();
  }
  return n;
}

std::size_t DsrRouteCache::routes_to(NodeId dest) const {
  auto it = routes_.find(dest);
  return it == routes_.end() ? 0 : it->second.size();
}

void DsrConfig::validate() const {
  if (!(rreq_wait > 0.0)) throw ConfigError("dsr.rreq_wait must be > 0");
  if (rreq_max_retries < 1) throw ConfigError("dsr.rreq_max_retries must be >= 1");
  if (rreq_ttl == 0) throw ConfigError("dsr.rreq_ttl must be > 0");
  if (buffer_capacity == 0) throw ConfigError("dsr.buffer_capacity must be > 0");
  if (!(rreq_seen_lifetime > 0.0)) throw ConfigError("dsr.rreq_seen_lifetime must be > 0");
}

DsrRouter::DsrRouter(NodeId self, DsrConfig config) : Router(self), config_(config), cache_(self) {
  config_.validate();
}

std::size_t DsrRouter::buffered(NodeId dest) const {
  auto it = pending_.find(dest);
  return it == pending_.end() ? 0 : it->second.buffer.size();
}

Actions DsrRouter::on_tick(double) { return {}; }

void DsrRouter::send_via_cache(Message packet, Actions& out) {
  const SourceRoute* route = cache_.best(packet.target);
  packet.accumulated = blocks_of(*route);
  packet.hop_count = 1;
  const NodeId next = (*route)[1];
  users_[next].insert(self());
  out.emplace_back(action::Unicast{std::move(packet), next});
}

Actions DsrRouter::on_data(Message packet, double now) {
  Actions out;
  if (cache_.best(packet.target) != nullptr) {
    send_via_cache(std::move(packet), out);
    return out;
  }
  const NodeId dest = packet.target;
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
  return out;
}

void DsrRouter::send_rreq(NodeId dest, double now, Actions& out) {
  Message rreq;
  rreq.kind = MessageKind::RREQ;
  rreq.orig = self();
  rreq.orig_seqnum = SeqNum{++request_id_};
  rreq.target = dest;
  rreq.ttl = config_.rreq_ttl;
  rreq.msg_id = next_msg_id();
  out.emplace_back(action::Broadcast{std::move(rreq)});

  Pending& pending = pending_[dest];
  pending.next_retry_time = now + config_.rreq_wait;
  out.emplace_back(action::SetTimer{pending.next_retry_time, TimerTag::RreqRetry});
}

Actions DsrRouter::process_message(const Message& msg, NodeId from, double now) {
  Actions out;
  switch (msg.kind) {
    case MessageKind::RREQ:
      handle_rreq(msg, from, now, out);
      break;
    case MessageKind::RREP:
      handle_rrep(msg, out);
      break;
    case MessageKind::RERR:
      handle_rerr(msg, out);
      break;
    case MessageKind::Data:
      handle_data(msg, out);
      break;
    case MessageKind::HELLO:
    case MessageKind::TableUpdate:
      break;
  }
  flush(out);
  return out;
}

void DsrRouter::handle_rreq(const Message& rreq, NodeId, double now, Actions& out) {
  if (rreq.orig == self() || contains_address(rreq, self())) {
    return;
  }
  SourceRoute path{rreq.orig};
  for (const auto& b : rreq.accumulated) {
    path.push_back(b.addr);
  }
  path.push_back(self());
  cache_.learn(path);

  if (rreq.target == self()) {
    // Every copy that reaches the target yields its own reply.
    Message rrep;
    rrep.kind = MessageKind::RREP;
    rrep.orig = self();
    rrep.orig_seqnum = rreq.orig_seqnum;
    rrep.target = rreq.orig;
    rrep.ttl = config_.rreq_ttl;
    rrep.accumulated = blocks_of(path);
    rrep.msg_id = next_msg_id();
    out.emplace_back(action::Unicast{std::move(rrep), path[path.size() - 2]});
    return;
  }

  const auto key = std::make_pair(rreq.orig, rreq.orig_seqnum.value);
  if (seen_.contains(key)) {
    return;
  }
  seen_.emplace(key, now);
  if (rreq.ttl > 1) {
    Message fwd = append_address(rreq, self(), SeqNum{});
    --fwd.ttl;
    out.emplace_back(action::Broadcast{std::move(fwd)});
  }
}

void DsrRouter::handle_rrep(const Message& rrep, Actions& out) {
  const SourceRoute route = route_of(rrep);
  cache_.learn(route);
  if (rrep.target == self()) {
    return;
  }
  const auto k = index_of(route, self());
  if (k <= 0 || rrep.ttl <= 1) {
    return;
  }
  Message fwd = rrep;
  --fwd.ttl;
  ++fwd.hop_count;
  out.emplace_back(action::Unicast{std::move(fwd), route[static_cast<std::size_t>(k - 1)]});
}

void DsrRouter::handle_rerr(const Message& rerr, Actions& out) {
  for (const auto& u : rerr.unreachable) {
    cache_.remove_link(rerr.orig, u.dest);
  }
  if (rerr.target == self() || rerr.ttl <= 1) {
    return;
  }
  const SourceRoute* back = cache_.best(rerr.target);
  if (back == nullptr) {
    return;
  }
  Message fwd = rerr;
  --fwd.ttl;
  ++fwd.hop_count;
  out.emplace_back(action::Unicast{std::move(fwd), (*back)[1]});
}

void DsrRouter::handle_data(const Message& packet, Actions& out) {
  const SourceRoute route = route_of(packet);
  cache_.learn(route);
  if (packet.target == self()) {
    out.emplace_back(action::Deliver{packet});
    return;
  }
  const auto k = index_of(route, self());
  if (k < 0 || static_cast<std::size_t>(k) + 1 >= route.size()) {
    out.emplace_back(action::Drop{packet, DropReason::NoRoute});
    return;
  }
  if (packet.ttl <= 1) {
    out.emplace_back(action::Drop{packet, DropReason::TtlExpired});
    return;
  }
  Message fwd = packet;
  --fwd.ttl;
  ++fwd.hop_count;
  const NodeId next = route[static_cast<std::size_t>(k) + 1];
  users_[next].insert(packet.orig);
  out.emplace_back(action::Unicast{std::move(fwd), next});
}

Actions DsrRouter::on_link_break(NodeId neighbor, double) {
  Actions out;
  cache_.remove_link(self(), neighbor);
  auto it = users_.find(neighbor);
  if (it == users_.end()) {
    return out;
  }
  for (NodeId source : it->second) {
    if (source == self()) {
      continue;
    }
    const SourceRoute* back = cache_.best(source);
    if (back == nullptr) {
      continue;
    }
    Message rerr;
    rerr.kind = MessageKind::RERR;
    rerr.orig = self();
    rerr.target = source;
    rerr.ttl = config_.rreq_ttl;
    rerr.unreachable.push_back(Unreachable{neighbor, SeqNum{}});
    rerr.msg_id = next_msg_id();
    out.emplace_back(action::Unicast{std::move(rerr), (*back)[1]});
  }
  users_.erase(it);
  return out;
}

Actions DsrRouter::on_timer(double now) {
  Actions out;
  std::erase_if(seen_, [&](const auto& kv) { return kv.second + config_.rreq_seen_lifetime <= now; });
  for (auto it = pending_.begin(); it != pending_.end();) {
    Pending& p = it->second;
    if (p.next_retry_time > now || cache_.best(it->first) != nullptr) {
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
  flush(out);
  return out;
}

void DsrRouter::flush(Actions& out) {
  for (auto it = pending_.begin(); it != pending_.end();) {
    if (cache_.best(it->first) == nullptr) {
      ++it;
      continue;
    }
    for (auto& packet : it->second.buffer) {
      send_via_cache(std::move(packet), out);
    }
    it = pending_.erase(it);
  }
}

}  // namespace manet
