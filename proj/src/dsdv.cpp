#include "manet/dsdv.hpp"

#include <utility>

namespace manet {

void DsdvConfig::validate() const {
  if (!(periodic_update > 0.0)) throw ConfigError("dsdv.periodic_update must be > 0");
  if (!(startup_jitter >= 0.0)) throw ConfigError("dsdv.startup_jitter must be >= 0");
  if (buffer_capacity == 0) throw ConfigError("dsdv.buffer_capacity must be > 0");
}

DsdvRouter::DsdvRouter(NodeId self, DsdvConfig config, double phase)
    : Router(self), config_(config), next_periodic_(phase) {
  config_.validate();
}

const DsdvRouter::Entry* DsdvRouter::route(NodeId dest) const {
  auto it = table_.find(dest);
  return it == table_.end() ? nullptr : &it->second;
}

std::size_t DsdvRouter::buffered(NodeId dest) const {
  auto it = waiting_.find(dest);
  return it == waiting_.end() ? 0 : it->second.size();
}

Actions DsdvRouter::on_tick(double now) {
  if (next_periodic_ < now) {
    next_periodic_ = now;
  }
  return {action::SetTimer{next_periodic_, TimerTag::PeriodicUpdate}};
}

Message DsdvRouter::full_dump() {
  Message update;
  update.kind = MessageKind::TableUpdate;
  update.orig = self();
  update.orig_seqnum = own_seqnum_;
  update.target = kBroadcast;
  update.ttl = 1;
  update.msg_id = next_msg_id();
  update.accumulated.push_back(AddressBlock{self(), own_seqnum_, 0});
  for (const auto& [dest, e] : table_) {
    update.accumulated.push_back(AddressBlock{dest, e.seqnum, e.metric});
  }
  return update;
}

void DsdvRouter::advertise(std::vector<NodeId> changed, Actions& out) {
  if (changed.empty()) {
    return;
  }
  Message update;
  update.kind = MessageKind::TableUpdate;
  update.orig = self();
  update.orig_seqnum = own_seqnum_;
  update.target = kBroadcast;
  update.ttl = 1;
  update.msg_id = next_msg_id();
  for (NodeId dest : changed) {
    const Entry& e = table_.at(dest);
    update.accumulated.push_back(AddressBlock{dest, e.seqnum, e.metric});
  }
  out.emplace_back(action::Broadcast{std::move(update)});
}

Actions DsdvRouter::on_timer(double now) {
  Actions out;
  if (now >= next_periodic_) {
    own_seqnum_.value += 2;
    out.emplace_back(action::Broadcast{full_dump()});
    while (next_periodic_ <= now) {
      next_periodic_ += config_.periodic_update;
    }
    out.emplace_back(action::SetTimer{next_periodic_, TimerTag::PeriodicUpdate});
  }
  return out;
}

Actions DsdvRouter::process_message(const Message& msg, NodeId from, double) {
  Actions out;
  if (msg.kind == MessageKind::Data) {
    if (msg.target == self()) {
      out.emplace_back(action::Deliver{msg});
    } else {
      route_packet(msg, false, out);
    }
    return out;
  }
  if (msg.kind != MessageKind::TableUpdate) {
    return out;
  }

  std::vector<NodeId> changed;
  for (const auto& row : msg.accumulated) {
    if (row.addr == self()) {
      continue;
    }
    const std::uint8_t metric =
        row.hop_distance >= kInfinity - 1 ? kInfinity : static_cast<std::uint8_t>(row.hop_distance + 1);
    auto it = table_.find(row.addr);
    if (it == table_.end()) {
      if (metric != kInfinity) {
        table_.emplace(row.addr, Entry{from, row.seqnum, metric});
        changed.push_back(row.addr);
      }
      continue;
    }
    Entry& e = it->second;
    switch (seqnum_compare(row.seqnum, e.seqnum)) {
      case SeqOrder::Superior:
        e = Entry{metric == kInfinity ? e.next_hop : from, row.seqnum, metric};
        changed.push_back(row.addr);
        break;
      case SeqOrder::Same:
        if (metric < e.metric || (e.next_hop == from && metric != e.metric)) {
          e = Entry{from, row.seqnum, metric};
          changed.push_back(row.addr);
        }
        break;
      case SeqOrder::Inferior:
        break;
    }
  }
  advertise(std::move(changed), out);
  flush(out);
  return out;
}

Actions DsdvRouter::on_data(Message packet, double) {
  Actions out;
  route_packet(std::move(packet), true, out);
  return out;
}

void DsdvRouter::route_packet(Message packet, bool originated, Actions& out) {
  if (!originated) {
    if (packet.ttl <= 1) {
      out.emplace_back(action::Drop{std::move(packet), DropReason::TtlExpired});
      return;
    }
    --packet.ttl;
  }
  auto it = table_.find(packet.target);
  if (it == table_.end()) {
    out.emplace_back(action::Drop{std::move(packet), DropReason::NoRoute});
    return;
  }
  if (it->second.valid()) {
    ++packet.hop_count;
    out.emplace_back(action::Unicast{std::move(packet), it->second.next_hop});
    return;
  }
  // Known but broken: hold until a fresher sequence number repairs it.
  auto& queue = waiting_[packet.target];
  if (queue.size() >= config_.buffer_capacity) {
    out.emplace_back(action::Drop{std::move(queue.front()), DropReason::BufferFull});
    queue.pop_front();
  }
  queue.push_back(std::move(packet));
}

void DsdvRouter::flush(Actions& out) {
  for (auto it = waiting_.begin(); it != waiting_.end();) {
    const Entry* e = route(it->first);
    if (e == nullptr || !e->valid()) {
      ++it;
      continue;
    }
    for (auto& packet : it->second) {
      ++packet.hop_count;
      out.emplace_back(action::Unicast{std::move(packet), e->next_hop});
    }
    it = waiting_.erase(it);
  }
}

Actions DsdvRouter::on_link_break(NodeId neighbor, double) {
  Actions out;
  std::vector<NodeId> changed;
  for (auto& [dest, e] : table_) {
    if (e.valid() && e.next_hop == neighbor) {
      e.seqnum.value |= 1u;  // next odd number: broken
      e.metric = kInfinity;
      changed.push_back(dest);
    }
  }
  advertise(std::move(changed), out);
  return out;
}

}  // namespace manet
