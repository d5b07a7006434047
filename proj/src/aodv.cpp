#include "manet/aodv.hpp"

#include <vector>

namespace manet {

void AodvConfig::validate() const {
  base.validate();
  if (!(hello_interval > 0.0)) throw ConfigError("aodv.hello_interval must be > 0");
  if (allowed_hello_loss < 1) throw ConfigError("aodv.allowed_hello_loss must be >= 1");
}

AodvRouter::AodvRouter(NodeId self, AodvConfig config, double hello_phase, double energy)
    : DymoRouter(self, config.base, energy), aodv_(config), next_hello_(hello_phase) {
  aodv_.validate();
}

RouteDecision AodvRouter::decide(const RouteEntry* existing, const RouteCandidate& candidate) const {
  return aodv_update_decision(existing, candidate);
}

Message AodvRouter::make_hello() {
  Message hello;
  hello.kind = MessageKind::HELLO;
  hello.orig = self();
  hello.orig_seqnum = own_seqnum_;
  hello.target = kBroadcast;
  hello.hop_count = 0;
  hello.ttl = 1;
  hello.msg_id = next_msg_id();
  return hello;
}

Actions AodvRouter::on_tick(double now) {
  if (next_hello_ < now) {
    next_hello_ = now;
  }
  return {action::SetTimer{next_hello_, TimerTag::Hello}};
}

Actions AodvRouter::process_message(const Message& msg, NodeId from, double now) {
  last_heard_[from] = now;
  if (msg.kind != MessageKind::HELLO) {
    return DymoRouter::process_message(msg, from, now);
  }
  Actions out;
  if (!offer_route({from, from, msg.orig_seqnum, 1}, now)) {
    RouteEntry* e = table_.find(from);
    if (e != nullptr && e->usable(now) && e->next_hop == from && e->hop_count == 1) {
      e->expiry_time = now + config().route_timeout;
    }
  }
  finish(now, out);
  return out;
}

Actions AodvRouter::on_timer(double now) {
  Actions out = DymoRouter::on_timer(now);

  const double silence = aodv_.allowed_hello_loss * aodv_.hello_interval;
  std::vector<NodeId> lost;
  for (const auto& [neighbor, heard] : last_heard_) {
    if (now - heard > silence) {
      lost.push_back(neighbor);
    }
  }
  for (NodeId neighbor : lost) {
    last_heard_.erase(neighbor);
    break_link(neighbor, now, out);
  }

  if (now >= next_hello_) {
    out.emplace_back(action::Broadcast{make_hello()});
    while (next_hello_ <= now) {
      next_hello_ += aodv_.hello_interval;
    }
    out.emplace_back(action::SetTimer{next_hello_, TimerTag::Hello});
  }
  finish(now, out);
  return out;
}

}  // namespace manet
