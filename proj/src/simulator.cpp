#include "manet/simulator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "manet/codec.hpp"

namespace manet {

Simulator::Simulator(Scenario scenario) : scenario_(std::move(scenario)) {
  scenario_.validate();
  flows_ = resolve_flows(scenario_);
  range_sq_ = scenario_.radio_range * scenario_.radio_range;

  auto paths = build_trajectories(scenario_);
  nodes_.reserve(scenario_.node_count);
  for (NodeId i = 0; i < scenario_.node_count; ++i) {
    const auto e = scenario_.energy.find(i);
    const double energy = e == scenario_.energy.end() ? 0.0 : e->second;
    nodes_.push_back(Node{make_router(scenario_.protocol, scenario_.protocol_config, i, energy, scenario_.seed),
                          std::move(paths[i]),
                          {},
                          false,
                          {}});
  }
  queue_.push(scenario_.duration, SimEnd{});
}

Simulator::~Simulator() = default;

void Simulator::set_router(NodeId node, std::unique_ptr<Router> router) {
  if (started_) {
    throw std::logic_error("set_router after the simulation started");
  }
  nodes_.at(node).router = std::move(router);
}

bool Simulator::in_range(NodeId a, NodeId b, double t) const {
  const Point pa = position_at(a, t);
  const Point pb = position_at(b, t);
  const double dx = pa.x - pb.x;
  const double dy = pa.y - pb.y;
  return dx * dx + dy * dy <= range_sq_;
}

void Simulator::run_until(double until) {
  if (!started_) {
    // Bootstrap lazily so trace sinks installed after construction see t = 0.
    started_ = true;
    for (NodeId i = 0; i < nodes_.size(); ++i) {
      handle(i, nodes_[i].router->on_tick(0.0), nullptr);
    }
    for (std::size_t f = 0; f < flows_.size(); ++f) {
      schedule_emit(f, 0);
    }
  }
  until = std::min(until, scenario_.duration);
  while (!finished_ && !queue_.empty() && queue_.top().time <= until) {
    auto event = queue_.pop();
    now_ = event.time;
    ++events_processed_;
    dispatch(event.time, event.payload);
  }
}

void Simulator::schedule_emit(std::size_t flow, std::uint64_t index) {
  const Flow& f = flows_[flow];
  const double t = f.start + static_cast<double>(index) * f.interval;
  const double stop = f.stop.value_or(scenario_.duration);
  if (t < stop && t < scenario_.duration) {
    queue_.push(t, TrafficEmit{flow, index});
  }
}

void Simulator::emit(TraceEvent event, NodeId node, const Message& msg, std::optional<DropReason> reason) {
  if (!sink_) {
    return;
  }
  TraceRecord r;
  r.time = now_;
  r.event = event;
  r.node = node;
  r.msg_id = msg.msg_id;
  r.kind = msg.kind;
  r.size = msg.kind == MessageKind::Data ? msg.payload_size : static_cast<std::uint32_t>(encoded_size(msg));
  r.src = msg.orig;
  r.dst = msg.target;
  r.drop_reason = reason;
  sink_(r);
}

void Simulator::terminate_data(std::uint64_t msg_id) { in_flight_.erase(msg_id); }

void Simulator::dispatch(double time, Payload& payload) {
  std::visit(
      [&](auto& ev) {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, SimEnd>) {
          finished_ = true;
        } else if constexpr (std::is_same_v<T, TrafficEmit>) {
          const Flow& f = flows_[ev.flow];
          Router& src = *nodes_[f.src].router;
          Message packet;
          packet.kind = MessageKind::Data;
          packet.orig = f.src;
          packet.target = f.dst;
          packet.ttl = scenario_.data_ttl;
          packet.payload_size = f.packet_size;
          packet.msg_id = src.next_msg_id();
          in_flight_[packet.msg_id] = DataState{time, {f.src}};
          emit(TraceEvent::Send, f.src, packet);
          if (f.src == f.dst) {
            handle(f.src, {action::Deliver{std::move(packet)}}, nullptr);
          } else {
            handle(f.src, src.on_data(std::move(packet), time), nullptr);
          }
          schedule_emit(ev.flow, ev.index + 1);
        } else if constexpr (std::is_same_v<T, Receive>) {
          const Frame& frame = *ev.frame;
          if (frame.msg.kind == MessageKind::Data) {
            if (auto it = in_flight_.find(frame.msg.msg_id); it != in_flight_.end()) {
              it->second.path.push_back(ev.node);
            }
          }
          if (observer_) {
            observer_(time, ev.node, ev.from, frame.msg, frame.transmitters);
          }
          handle(ev.node, nodes_[ev.node].router->process_message(frame.msg, ev.from, time), &frame);
        } else if constexpr (std::is_same_v<T, TxComplete>) {
          if (ev.failed) {
            const Message& msg = ev.frame->msg;
            if (msg.kind == MessageKind::Data) {
              emit(TraceEvent::Drop, ev.node, msg, DropReason::LinkBreak);
              terminate_data(msg.msg_id);
            }
            handle(ev.node, nodes_[ev.node].router->on_link_break(*ev.frame->next_hop, time), nullptr);
          }
          Node& n = nodes_[ev.node];
          n.busy = false;
          if (!n.queue.empty()) {
            FramePtr next = std::move(n.queue.front());
            n.queue.pop_front();
            start_tx(ev.node, std::move(next));
          }
        } else if constexpr (std::is_same_v<T, TimerFire>) {
          nodes_[ev.node].timers.erase(time);
          handle(ev.node, nodes_[ev.node].router->on_timer(time), nullptr);
        }
      },
      payload);
}

void Simulator::handle(NodeId node, Actions actions, const Frame* context) {
  auto transmitters_for = [&](const Message& msg) {
    std::vector<NodeId> t;
    if (msg.kind == MessageKind::Data) {
      return t;
    }
    if (context != nullptr && context->msg.msg_id == msg.msg_id) {
      t = context->transmitters;
    }
    t.push_back(node);
    return t;
  };

  for (auto& a : actions) {
    std::visit(
        [&](auto& act) {
          using T = std::decay_t<decltype(act)>;
          if constexpr (std::is_same_v<T, action::Broadcast>) {
            auto frame = std::make_shared<Frame>();
            frame->transmitters = transmitters_for(act.msg);
            frame->size = static_cast<std::uint32_t>(encoded_size(act.msg));
            frame->msg = std::move(act.msg);
            enqueue(node, std::move(frame));
          } else if constexpr (std::is_same_v<T, action::Unicast>) {
            if (act.next_hop == node) {
              throw ConfigError("node " + std::to_string(node) + " attempted to unicast to itself");
            }
            auto frame = std::make_shared<Frame>();
            frame->transmitters = transmitters_for(act.msg);
            frame->size = static_cast<std::uint32_t>(encoded_size(act.msg));
            frame->next_hop = act.next_hop;
            frame->msg = std::move(act.msg);
            enqueue(node, std::move(frame));
          } else if constexpr (std::is_same_v<T, action::Deliver>) {
            emit(TraceEvent::Recv, node, act.packet);
            DeliveredPacket d;
            d.msg_id = act.packet.msg_id;
            d.src = act.packet.orig;
            d.dst = act.packet.target;
            d.received = now_;
            d.hop_count = act.packet.hop_count;
            if (auto it = in_flight_.find(d.msg_id); it != in_flight_.end()) {
              d.sent = it->second.sent;
              d.path = std::move(it->second.path);
            }
            delivered_.push_back(std::move(d));
            terminate_data(act.packet.msg_id);
          } else if constexpr (std::is_same_v<T, action::Drop>) {
            emit(TraceEvent::Drop, node, act.packet, act.reason);
            if (act.packet.kind == MessageKind::Data) {
              terminate_data(act.packet.msg_id);
            }
          } else if constexpr (std::is_same_v<T, action::SetTimer>) {
            const double t = std::max(act.time, now_);
            if (nodes_[node].timers.insert(t).second) {
              queue_.push(t, TimerFire{node});
            }
          }
        },
        a);
  }
}

void Simulator::enqueue(NodeId node, FramePtr frame) {
  Node& n = nodes_[node];
  if (!n.busy) {
    start_tx(node, std::move(frame));
    return;
  }
  if (n.queue.size() >= scenario_.queue_capacity) {
    emit(TraceEvent::Drop, node, frame->msg, DropReason::DropTail);
    if (frame->msg.kind == MessageKind::Data) {
      terminate_data(frame->msg.msg_id);
    }
    return;
  }
  n.queue.push_back(std::move(frame));
}

void Simulator::start_tx(NodeId node, FramePtr frame) {
  nodes_[node].busy = true;
  const Message& msg = frame->msg;
  if (msg.kind != MessageKind::Data || msg.orig != node) {
    emit(msg.orig == node ? TraceEvent::Send : TraceEvent::Forward, node, msg);
  }

  const double done = now_ + static_cast<double>(frame->size) * 8.0 / scenario_.bitrate;
  bool failed = false;
  if (frame->next_hop) {
    const NodeId hop = *frame->next_hop;
    if (hop < nodes_.size() && in_range(node, hop, now_)) {
      queue_.push(done, Receive{hop, node, frame});
    } else {
      failed = true;
    }
  } else {
    for (NodeId j = 0; j < nodes_.size(); ++j) {
      if (j != node && in_range(node, j, now_)) {
        queue_.push(done, Receive{j, node, frame});
      }
    }
  }
  queue_.push(done, TxComplete{node, std::move(frame), failed});
}

RunResult run(const Scenario& scenario) {
  RunResult result;
  Simulator sim(scenario);
  sim.set_trace_sink([&](const TraceRecord& r) { result.trace.push_back(r); });
  sim.run();
  result.delivered = sim.delivered();
  for (NodeId i = 0; i < scenario.node_count; ++i) {
    result.state_sizes.push_back(sim.router(i).state_size());
  }
  return result;
}

}  // namespace manet
