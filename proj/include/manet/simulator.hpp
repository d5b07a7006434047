#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "manet/event_queue.hpp"
#include "manet/mobility.hpp"
#include "manet/router.hpp"
#include "manet/scenario.hpp"
#include "manet/trace.hpp"

namespace manet {

/// A data packet that reached its destination, with every node it visited.
struct DeliveredPacket {
  std::uint64_t msg_id = 0;
  NodeId src = 0;
  NodeId dst = 0;
  double sent = 0.0;
  double received = 0.0;
  std::uint8_t hop_count = 0;
  std::vector<NodeId> path;
};

/// Single-threaded discrete-event engine: unit-disk radio, per-node FIFO
/// drop-tail transmit queue, closed-form mobility and CBR sources. Routers
/// are driven only through the Router interface.
///
/// A unicast whose next hop is out of range when transmission starts is
/// reported back to the sender as a link break once its airtime elapses.
class Simulator {
 public:
  enum class EventKind { TxComplete, Receive, TimerFire, TrafficEmit, SimEnd };

  using TraceSink = std::function<void(const TraceRecord&)>;
  /// Every frame reception, before the router sees it. `transmitters` lists
  /// the nodes that sent this copy, originator first.
  using ReceiveObserver = std::function<void(double time, NodeId node, NodeId from, const Message& msg,
                                             std::span<const NodeId> transmitters)>;

  explicit Simulator(Scenario scenario);
  ~Simulator();

  void set_trace_sink(TraceSink sink) { sink_ = std::move(sink); }
  void set_receive_observer(ReceiveObserver observer) { observer_ = std::move(observer); }

  /// Processes events up to and including `until` (clamped to the duration).
  void run_until(double until);
  void run() { run_until(scenario_.duration); }

  double now() const { return now_; }
  bool finished() const { return finished_; }
  const Scenario& scenario() const { return scenario_; }
  const std::vector<Flow>& flows() const { return flows_; }

  Router& router(NodeId node) { return *nodes_.at(node).router; }
  const Router& router(NodeId node) const { return *nodes_.at(node).router; }
  /// Replaces a node's router; only valid before the first run_until.
  void set_router(NodeId node, std::unique_ptr<Router> router);
  Point position_at(NodeId node, double t) const { return nodes_.at(node).path.position_at(t); }
  bool in_range(NodeId a, NodeId b, double t) const;

  const std::vector<DeliveredPacket>& delivered() const { return delivered_; }
  std::uint64_t events_processed() const { return events_processed_; }

 private:
  struct Frame {
    Message msg;
    std::optional<NodeId> next_hop;
    std::vector<NodeId> transmitters;
    std::uint32_t size = 0;
  };
  using FramePtr = std::shared_ptr<const Frame>;

  struct TxComplete {
    NodeId node;
    FramePtr frame;
    bool failed;
  };
  struct Receive {
    NodeId node;
    NodeId from;
    FramePtr frame;
  };
  struct TimerFire {
    NodeId node;
  };
  struct TrafficEmit {
    std::size_t flow;
    std::uint64_t index;
  };
  struct SimEnd {};
  using Payload = std::variant<TxComplete, Receive, TimerFire, TrafficEmit, SimEnd>;

  struct Node {
    std::unique_ptr<Router> router;
    Trajectory path;
    std::deque<FramePtr> queue;
    bool busy = false;
    std::set<double> timers;
  };

  void dispatch(double time, Payload& payload);
  void handle(NodeId node, Actions actions, const Frame* context);
  void enqueue(NodeId node, FramePtr frame);
  void start_tx(NodeId node, FramePtr frame);
  void schedule_emit(std::size_t flow, std::uint64_t index);
  void emit(TraceEvent event, NodeId node, const Message& msg, std::optional<DropReason> reason = {});
  void terminate_data(std::uint64_t msg_id);

  Scenario scenario_;
  std::vector<Flow> flows_;
  std::vector<Node> nodes_;
  EventQueue<Payload> queue_;
  double now_ = 0.0;
  bool started_ = false;
  bool finished_ = false;
  std::uint64_t events_processed_ = 0;
  double range_sq_;

  TraceSink sink_;
  ReceiveObserver observer_;

  struct DataState {
    double sent = 0.0;
    std::vector<NodeId> path;
  };
  std::unordered_map<std::uint64_t, DataState> in_flight_;
  std::vector<DeliveredPacket> delivered_;
};

/// Result of a complete run: the trace plus the final per-node state sizes.
struct RunResult {
  std::vector<TraceRecord> trace;
  std::vector<DeliveredPacket> delivered;
  std::vector<std::size_t> state_sizes;
};

RunResult run(const Scenario& scenario);

}  // namespace manet
