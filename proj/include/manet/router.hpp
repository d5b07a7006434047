#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "manet/message.hpp"
#include "manet/types.hpp"

namespace manet {

enum class DropReason : std::uint8_t {
  BufferFull,
  NoRoute,
  DropTail,
  TtlExpired,
  LinkBreak,
};

std::string_view to_string(DropReason reason);

enum class TimerTag : std::uint8_t {
  RreqRetry,
  RouteExpiry,
  Hello,
  PeriodicUpdate,
};

namespace action {

struct Broadcast {
  Message msg;
};

struct Unicast {
  Message msg;
  NodeId next_hop = 0;
};

struct Deliver {
  Message packet;
};

struct Drop {
  Message packet;
  DropReason reason = DropReason::NoRoute;
};

struct SetTimer {
  double time = 0.0;
  TimerTag tag = TimerTag::RreqRetry;
};

}  // namespace action

/// Output of every router entry point. The engine executes these in order.
using RouterAction =
    std::variant<action::Broadcast, action::Unicast, action::Deliver, action::Drop, action::SetTimer>;
using Actions = std::vector<RouterAction>;

/// Protocol-neutral router state machine. One instance per node, driven by
/// the simulator one input at a time; implementations never touch the
/// engine directly.
class Router {
 public:
  explicit Router(NodeId self) : self_(self) {}
  virtual ~Router() = default;

  Router(const Router&) = delete;
  Router& operator=(const Router&) = delete;

  NodeId self() const { return self_; }

  /// Called once at simulation start.
  virtual Actions on_tick(double now) = 0;

  /// A Data packet originated here (packet.orig == self) and addressed elsewhere.
  virtual Actions on_data(Message packet, double now) = 0;

  /// Any frame received from neighbor `from`, routing or data.
  virtual Actions process_message(const Message& msg, NodeId from, double now) = 0;

  /// Unicast to `neighbor` failed.
  virtual Actions on_link_break(NodeId neighbor, double now) = 0;

  /// A previously requested SetTimer has come due. Handles every expiry <= now.
  virtual Actions on_timer(double now) = 0;

  /// Number of routing state entries held (routes or cached paths).
  virtual std::size_t state_size() const = 0;

  /// Allocates the next msg_id originated by this node.
  std::uint64_t next_msg_id() { return make_msg_id(self_, ++msg_counter_); }

 private:
  NodeId self_;
  std::uint32_t msg_counter_ = 0;
};

}  // namespace manet
