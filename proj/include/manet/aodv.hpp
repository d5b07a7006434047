#pragma once

#include <map>

#include "manet/dymo.hpp"

namespace manet {

struct AodvConfig {
  DymoConfig base;
  double hello_interval = 1.0;
  int allowed_hello_loss = 2;

  void validate() const;
};

/// AODV baseline. Shares DYMO's discovery and RERR machinery but
///  - forwarders never append themselves, so intermediates learn only the
///    route back to the RREQ originator and forward to the RREP originator;
///  - same-seqnum routes with strictly fewer hops replace the entry;
///  - every node broadcasts a HELLO each hello_interval, and a neighbor
///    silent for allowed_hello_loss intervals is treated as a link break.
class AodvRouter : public DymoRouter {
 public:
  /// `hello_phase` in [0, hello_interval) desynchronises neighbours.
  AodvRouter(NodeId self, AodvConfig config, double hello_phase = 0.0, double energy = 0.0);

  Actions on_tick(double now) override;
  Actions process_message(const Message& msg, NodeId from, double now) override;
  Actions on_timer(double now) override;

  const std::map<NodeId, double>& neighbors() const { return last_heard_; }

 protected:
  bool accumulates_path() const override { return false; }
  RouteDecision decide(const RouteEntry* existing, const RouteCandidate& candidate) const override;

 private:
  Message make_hello();

  AodvConfig aodv_;
  double next_hello_;
  std::map<NodeId, double> last_heard_;
};

}  // namespace manet
