#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <utility>

#include "manet/message.hpp"
#include "manet/router.hpp"
#include "manet/routing_table.hpp"

namespace manet {

struct DymoConfig {
  double route_timeout = 5.0;
  double rreq_wait = 1.0;
  int rreq_max_retries = 3;
  std::uint8_t rreq_ttl = 32;
  std::size_t buffer_capacity = 16;
  double energy_threshold = 0.0;
  double rreq_seen_lifetime = 5.0;
  /// Lets a node holding a valid route answer an RREQ on the target's behalf.
  bool intermediate_rrep = true;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

enum class EnergyVerdict { Forward, Suppress };

/// Reactive router with path accumulation. Routes are learned for the
/// originator and for every address accumulated in RREQ/RREP messages,
/// and only superior sequence numbers ever replace an existing entry.
///
/// Link breaks come exclusively from on_link_break (unicast failure);
/// the router sends no HELLOs.
class DymoRouter : public Router {
 public:
  DymoRouter(NodeId self, DymoConfig config, double energy = 0.0);

  Actions on_tick(double now) override;
  Actions on_data(Message packet, double now) override;
  Actions process_message(const Message& msg, NodeId from, double now) override;
  Actions on_link_break(NodeId neighbor, double now) override;
  Actions on_timer(double now) override;
  std::size_t state_size() const override { return table_.size(); }

  Actions originate_rreq(NodeId dest, double now);
  Actions process_rreq(const Message& rreq, NodeId from, double now);
  Actions process_rrep(const Message& rrep, NodeId from, double now);
  Actions process_rerr(const Message& rerr, NodeId from, double now);
  EnergyVerdict energy_gate(const Message& rreq) const;

  const RoutingTable& table() const { return table_; }
  SeqNum own_seqnum() const { return own_seqnum_; }
  const DymoConfig& config() const { return config_; }
  double energy() const { return energy_; }
  void set_energy(double energy) { energy_ = energy; }

  bool discovery_pending(NodeId dest) const { return pending_.contains(dest); }
  std::size_t buffered(NodeId dest) const;
  std::size_t seen_rreq_count() const { return seen_rreqs_.size(); }

 protected:
  /// Whether forwarders append themselves to RREQ/RREP.
  virtual bool accumulates_path() const { return true; }
  virtual RouteDecision decide(const RouteEntry* existing, const RouteCandidate& candidate) const;

  /// Applies decide(); refreshes the entry's lifetime when installed.
  bool offer_route(const RouteCandidate& candidate, double now);

  /// Deletes every valid route whose next hop is `neighbor` and broadcasts
  /// one RERR listing them.
  void break_link(NodeId neighbor, double now, Actions& out);

  /// Sends buffered packets for destinations that now have a route, and
  /// requests a timer for the earliest pending deadline.
  void finish(double now, Actions& out);

  RoutingTable table_;
  SeqNum own_seqnum_{};

 private:
  struct Pending {
    std::deque<Message> buffer;
    int retry_count = 0;
    double next_retry_time = 0.0;
  };

  void forward_data(Message packet, double now, Actions& out);
  void send_rreq(NodeId dest, double now, Actions& out);
  void remember(NodeId dest, SeqNum seqnum);
  void erase_route(NodeId dest);
  Message make_rerr(std::vector<Unreachable> unreachable);

  DymoConfig config_;
  double energy_;
  std::map<NodeId, Pending> pending_;
  std::map<std::pair<NodeId, std::uint32_t>, double> seen_rreqs_;
  /// Last sequence number known for each destination, kept after its route
  /// is deleted so a no-route RERR can still name it.
  std::map<NodeId, SeqNum> known_seqnums_;
  std::optional<double> timer_at_;
};

}  // namespace manet
