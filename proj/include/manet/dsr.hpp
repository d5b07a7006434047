#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "manet/router.hpp"

namespace manet {

using SourceRoute = std::vector<NodeId>;

/// dest -> every source route learned for it, each starting at the owner.
/// Nothing ever ages out; only RERRs and local link failures remove routes.
class DsrRouteCache {
 public:
  explicit DsrRouteCache(NodeId owner) : owner_(owner) {}

  /// Caches every sub-route of `path` that starts at the owner (both
  /// directions). Returns the number of routes added.
  std::size_t learn(const SourceRoute& path);

  bool add(const SourceRoute& route);

  /// Shortest cached route to dest, earliest-learned on ties.
  const SourceRoute* best(NodeId dest) const;

  /// Drops every route that uses the directed or reverse link a-b.
  std::size_t remove_link(NodeId a, NodeId b);

  std::size_t size() const;
  std::size_t routes_to(NodeId dest) const;

 private:
  NodeId owner_;
  std::map<NodeId, std::vector<SourceRoute>> routes_;
};

struct DsrConfig {
  double rreq_wait = 1.0;
  int rreq_max_retries = 3;
  std::uint8_t rreq_ttl = 32;
  std::size_t buffer_capacity = 16;
  double rreq_seen_lifetime = 5.0;

  void validate() const;
};

/// Source-routing baseline. Data carries its full route as address blocks.
/// Routes are cached without expiry by every node they pass through; a
/// forwarding failure sends a RERR naming the broken link back to the
/// packet's source, which falls back to its next cached route before
/// rediscovering.
class DsrRouter : public Router {
 public:
  DsrRouter(NodeId self, DsrConfig config);

  Actions on_tick(double now) override;
  Actions on_data(Message packet, double now) override;
  Actions process_message(const Message& msg, NodeId from, double now) override;
  Actions on_link_break(NodeId neighbor, double now) override;
  Actions on_timer(double now) override;
  std::size_t state_size() const override { return cache_.size(); }

  const DsrRouteCache& cache() const { return cache_; }
  DsrRouteCache& cache() { return cache_; }
  std::size_t buffered(NodeId dest) const;
  std::uint32_t requests_sent() const { return request_id_; }

 private:
  struct Pending {
    std::deque<Message> buffer;
    int retry_count = 0;
    double next_retry_time = 0.0;
  };

  void send_via_cache(Message packet, Actions& out);
  void send_rreq(NodeId dest, double now, Actions& out);
  void handle_rreq(const Message& rreq, NodeId from, double now, Actions& out);
  void handle_rrep(const Message& rrep, Actions& out);
  void handle_rerr(const Message& rerr, Actions& out);
  void handle_data(const Message& packet, Actions& out);
  void flush(Actions& out);

  DsrConfig config_;
  DsrRouteCache cache_;
  std::uint32_t request_id_ = 0;
  std::map<NodeId, Pending> pending_;
  std::map<std::pair<NodeId, std::uint32_t>, double> seen_;
  /// Originators of data recently sent through each neighbour, so a link
  /// failure can be reported back to them.
  std::map<NodeId, std::set<NodeId>> users_;
};

}  // namespace manet
