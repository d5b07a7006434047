#pragma once

#include <cstddef>
#include <deque>
#include <map>

#include "manet/router.hpp"

namespace manet {

struct DsdvConfig {
  double periodic_update = 15.0;
  /// First full dump happens at a per-node phase in [0, startup_jitter).
  double startup_jitter = 1.0;
  std::size_t buffer_capacity = 16;

  void validate() const;
};

/// Proactive distance-vector baseline. Each node owns an even sequence
/// number, bumped by two per full-table advertisement; a broken route is
/// advertised with the next odd number and an infinite metric. Any table
/// change triggers an incremental TableUpdate carrying just the changed rows.
class DsdvRouter : public Router {
 public:
  static constexpr std::uint8_t kInfinity = 255;

  struct Entry {
    NodeId next_hop = 0;
    SeqNum seqnum{};
    std::uint8_t metric = kInfinity;

    bool valid() const { return metric != kInfinity; }
  };

  DsdvRouter(NodeId self, DsdvConfig config, double phase = 0.0);

  Actions on_tick(double now) override;
  Actions on_data(Message packet, double now) override;
  Actions process_message(const Message& msg, NodeId from, double now) override;
  Actions on_link_break(NodeId neighbor, double now) override;
  Actions on_timer(double now) override;
  std::size_t state_size() const override { return table_.size(); }

  const std::map<NodeId, Entry>& table() const { return table_; }
  const Entry* route(NodeId dest) const;
  SeqNum own_seqnum() const { return own_seqnum_; }
  std::size_t buffered(NodeId dest) const;

 private:
  void route_packet(Message packet, bool originated, Actions& out);
  void flush(Actions& out);
  void advertise(std::vector<NodeId> changed, Actions& out);
  Message full_dump();

  DsdvConfig config_;
  double next_periodic_;
  SeqNum own_seqnum_{};
  std::map<NodeId, Entry> table_;
  std::map<NodeId, std::deque<Message>> waiting_;
};

}  // namespace manet
