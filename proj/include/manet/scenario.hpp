#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "manet/mobility.hpp"
#include "manet/protocols.hpp"

namespace manet {

/// Constant-bit-rate source: one packet every `interval` seconds at
/// start + k * interval while that time is before `stop`.
struct Flow {
  NodeId src = 0;
  NodeId dst = 0;
  std::uint16_t packet_size = 512;
  double interval = 0.1;
  double start = 0.0;
  /// Defaults to the scenario duration.
  std::optional<double> stop;

  friend bool operator==(const Flow&, const Flow&) = default;
};

enum class MobilityModel { RandomWaypoint, Static };

/// Straight-line move of `node` to `to` over [t0, t1]. Static mobility only.
struct ScriptedMove {
  NodeId node = 0;
  double t0 = 0.0;
  double t1 = 0.0;
  Point to;

  friend bool operator==(const ScriptedMove&, const ScriptedMove&) = default;
};

/// Full run configuration. Defaults are the 40-node, 800 x 800 m reference
/// environment with 512-byte CBR at 10 packets/s over a 2 Mbps radio.
struct Scenario {
  std::uint32_t node_count = 40;
  double field_x = 800.0;
  double field_y = 800.0;
  double radio_range = 250.0;
  double bitrate = 2e6;
  std::uint32_t queue_capacity = 15;

  MobilityModel mobility = MobilityModel::RandomWaypoint;
  double speed_min = 1.0;
  double speed_max = 20.0;
  double pause_time = 0.0;
  /// Explicit initial positions (all nodes) or empty for uniform placement.
  std::vector<Point> positions;
  std::vector<ScriptedMove> moves;

  /// Explicit flows; when empty, `random_flows` flows are drawn from the
  /// traffic stream with the packet size and interval below.
  std::vector<Flow> flows;
  std::uint32_t random_flows = 10;
  std::uint16_t packet_size = 512;
  double interval = 0.1;
  /// Random flows start uniformly in [0, flow_start_max).
  double flow_start_max = 10.0;
  std::uint8_t data_ttl = 32;

  double duration = 200.0;
  Protocol protocol = Protocol::Dymo;
  std::uint64_t seed = 1;
  ProtocolConfig protocol_config;
  /// Static per-node energy (abstract units); nodes not listed have 0.
  std::map<NodeId, double> energy;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Explicit flows, or the seeded random flow set.
std::vector<Flow> resolve_flows(const Scenario& scenario);

/// Initial placement and full trajectory of every node.
std::vector<Trajectory> build_trajectories(const Scenario& scenario);

}  // namespace manet
