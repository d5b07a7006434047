#include "manet/scenario.hpp"

#include <set>
#include <string>
#include <utility>

namespace manet {
namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ConfigError(field + ": " + why);
}

}  // namespace

void Scenario::validate() const {
  if (node_count == 0) fail("nodes", "must be >= 1");
  if (!(field_x > 0.0) || !(field_y > 0.0)) fail("field", "dimensions must be > 0");
  if (!(radio_range > 0.0)) fail("range", "must be > 0");
  if (!(bitrate > 0.0)) fail("bitrate", "must be > 0");
  if (queue_capacity == 0) fail("queue", "must be >= 1");
  if (!(speed_min > 0.0)) fail("speed_min", "must be > 0");
  if (!(speed_max >= speed_min)) fail("speed_max", "must be >= speed_min");
  if (!(pause_time >= 0.0)) fail("pause_time", "must be >= 0");
  if (!(duration > 0.0)) fail("duration", "must be > 0");
  if (!(interval > 0.0)) fail("interval", "must be > 0");
  if (!(flow_start_max >= 0.0)) fail("flow_start_max", "must be >= 0");
  if (data_ttl == 0) fail("data_ttl", "must be >= 1");
  if (!positions.empty() && positions.size() != node_count) {
    fail("position", "explicit positions must cover all " + std::to_string(node_count) + " nodes");
  }
  for (const auto& p : positions) {
    if (p.x < 0.0 || p.y < 0.0 || p.x > field_x || p.y > field_y) fail("position", "outside the field");
  }
  if (!moves.empty() && mobility != MobilityModel::Static) {
    fail("move", "scripted moves require static mobility");
  }
  for (const auto& m : moves) {
    if (m.node >= node_count) fail("move", "node " + std::to_string(m.node) + " out of range");
    if (!(m.t1 >= m.t0) || m.t0 < 0.0) fail("move", "bad time window");
    if (m.to.x < 0.0 || m.to.y < 0.0 || m.to.x > field_x || m.to.y > field_y) fail("move", "outside the field");
  }
  for (const auto& f : flows) {
    if (f.src >= node_count || f.dst >= node_count) fail("flow", "references a node outside the scenario");
    if (!(f.interval > 0.0)) fail("flow", "interval must be > 0");
    if (f.start < 0.0) fail("flow", "start must be >= 0");
  }
  if (flows.empty() && random_flows > 0) {
    const std::uint64_t pairs = std::uint64_t{node_count} * (node_count - 1);
    if (random_flows > pairs) fail("flows", "more random flows than distinct node pairs");
  }
  for (const auto& [node, e] : energy) {
    if (node >= node_count) fail("energy", "node " + std::to_string(node) + " out of range");
    if (!(e >= 0.0)) fail("energy", "must be >= 0");
  }
  protocol_config.validate();
}

std::vector<Flow> resolve_flows(const Scenario& scenario) {
  if (!scenario.flows.empty()) {
    return scenario.flows;
  }
  Rng rng(scenario.seed, Stream::Traffic);
  std::set<std::pair<NodeId, NodeId>> used;
  std::vector<Flow> flows;
  while (flows.size() < scenario.random_flows) {
    const auto src = static_cast<NodeId>(rng.below(scenario.node_count));
    const auto dst = static_cast<NodeId>(rng.below(scenario.node_count));
    if (src == dst || !used.emplace(src, dst).second) {
      continue;
    }
    Flow f;
    f.src = src;
    f.dst = dst;
    f.packet_size = scenario.packet_size;
    f.interval = scenario.interval;
    f.start = rng.uniform() * scenario.flow_start_max;
    flows.push_back(f);
  }
  return flows;
}

std::vector<Trajectory> build_trajectories(const Scenario& scenario) {
  Rng rng(scenario.seed, Stream::Mobility);
  std::vector<Point> starts = scenario.positions;
  if (starts.empty()) {
    for (std::uint32_t i = 0; i < scenario.node_count; ++i) {
      starts.push_back(random_point(rng, scenario.field_x, scenario.field_y));
    }
  }

  std::vector<Trajectory> paths;
  paths.reserve(scenario.node_count);
  if (scenario.mobility == MobilityModel::Static) {
    for (const auto& p : starts) {
      paths.emplace_back(p);
    }
    for (const auto& m : scenario.moves) {
      paths[m.node].move_to(m.t0, m.t1, m.to);
    }
    return paths;
  }

  const RandomWaypointParams params{scenario.field_x, scenario.field_y, scenario.speed_min,
                                    scenario.speed_max, scenario.pause_time};
  for (const auto& p : starts) {
    paths.push_back(random_waypoint(rng, p, params, scenario.duration));
  }
  return paths;
}

}  // namespace manet
