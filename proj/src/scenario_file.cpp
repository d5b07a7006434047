#include "manet/scenario_file.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace manet {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad(std::string_view key, std::string_view value, const char* want) {
  throw ConfigError(std::string(key) + ": '" + std::string(value) + "' is not " + want);
}

double real(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) bad(key, v, "a number");
  return out;
}

template <typename T>
T whole(std::string_view key, std::string_view v) {
  unsigned long long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty() || out > std::numeric_limits<T>::max()) {
    bad(key, v, "a non-negative integer in range");
  }
  return static_cast<T>(out);
}

bool boolean(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad(key, v, "a boolean");
}

void set_dymo(DymoConfig& c, std::string_view prefix, std::string_view name, std::string_view key,
              std::string_view v) {
  if (name == "route_timeout") c.route_timeout = real(key, v);
  else if (name == "rreq_wait") c.rreq_wait = real(key, v);
  else if (name == "rreq_max_retries") c.rreq_max_retries = whole<int>(key, v);
  else if (name == "rreq_ttl") c.rreq_ttl = whole<std::uint8_t>(key, v);
  else if (name == "buffer_capacity") c.buffer_capacity = whole<std::size_t>(key, v);
  else if (name == "energy_threshold") c.energy_threshold = real(key, v);
  else if (name == "rreq_seen_lifetime") c.rreq_seen_lifetime = real(key, v);
  else if (name == "intermediate_rrep") c.intermediate_rrep = boolean(key, v);
  else throw ConfigError("unknown key '" + std::string(prefix) + std::string(name) + "'");
}

}  // namespace

Flow parse_flow(std::string_view text) {
  const auto f = split(text, ':');
  if (f.size() < 4 || f.size() > 6) {
    throw ConfigError("flow: '" + std::string(text) + "' is not src:dst:bytes:interval[:start[:stop]]");
  }
  Flow flow;
  flow.src = whole<NodeId>("flow", f[0]);
  flow.dst = whole<NodeId>("flow", f[1]);
  flow.packet_size = whole<std::uint16_t>("flow", f[2]);
  flow.interval = real("flow", f[3]);
  if (f.size() > 4) flow.start = real("flow", f[4]);
  if (f.size() > 5) flow.stop = real("flow", f[5]);
  return flow;
}

Point parse_field(std::string_view text) {
  const auto x = text.find('x');
  if (x == std::string_view::npos) bad("field", text, "WxH");
  return Point{real("field", trim(text.substr(0, x))), real("field", trim(text.substr(x + 1)))};
}

void apply_setting(Scenario& s, std::string_view key, std::string_view v) {
  if (key == "nodes") {
    s.node_count = whole<std::uint32_t>(key, v);
  } else if (key == "field") {
    const Point p = parse_field(v);
    s.field_x = p.x;
    s.field_y = p.y;
  } else if (key == "range") {
    s.radio_range = real(key, v);
  } else if (key == "bitrate") {
    s.bitrate = real(key, v);
  } else if (key == "queue") {
    s.queue_capacity = whole<std::uint32_t>(key, v);
  } else if (key == "mobility") {
    if (v == "random_waypoint") s.mobility = MobilityModel::RandomWaypoint;
    else if (v == "static") s.mobility = MobilityModel::Static;
    else bad(key, v, "random_waypoint or static");
  } else if (key == "speed_min") {
    s.speed_min = real(key, v);
  } else if (key == "speed_max") {
    s.speed_max = real(key, v);
  } else if (key == "pause_time") {
    s.pause_time = real(key, v);
  } else if (key == "duration") {
    s.duration = real(key, v);
  } else if (key == "protocol") {
    const auto p = parse_protocol(v);
    if (!p) bad(key, v, "one of dymo, aodv, dsdv, dsr");
    s.protocol = *p;
  } else if (key == "seed") {
    s.seed = whole<std::uint64_t>(key, v);
  } else if (key == "random_flows") {
    s.random_flows = whole<std::uint32_t>(key, v);
  } else if (key == "packet_size") {
    s.packet_size = whole<std::uint16_t>(key, v);
  } else if (key == "interval") {
    s.interval = real(key, v);
  } else if (key == "flow_start_max") {
    s.flow_start_max = real(key, v);
  } else if (key == "data_ttl") {
    s.data_ttl = whole<std::uint8_t>(key, v);
  } else if (key == "flow") {
    s.flows.push_back(parse_flow(v));
  } else if (key == "move") {
    const auto f = split(v, ':');
    if (f.size() != 5) bad(key, v, "node:t0:t1:x:y");
    s.moves.push_back(ScriptedMove{whole<NodeId>(key, f[0]), real(key, f[1]), real(key, f[2]),
                                   Point{real(key, f[3]), real(key, f[4])}});
  } else if (key.starts_with("position.")) {
    const auto id = whole<NodeId>(key, key.substr(9));
    const auto f = split(v, ',');
    if (f.size() != 2) bad(key, v, "x,y");
    if (s.positions.size() <= id) s.positions.resize(id + 1, Point{-1.0, -1.0});
    s.positions[id] = Point{real(key, f[0]), real(key, f[1])};
  } else if (key.starts_with("energy.")) {
    s.energy[whole<NodeId>(key, key.substr(7))] = real(key, v);
  } else if (key.starts_with("dymo.")) {
    set_dymo(s.protocol_config.dymo, "dymo.", key.substr(5), key, v);
  } else if (key.starts_with("aodv.")) {
    const auto name = key.substr(5);
    if (name == "hello_interval") s.protocol_config.aodv.hello_interval = real(key, v);
    else if (name == "allowed_hello_loss") s.protocol_config.aodv.allowed_hello_loss = whole<int>(key, v);
    else set_dymo(s.protocol_config.aodv.base, "aodv.", name, key, v);
  } else if (key.starts_with("dsdv.")) {
    const auto name = key.substr(5);
    auto& c = s.protocol_config.dsdv;
    if (name == "periodic_update") c.periodic_update = real(key, v);
    else if (name == "startup_jitter") c.startup_jitter = real(key, v);
    else if (name == "buffer_capacity") c.buffer_capacity = whole<std::size_t>(key, v);
    else throw ConfigError("unknown key '" + std::string(key) + "'");
  } else if (key.starts_with("dsr.")) {
    const auto name = key.substr(4);
    auto& c = s.protocol_config.dsr;
    if (name == "rreq_wait") c.rreq_wait = real(key, v);
    else if (name == "rreq_max_retries") c.rreq_max_retries = whole<int>(key, v);
    else if (name == "rreq_ttl") c.rreq_ttl = whole<std::uint8_t>(key, v);
    else if (name == "buffer_capacity") c.buffer_capacity = whole<std::size_t>(key, v);
    else if (name == "rreq_seen_lifetime") c.rreq_seen_lifetime = real(key, v);
    else throw ConfigError("unknown key '" + std::string(key) + "'");
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

void apply_scenario_text(std::istream& in, Scenario& scenario) {
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(n) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    try {
      apply_setting(scenario, key, trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(n) + ": " + e.what());
    }
  }
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read scenario file '" + path + "'");
  }
  Scenario scenario;
  apply_scenario_text(in, scenario);
  scenario.validate();
  return scenario;
}

}  // namespace manet
