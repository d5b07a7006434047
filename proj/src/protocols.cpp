#include "manet/protocols.hpp"

#include "manet/rng.hpp"

namespace manet {

std::string_view to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::Dymo: return "dymo";
    case Protocol::Aodv: return "aodv";
    case Protocol::Dsdv: return "dsdv";
    case Protocol::Dsr: return "dsr";
  }
  return "?";
}

std::optional<Protocol> parse_protocol(std::string_view text) {
  for (auto p : {Protocol::Dymo, Protocol::Aodv, Protocol::Dsdv, Protocol::Dsr}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

void ProtocolConfig::validate() const {
  dymo.validate();
  aodv.validate();
  dsdv.validate();
  dsr.validate();
}

std::unique_ptr<Router> make_router(Protocol protocol, const ProtocolConfig& config, NodeId node,
                                    double energy, std::uint64_t rng_seed) {
  Rng rng(rng_seed, Stream::Protocol, node);
  switch (protocol) {
    case Protocol::Dymo:
      return std::make_unique<DymoRouter>(node, config.dymo, energy);
    case Protocol::Aodv:
      return std::make_unique<AodvRouter>(node, config.aodv, rng.uniform() * config.aodv.hello_interval,
                                          energy);
    case Protocol::Dsdv:
      return std::make_unique<DsdvRouter>(node, config.dsdv, rng.uniform() * config.dsdv.startup_jitter);
    case Protocol::Dsr:
      return std::make_unique<DsrRouter>(node, config.dsr);
  }
  return nullptr;
}

}  // namespace manet
