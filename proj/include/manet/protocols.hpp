#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "manet/aodv.hpp"
#include "manet/dsdv.hpp"
#include "manet/dsr.hpp"
#include "manet/dymo.hpp"

namespace manet {

enum class Protocol { Dymo, Aodv, Dsdv, Dsr };

std::string_view to_string(Protocol protocol);
std::optional<Protocol> parse_protocol(std::string_view text);

struct ProtocolConfig {
  DymoConfig dymo;
  AodvConfig aodv;
  DsdvConfig dsdv;
  DsrConfig dsr;

  void validate() const;
};

/// Builds the router for `node`. `rng_seed` feeds the node's private
/// protocol stream (HELLO and advertisement phases).
std::unique_ptr<Router> make_router(Protocol protocol, const ProtocolConfig& config, NodeId node,
                                    double energy, std::uint64_t rng_seed);

}  // namespace manet
