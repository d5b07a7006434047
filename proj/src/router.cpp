#include "manet/router.hpp"

namespace manet {

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::BufferFull: return "BufferFull";
    case DropReason::NoRoute: return "NoRoute";
    case DropReason::DropTail: return "DropTail";
    case DropReason::TtlExpired: return "TtlExpired";
    case DropReason::LinkBreak: return "LinkBreak";
  }
  return "?";
}

}  // namespace manet
