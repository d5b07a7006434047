#pragma once

#include <vector>

#include "manet/router.hpp"

namespace manet::testing {

template <typename T>
std::vector<T> only(const Actions& actions) {
  std::vector<T> out;
  for (const auto& a : actions) {
    if (const T* t = std::get_if<T>(&a)) out.push_back(*t);
  }
  return out;
}

inline Message data(NodeId orig, NodeId target, std::uint64_t id = 0) {
  Message m;
  m.kind = MessageKind::Data;
  m.orig = orig;
  m.target = target;
  m.ttl = 32;
  m.payload_size = 512;
  m.msg_id = id;
  return m;
}

}  // namespace manet::testing
