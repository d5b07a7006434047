#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace manet {

/// Min-heap keyed on (time, insertion sequence). Equal times pop in
/// insertion order, so a run is reproducible event for event.
template <typename Payload>
class EventQueue {
 public:
  struct Event {
    double time = 0.0;
    std::uint64_t seq = 0;
    Payload payload;
  };

  std::uint64_t push(double time, Payload payload) {
    const std::uint64_t seq = next_seq_++;
    heap_.push_back(Event{time, seq, std::move(payload)});
    std::push_heap(heap_.begin(), heap_.end(), later);
    return seq;
  }

  const Event& top() const { return heap_.front(); }

  Event pop() {
    std::pop_heap(heap_.begin(), heap_.end(), later);
    Event e = std::move(heap_.back());
    heap_.pop_back();
    return e;
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  static bool later(const Event& a, const Event& b) {
    return a.time != b.time ? a.time > b.time : a.seq > b.seq;
  }

  std::vector<Event> heap_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace manet
