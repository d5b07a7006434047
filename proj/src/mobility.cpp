#include "manet/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace manet {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

void Trajectory::move_to(double t0, double t1, Point to) {
  const Point from = legs_.empty() ? start_ : legs_.back().to;
  if (!legs_.empty() && t0 < legs_.back().t1) {
    throw std::invalid_argument("trajectory legs must not overlap");
  }
  if (t1 < t0) {
    throw std::invalid_argument("trajectory leg ends before it starts");
  }
  legs_.push_back(Leg{t0, t1, from, to});
}

Point Trajectory::position_at(double t) const {
  if (legs_.empty() || t <= legs_.front().t0) {
    return start_;
  }
  // Last leg starting at or before t.
  auto it = std::upper_bound(legs_.begin(), legs_.end(), t,
                             [](double value, const Leg& leg) { return value < leg.t0; });
  const Leg& leg = *std::prev(it);
  if (t >= leg.t1 || leg.t1 <= leg.t0) {
    return leg.to;
  }
  const double f = (t - leg.t0) / (leg.t1 - leg.t0);
  return Point{leg.from.x + (leg.to.x - leg.from.x) * f, leg.from.y + (leg.to.y - leg.from.y) * f};
}

Point random_point(Rng& rng, double field_x, double field_y) {
  const double x = rng.uniform(0.0, field_x);
  const double y = rng.uniform(0.0, field_y);
  return Point{x, y};
}

Trajectory random_waypoint(Rng& rng, Point start, const RandomWaypointParams& params, double duration) {
  Trajectory path(start);
  double t = 0.0;
  Point here = start;
  while (t < duration) {
    const double pause_end = t + params.pause_time;
    if (params.pause_time > 0.0) {
      path.move_to(t, pause_end, here);
    }
    t = pause_end;
    if (t >= duration) {
      break;
    }
    const Point next = random_point(rng, params.field_x, params.field_y);
    const double speed = rng.uniform(params.speed_min, params.speed_max);
    const double travel = distance(here, next) / speed;
    path.move_to(t, t + travel, next);
    t += travel;
    here = next;
  }
  return path;
}

}  // namespace manet
