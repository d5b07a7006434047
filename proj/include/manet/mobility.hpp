#pragma once

#include <vector>

#include "manet/rng.hpp"

namespace manet {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

/// Piecewise-linear path. Each leg moves from `from` at t0 to `to` at t1;
/// pauses are legs with from == to. Before the first leg and after the last
/// the node rests at the nearest endpoint.
class Trajectory {
 public:
  struct Leg {
    double t0 = 0.0;
    double t1 = 0.0;
    Point from;
    Point to;
  };

  explicit Trajectory(Point start) : start_(start) {}

  /// Appends a move to `to` over [t0, t1]; t0 must not precede the previous leg's end.
  void move_to(double t0, double t1, Point to);

  Point position_at(double t) const;
  Point start() const { return start_; }
  const std::vector<Leg>& legs() const { return legs_; }

 private:
  Point start_;
  std::vector<Leg> legs_;
};

struct RandomWaypointParams {
  double field_x = 800.0;
  double field_y = 800.0;
  double speed_min = 1.0;
  double speed_max = 20.0;
  double pause_time = 0.0;
};

/// Uniform point in [0, field_x] x [0, field_y].
Point random_point(Rng& rng, double field_x, double field_y);

/// Random waypoint up to `duration`: pause at the current point, pick a
/// uniform waypoint and a uniform speed, move there, repeat. The first leg
/// is a pause, as with setdest.
Trajectory random_waypoint(Rng& rng, Point start, const RandomWaypointParams& params, double duration);

}  // namespace manet
