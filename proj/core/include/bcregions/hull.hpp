#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace bcr {

struct RatePoint {
  double r1 = 0.0;
  double r2 = 0.0;
  std::uint64_t source = 0;  // opaque tag of the producing strategy
};

// Pareto boundary of a set of rate points in the nonnegative orthant, sorted by r1
// ascending with r2 strictly decreasing. With time_sharing the result is the upper
// concave hull (vertices of the convexified region); otherwise the staircase of
// non-dominated points. Every output vertex is one of the input points.
std::vector<RatePoint> pareto_hull(std::vector<RatePoint> points, bool time_sharing);

// Largest r2 on the region bounded by `frontier` at abscissa r1, or -infinity if
// r1 lies beyond the frontier's reach. `frontier` must come from pareto_hull.
double frontier_height(const std::vector<RatePoint>& frontier, double r1, bool time_sharing);

}  // namespace bcr
