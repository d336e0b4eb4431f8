#include "bcregions/hull.hpp"

#include <algorithm>

namespace bcr {

namespace {

// z-component of (b - a) x (c - a); >= 0 means c does not turn right.
double cross(const RatePoint& a, const RatePoint& b, const RatePoint& c) {
  return (b.r1 - a.r1) * (c.r2 - a.r2) - (b.r2 - a.r2) * (c.r1 - a.r1);
}

}  // namespace

std::vector<RatePoint> pareto_hull(std::vector<RatePoint> points, bool time_sharing) {
  if (points.empty()) return {};

  // Deterministic order; ties broken by source so equal inputs give equal outputs.
  std::sort(points.begin(), points.end(), [](const RatePoint& a, const RatePoint& b) {
    if (a.r1 != b.r1) return a.r1 < b.r1;
    if (a.r2 != b.r2) return a.r2 > b.r2;
    return a.source < b.source;
  });
  // Keep the highest point for each abscissa.
  std::vector<RatePoint> column;
  for (const auto& p : points)
    if (column.empty() || column.back().r1 != p.r1) column.push_back(p);

  std::vector<RatePoint> out;
  if (!time_sharing) {
    for (auto it = column.rbegin(); it != column.rend(); ++it)
      if (out.empty() || it->r2 > out.back().r2) out.push_back(*it);
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::vector<RatePoint> upper;
  for (const auto& p : column) {
    while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), p) >= 0.0)
      upper.pop_back();
    upper.push_back(p);
  }
  // Drop the rising part left of the highest vertex.
  std::size_t peak = 0;
  for (std::size_t i = 1; i < upper.size(); ++i)
    if (upper[i].r2 >= upper[peak].r2) peak = i;
  out.assign(upper.begin() + static_cast<std::ptrdiff_t>(peak), upper.end());
  return out;
}

double frontier_height(const std::vector<RatePoint>& frontier, double r1, bool time_sharing) {
  if (frontier.empty() || r1 > frontier.back().r1) return -std::numeric_limits<double>::infinity();
  if (r1 <= frontier.front().r1) return frontier.front().r2;
  if (!time_sharing) {
    for (const auto& v : frontier)
      if (v.r1 >= r1) return v.r2;
  }
  for (std::size_t i = 1; i < frontier.size(); ++i) {
    const auto& a = frontier[i - 1];
    const auto& b = frontier[i];
    if (r1 <= b.r1) {
      const double t = (r1 - a.r1) / (b.r1 - a.r1);
      return a.r2 + t * (b.r2 - a.r2);
    }
  }
  return frontier.back().r2;
}

}  // namespace bcr
