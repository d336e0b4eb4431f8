#include <algorithm>
#include <limits>
#include <map>

#include "bcregions/errors.hpp"
#include "bcregions/region_search.hpp"
#include "search_internal.hpp"

namespace bcr {

namespace {

// All points of the simplex with `n` coordinates that are multiples of 1/k.
std::vector<std::vector<double>> simplex_lattice(std::size_t n, std::size_t k) {
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> parts(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (i + 1 == n) {
      parts[i] = left;
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) p[j] = double(parts[j]) / double(k);
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t m = 0; m <= left; ++m) {
      parts[i] = m;
      self(self, i + 1, left - m);
    }
  };
  rec(rec, 0, k);
  return out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// C(k + n - 1, n - 1), saturating.
std::uint64_t lattice_count(std::size_t n, std::size_t k) {
  std::uint64_t c = 1;
  for (std::size_t i = 1; i < n; ++i) {
    const std::uint64_t next = saturating_mul(c, k + i);
    if (next == std::numeric_limits<std::uint64_t>::max()) return next;
    c = next / i;
  }
  return c;
}

struct Layout {
  detail::StrategyParams params;
  std::vector<std::size_t> resolution;  // per table
};

Layout layout(int cls, const StateBroadcastChannel& c, const SearchConfig& cfg) {
  if (cls != 1 && cls != 2) throw ArgumentError("strategy class must be 1 or 2");
  if (cfg.grid_resolution < 1) throw ArgumentError("grid resolution must be at least 1");
  const std::size_t input_res = cfg.input_resolution == 0 ? cfg.grid_resolution : cfg.input_resolution;
  Layout l{detail::empty_params(cls, c.alphabets(), resolved_cardinalities(cls, c, cfg)), {}};
  l.resolution.assign(l.params.tables.size(), cfg.grid_resolution);
  l.resolution.back() = input_res;
  return l;
}

}  // namespace

std::uint64_t grid_size(int cls, const StateBroadcastChannel& c, const SearchConfig& cfg) {
  const Layout l = layout(cls, c, cfg);
  std::uint64_t total = 1;
  for (std::size_t t = 0; t < l.params.tables.size(); ++t) {
    const std::size_t size = l.params.slice_sizes[t];
    const std::size_t slices = l.params.tables[t].size() / size;
    const std::uint64_t per = lattice_count(size, l.resolution[t]);
    for (std::size_t s = 0; s < slices; ++s) total = saturating_mul(total, per);
  }
  return total;
}

FrontierPolyline grid_oracle(int cls, BoundKind kind, const StateBroadcastChannel& c,
                             const SearchConfig& cfg) {
  const std::uint64_t total = grid_size(cls, c, cfg);
  if (total > cfg.grid_cap)
    throw SizeError("lattice of " +
                    (total == std::numeric_limits<std::uint64_t>::max() ? std::string("> 2^64")
                                                                        : std::to_string(total)) +
                    " strategies exceeds the cap of " + std::to_string(cfg.grid_cap));

  Layout l = layout(cls, c, cfg);
  auto& params = l.params;

  // One digit per slice; digit d selects lattice point d for that slice.
  struct Slot {
    std::size_t table;
    std::size_t offset;
    const std::vector<std::vector<double>>* lattice;
  };
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<double>>> lattices;
  std::vector<Slot> slots;
  for (std::size_t t = 0; t < params.tables.size(); ++t) {
    const std::size_t size = params.slice_sizes[t];
    auto& lat = lattices[{size, l.resolution[t]}];
    if (lat.empty()) lat = simplex_lattice(size, l.resolution[t]);
    for (std::size_t s = 0; s < params.tables[t].size() / size; ++s)
      slots.push_back({t, s * size, &lat});
  }

  auto load = [&](std::uint64_t index) {
    // Mixed radix, last slot fastest.
    for (std::size_t k = slots.size(); k-- > 0;) {
      const auto& lat = *slots[k].lattice;
      const auto& p = lat[index % lat.size()];
      index /= lat.size();
      std::copy(p.begin(), p.end(),
                params.tables[slots[k].table].begin() + static_cast<std::ptrdiff_t>(slots[k].offset));
    }
  };

  std::vector<RatePoint> points;
  constexpr std::size_t kCompressAt = 1 << 18;
  for (std::uint64_t i = 0; i < total; ++i) {
    load(i);
    const auto rates = detail::score(kind, c, params.to_strategy(), cfg.markov_tolerance);
    if (!rates) continue;
    for (auto v : polytope_vertices(*rates)) {
      v.source = i;
      points.push_back(v);
    }
    if (points.size() >= kCompressAt) points = pareto_hull(std::move(points), cfg.time_sharing);
  }
  if (points.empty()) points.push_back({0.0, 0.0, 0});
  const auto hull = pareto_hull(std::move(points), cfg.time_sharing);

  return detail::build_polyline(
      cls, kind, hull, cfg,
      [&](std::uint64_t src) {
        load(src);
        return params.to_strategy();
      },
      [&](std::uint64_t src) {
        load(src);
        return *detail::score(kind, c, params.to_strategy(), cfg.markov_tolerance);
      });
}

}  // namespace bcr
