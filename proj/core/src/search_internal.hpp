#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bcregions/region_search.hpp"

namespace bcr::detail {

// Mutable factor tables behind a strategy: {aux, input} for Class I and
// {u, aux, input} for Class II, each a run of equally sized simplex slices.
struct StrategyParams {
  int strategy_class = 1;
  Alphabets alphabets;
  AuxCardinalities cards;
  std::vector<std::vector<double>> tables;
  std::vector<std::size_t> slice_sizes;

  Strategy to_strategy() const;
};

StrategyParams empty_params(int strategy_class, const Alphabets& a, AuxCardinalities cards);

// Bound values of a strategy, or nullopt for a Class II inner candidate that
// fails the Markov audit.
std::optional<RateTriple> score(BoundKind kind, const StateBroadcastChannel& c, const Strategy& s,
                                double markov_tolerance);

FrontierPolyline build_polyline(int strategy_class, BoundKind kind,
                                const std::vector<RatePoint>& hull, const SearchConfig& cfg,
                                const std::function<Strategy(std::uint64_t)>& strategy_of,
                                const std::function<RateTriple(std::uint64_t)>& rates_of);

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace bcr::detail
