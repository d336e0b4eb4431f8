#pragma once

#include <vector>

#include "bcregions/channel.hpp"
#include "bcregions/sampling.hpp"

namespace fixture {

inline bcr::StateBroadcastChannel random_channel(bcr::Rng& rng, bcr::Alphabets a = {2, 2, 2, 2}) {
  std::vector<double> state = bcr::random_simplex(rng, a.w), kernel;
  for (std::size_t i = 0; i < a.w * a.x; ++i) {
    const auto row = bcr::random_simplex(rng, a.y1 * a.y2);
    kernel.insert(kernel.end(), row.begin(), row.end());
  }
  return bcr::checked_channel(bcr::make_channel(a, state, kernel));
}

// No state, Y1 through a binary symmetric kernel, Y2 constant.
inline bcr::StateBroadcastChannel bsc_channel(double flip) {
  return bcr::checked_channel(
      bcr::make_channel({1, 2, 2, 1}, {1.0}, {1 - flip, flip, flip, 1 - flip}));
}

// Memory cell stuck at 0 or 1 w.p. p/2 each, transparent otherwise; Y2 constant.
inline bcr::StateBroadcastChannel stuck_at_channel(double p = 0.2) {
  const std::vector<double> state = {p / 2, p / 2, 1 - p};
  std::vector<double> kernel;
  for (std::size_t w = 0; w < 3; ++w)
    for (std::size_t x = 0; x < 2; ++x) {
      const std::size_t y = w == 0 ? 0 : w == 1 ? 1 : x;
      kernel.push_back(y == 0 ? 1.0 : 0.0);
      kernel.push_back(y == 1 ? 1.0 : 0.0);
    }
  return bcr::checked_channel(bcr::make_channel({3, 2, 2, 1}, state, kernel));
}

// Random strategy with every factor drawn from the flat Dirichlet.
inline bcr::StrategyClass1 random_class1(bcr::Rng& rng, const bcr::StateBroadcastChannel& c,
                                         bcr::AuxCardinalities k, double zero_p = 0.0) {
  const bcr::Alphabets a = c.alphabets();
  std::vector<double> aux, input;
  for (std::size_t w = 0; w < a.w; ++w) {
    const auto s = bcr::random_sparse_simplex(rng, k.v1 * k.v2, zero_p);
    aux.insert(aux.end(), s.begin(), s.end());
  }
  for (std::size_t i = 0; i < a.w * k.v1 * k.v2; ++i) {
    const auto s = bcr::random_sparse_simplex(rng, a.x, zero_p);
    input.insert(input.end(), s.begin(), s.end());
  }
  return bcr::make_strategy_class1(a, k, aux, input);
}

// Unconstrained Class II strategy: aux may depend on u arbitrarily, so the
// Markov chains generally fail.
inline bcr::StrategyClass2 random_class2(bcr::Rng& rng, const bcr::StateBroadcastChannel& c,
                                         bcr::AuxCardinalities k) {
  const bcr::Alphabets a = c.alphabets();
  std::vector<double> aux, input;
  for (std::size_t i = 0; i < a.w * k.u; ++i) {
    const auto s = bcr::random_simplex(rng, k.v1 * k.v2);
    aux.insert(aux.end(), s.begin(), s.end());
  }
  for (std::size_t i = 0; i < a.w * k.v1 * k.v2; ++i) {
    const auto s = bcr::random_simplex(rng, a.x);
    input.insert(input.end(), s.begin(), s.end());
  }
  return bcr::make_strategy_class2(a, k, bcr::random_simplex(rng, k.u), aux, input);
}

}  // namespace fixture
