#include "bcregions/sampling.hpp"

#include <numeric>

namespace bcr {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(mix_seed(seed) ^ a) ^ b);
}

std::vector<double> random_simplex(Rng& rng, std::size_t n) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) total += (x = expo(rng));
  if (total <= 0.0) return random_vertex(rng, n);
  for (auto& x : p) x /= total;
  return p;
}

std::vector<double> random_sparse_simplex(Rng& rng, std::size_t n, double zero_probability) {
  auto p = random_simplex(rng, n);
  if (zero_probability <= 0.0) return p;
  std::bernoulli_distribution drop(zero_probability);
  std::uniform_int_distribution<std::size_t> keep_pick(0, n - 1);
  const std::size_t keep = keep_pick(rng);
  for (std::size_t i = 0; i < n; ++i)
    if (i != keep && drop(rng)) p[i] = 0.0;
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= total;
  return p;
}

std::vector<double> random_vertex(Rng& rng, std::size_t n) {
  std::vector<double> p(n, 0.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  p[pick(rng)] = 1.0;
  return p;
}

Factor random_factor(Rng& rng, std::vector<VariableSpec> outputs,
                     std::vector<VariableSpec> conditioning) {
  const std::size_t conds = cell_count(conditioning);
  const std::size_t outs = cell_count(outputs);
  std::vector<double> values;
  values.reserve(conds * outs);
  for (std::size_t c = 0; c < conds; ++c) {
    const auto s = random_simplex(rng, outs);
    values.insert(values.end(), s.begin(), s.end());
  }
  return Factor(std::move(outputs), std::move(conditioning), std::move(values));
}

JointPMF random_joint(Rng& rng, std::vector<VariableSpec> variables, double zero_probability) {
  auto mass = random_sparse_simplex(rng, cell_count(variables), zero_probability);
  return JointPMF(std::move(variables), std::move(mass));
}

}  // namespace bcr
