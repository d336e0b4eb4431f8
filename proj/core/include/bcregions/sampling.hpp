#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bcregions/prob.hpp"

namespace bcr {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent per-item seeds.
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

// Uniform (flat Dirichlet) point on the probability simplex with n coordinates.
std::vector<double> random_simplex(Rng& rng, std::size_t n);

// Simplex point with a random subset of coordinates forced to zero; at least one
// coordinate stays positive. Exercises the 0 log 0 conventions.
std::vector<double> random_sparse_simplex(Rng& rng, std::size_t n, double zero_probability);

// Vertex of the simplex chosen uniformly.
std::vector<double> random_vertex(Rng& rng, std::size_t n);

// Factor with every conditioning slice drawn by random_simplex.
Factor random_factor(Rng& rng, std::vector<VariableSpec> outputs,
                     std::vector<VariableSpec> conditioning);

// Joint whose full table is a flat-Dirichlet draw, optionally sparsified.
JointPMF random_joint(Rng& rng, std::vector<VariableSpec> variables,
                      double zero_probability = 0.0);

}  // namespace bcr
