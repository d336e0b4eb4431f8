#pragma once

// Frontier tracing for the per-strategy rate polytopes: weighted-sum hill climbing
// over strategy space, a shared candidate pool, time-sharing convexification, and
// an exhaustive lattice oracle for tiny instances.

#include <cstdint>
#include <optional>
#include <vector>

#include "bcregions/bounds.hpp"
#include "bcregions/channel.hpp"
#include "bcregions/hull.hpp"

namespace bcr {

enum class BoundKind { inner, outer };

const char* to_string(BoundKind kind);

struct SearchConfig {
  // A zero V cardinality resolves to |X||W| + 1. Class I ignores u.
  AuxCardinalities cards{2, 0, 0};
  std::size_t directions = 33;
  std::size_t restarts = 16;
  std::size_t iterations = 400;
  double initial_scale = 0.5;
  double final_scale = 1e-3;
  std::uint64_t seed = 1;
  double markov_tolerance = 1e-9;
  bool time_sharing = true;
  // Worker threads for restarts; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  // Lattice oracle only. Zero input_resolution means "same as grid_resolution".
  std::size_t grid_resolution = 4;
  std::size_t input_resolution = 0;
  std::uint64_t grid_cap = 10'000'000;
};

// Throws ArgumentError on fewer than two directions, zero restarts, or zero
// cardinalities.
void validate(const SearchConfig& cfg);

AuxCardinalities resolved_cardinalities(int strategy_class, const StateBroadcastChannel& c,
                                        const SearchConfig& cfg);

struct Direction {
  double mu1 = 1.0;
  double mu2 = 0.0;

  friend bool operator==(const Direction&, const Direction&) = default;
};

// `count` directions evenly spaced in angle from (1,0) to (0,1), endpoints exact.
std::vector<Direction> sweep_directions(std::size_t count);

// Random strategy with normalized factors. Class II samples satisfy both Markov
// chains by construction: U is recoverable from V1 and from V2 whenever
// |V_t| >= |U|; otherwise the auxiliaries ignore U.
Strategy sample_strategy(int strategy_class, const StateBroadcastChannel& c,
                         const SearchConfig& cfg, std::uint64_t seed);

// Raw bound values of one strategy. Class II inner throws ConstraintError on a
// Markov violation.
RateTriple evaluate_strategy(BoundKind kind, const StateBroadcastChannel& c, const Strategy& s,
                             double markov_tolerance = 1e-9);

// Corners of {R >= 0, R1 <= r1, R2 <= r2, R1 + R2 <= sum} after clamping the raw
// values at zero.
std::vector<RatePoint> polytope_vertices(const RateTriple& t);

// max of mu1 R1 + mu2 R2 over the clamped polytope.
double weighted_value(const RateTriple& t, Direction d);

// Append-only store of strategies visited by searches on one channel and class,
// each scored under both bound kinds so either frontier can reuse it.
class CandidatePool {
 public:
  struct Entry {
    Strategy strategy;
    std::optional<RateTriple> inner;  // empty when the Markov audit fails
    std::optional<RateTriple> outer;
  };

  CandidatePool(int strategy_class, double markov_tolerance = 1e-9)
      : class_(strategy_class), markov_tolerance_(markov_tolerance) {}

  int strategy_class() const { return class_; }
  std::size_t size() const { return entries_.size(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  const std::optional<RateTriple>& rates(std::size_t i, BoundKind kind) const;

  std::size_t append(const StateBroadcastChannel& c, Strategy s);

 private:
  int class_;
  double markov_tolerance_;
  std::vector<Entry> entries_;
};

struct WeightedResult {
  double value = 0.0;
  Strategy strategy;
  RateTriple rates;
};

// Multi-start hill climbing on mu1 R1 + mu2 R2. Deterministic in (cfg.seed,
// direction). When `pool` is given, the restart winners are appended to it and
// the returned optimum also covers every pool entry already present.
WeightedResult maximize_weighted(int strategy_class, BoundKind kind,
                                 const StateBroadcastChannel& c, Direction direction,
                                 const SearchConfig& cfg, CandidatePool* pool = nullptr);

struct FrontierVertex {
  double r1 = 0.0;
  double r2 = 0.0;
  Direction direction;
  double value = 0.0;
  std::size_t strategy = 0;  // index into FrontierPolyline::strategies
};

struct DirectionValue {
  Direction direction;
  double value = 0.0;
};

struct FrontierPolyline {
  int strategy_class = 1;
  BoundKind kind = BoundKind::outer;
  std::vector<FrontierVertex> vertices;
  std::vector<DirectionValue> directions;
  std::vector<Strategy> strategies;
  std::vector<RateTriple> strategy_rates;  // raw values, parallel to strategies
  bool hulled = true;

  double max_r1() const { return vertices.empty() ? 0.0 : vertices.back().r1; }
  double max_r2() const { return vertices.empty() ? 0.0 : vertices.front().r2; }
  std::vector<RatePoint> points() const;
};

// Runs the direction sweep and appends every restart winner to `pool`.
void search_into_pool(int strategy_class, BoundKind kind, const StateBroadcastChannel& c,
                      const SearchConfig& cfg, CandidatePool& pool);

// Frontier of the union of the pool's per-strategy polytopes.
FrontierPolyline assemble_frontier(BoundKind kind, const CandidatePool& pool,
                                   const SearchConfig& cfg);

// search_into_pool followed by assemble_frontier. Uses a private pool unless
// `shared` is given.
FrontierPolyline frontier(int strategy_class, BoundKind kind, const StateBroadcastChannel& c,
                          const SearchConfig& cfg, CandidatePool* shared = nullptr);

struct DominanceCheck {
  double r1 = 0.0;
  double r2 = 0.0;
  double margin = 0.0;  // outer frontier height minus r2; negative if uncovered
  bool dominated = true;
};

struct DominanceReport {
  double tolerance = 1e-9;
  std::vector<DominanceCheck> checks;
  double min_margin = 0.0;
  bool dominated = true;
};

// Checks every vertex of `inner` against the region under `outer`.
DominanceReport dominance(const FrontierPolyline& inner, const FrontierPolyline& outer,
                          double tolerance = 1e-9);

struct BoundComparison {
  FrontierPolyline inner;
  FrontierPolyline outer;
  std::size_t pool_size = 0;
  DominanceReport report;
};

// Inner and outer searches on one shared pool, both frontiers assembled from the
// final pool, then the dominance check.
BoundComparison compare_bounds(int strategy_class, const StateBroadcastChannel& c,
                               const SearchConfig& cfg, double tolerance = 1e-9);

// Number of lattice strategies grid_oracle would evaluate (saturates at UINT64_MAX).
std::uint64_t grid_size(int strategy_class, const StateBroadcastChannel& c,
                        const SearchConfig& cfg);

// Exhaustive evaluation over factor parameters on the simplex lattice with step
// 1/grid_resolution (input factors: 1/input_resolution). Throws SizeError when
// grid_size exceeds cfg.grid_cap.
FrontierPolyline grid_oracle(int strategy_class, BoundKind kind, const StateBroadcastChannel& c,
                             const SearchConfig& cfg);

}  // namespace bcr
