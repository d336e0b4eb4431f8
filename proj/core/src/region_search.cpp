#include "bcregions/region_search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <numeric>
#include <thread>

#include "bcregions/entropy_cache.hpp"
#include "bcregions/errors.hpp"
#include "bcregions/sampling.hpp"
#include "search_internal.hpp"

namespace bcr {

namespace detail {

Strategy StrategyParams::to_strategy() const {
  if (strategy_class == 1) return make_strategy_class1(alphabets, cards, tables[0], tables[1]);
  return make_strategy_class2(alphabets, cards, tables[0], tables[1], tables[2]);
}

StrategyParams empty_params(int strategy_class, const Alphabets& a, AuxCardinalities cards) {
  StrategyParams p;
  p.strategy_class = strategy_class;
  p.alphabets = a;
  p.cards = cards;
  const std::size_t vv = cards.v1 * cards.v2;
  if (strategy_class == 1) {
    p.cards.u = 1;
    p.tables = {std::vector<double>(a.w * vv), std::vector<double>(a.w * vv * a.x)};
    p.slice_sizes = {vv, a.x};
  } else {
    p.tables = {std::vector<double>(cards.u), std::vector<double>(a.w * cards.u * vv),
                std::vector<double>(a.w * vv * a.x)};
    p.slice_sizes = {cards.u, vv, a.x};
  }
  return p;
}

std::optional<RateTriple> score(BoundKind kind, const StateBroadcastChannel& c, const Strategy& s,
                                double markov_tolerance) {
  const JointPMF joint = induced_joint(c, s);
  EntropyCache cache(joint);
  if (strategy_class(s) == 1)
    return kind == BoundKind::outer ? class1_outer(cache) : class1_inner(cache);
  if (kind == BoundKind::outer) return class2_outer(class2_terms(cache));
  if (!markov_check(cache, markov_tolerance).pass) return std::nullopt;
  return class2_inner_unchecked(cache);
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

FrontierPolyline build_polyline(int strategy_class, BoundKind kind,
                                const std::vector<RatePoint>& hull, const SearchConfig& cfg,
                                const std::function<Strategy(std::uint64_t)>& strategy_of,
                                const std::function<RateTriple(std::uint64_t)>& rates_of) {
  FrontierPolyline f;
  f.strategy_class = strategy_class;
  f.kind = kind;
  f.hulled = cfg.time_sharing;

  const auto dirs = sweep_directions(std::max<std::size_t>(2, cfg.directions));
  for (const auto& d : dirs) {
    double best = 0.0;
    for (const auto& v : hull) best = std::max(best, d.mu1 * v.r1 + d.mu2 * v.r2);
    f.directions.push_back({d, best});
  }

  std::vector<std::uint64_t> sources;
  for (const auto& v : hull) {
    std::size_t pick = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      const double g = f.directions[d].value - (dirs[d].mu1 * v.r1 + dirs[d].mu2 * v.r2);
      if (g < gap) {
        gap = g;
        pick = d;
      }
    }
    auto it = std::find(sources.begin(), sources.end(), v.source);
    const std::size_t idx = static_cast<std::size_t>(it - sources.begin());
    if (it == sources.end()) sources.push_back(v.source);
    f.vertices.push_back(
        {v.r1, v.r2, dirs[pick], dirs[pick].mu1 * v.r1 + dirs[pick].mu2 * v.r2, idx});
  }
  for (auto src : sources) {
    f.strategies.push_back(strategy_of(src));
    f.strategy_rates.push_back(rates_of(src));
  }
  return f;
}

}  // namespace detail

namespace {

using detail::StrategyParams;

std::uint64_t direction_key(Direction d) {
  return mix_seed(std::bit_cast<std::uint64_t>(d.mu1)) ^ std::bit_cast<std::uint64_t>(d.mu2);
}

void fill_input(StrategyParams& p, Rng& rng) {
  std::bernoulli_distribution deterministic(0.5);
  auto& input = p.tables.back();
  const std::size_t x = p.alphabets.x;
  for (std::size_t s = 0; s < input.size() / x; ++s) {
    const auto slice = deterministic(rng) ? random_vertex(rng, x) : random_simplex(rng, x);
    std::copy(slice.begin(), slice.end(), input.begin() + static_cast<std::ptrdiff_t>(s * x));
  }
}

StrategyParams sample_params(int cls, const Alphabets& a, AuxCardinalities cards, Rng& rng) {
  StrategyParams p = detail::empty_params(cls, a, cards);
  const std::size_t vv = p.cards.v1 * p.cards.v2;
  if (cls == 1) {
    for (std::size_t w = 0; w < a.w; ++w) {
      const auto s = random_simplex(rng, vv);
      std::copy(s.begin(), s.end(), p.tables[0].begin() + static_cast<std::ptrdiff_t>(w * vv));
    }
    fill_input(p, rng);
    return p;
  }

  const std::size_t nu = p.cards.u;
  p.tables[0] = random_simplex(rng, nu);
  auto& aux = p.tables[1];
  const bool embed = p.cards.v1 >= nu && p.cards.v2 >= nu;
  for (std::size_t w = 0; w < a.w; ++w) {
    if (embed) {
      // Support v1 = v2 = u (mod |U|), so U is a function of V1 and of V2.
      for (std::size_t u = 0; u < nu; ++u) {
        std::vector<std::size_t> support;
        for (std::size_t v1 = u; v1 < p.cards.v1; v1 += nu)
          for (std::size_t v2 = u; v2 < p.cards.v2; v2 += nu) support.push_back(v1 * p.cards.v2 + v2);
        const auto s = random_simplex(rng, support.size());
        for (std::size_t i = 0; i < support.size(); ++i) aux[(w * nu + u) * vv + support[i]] = s[i];
      }
    } else {
      const auto s = random_simplex(rng, vv);
      for (std::size_t u = 0; u < nu; ++u)
        std::copy(s.begin(), s.end(), aux.begin() + static_cast<std::ptrdiff_t>((w * nu + u) * vv));
    }
  }
  fill_input(p, rng);
  return p;
}

struct Move {
  std::size_t table = 0;
  std::size_t offset = 0;
  std::size_t coord = 0;
  double step = 0.0;
};

// Random coordinate move: a uniform step on one entry of one slice.
bool draw_move(const StrategyParams& p, Rng& rng, double scale, Move& m) {
  std::vector<std::size_t> movable;
  for (std::size_t t = 0; t < p.tables.size(); ++t)
    if (p.slice_sizes[t] > 1) movable.push_back(t);
  if (movable.empty()) return false;

  m.table = movable[std::uniform_int_distribution<std::size_t>(0, movable.size() - 1)(rng)];
  const std::size_t size = p.slice_sizes[m.table];
  const std::size_t slices = p.tables[m.table].size() / size;
  m.offset = std::uniform_int_distribution<std::size_t>(0, slices - 1)(rng) * size;
  m.coord = std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
  m.step = std::uniform_real_distribution<double>(-scale, scale)(rng);
  return true;
}

// Clip at zero and renormalize the slice. Returns false (slice untouched) when
// the move would empty it or changes nothing.
bool apply_move(StrategyParams& p, const Move& m, std::vector<double>& saved) {
  const std::size_t size = p.slice_sizes[m.table];
  double* s = p.tables[m.table].data() + m.offset;
  saved.assign(s, s + size);
  const double moved = std::max(0.0, s[m.coord] + m.step);
  if (moved == s[m.coord]) return false;
  s[m.coord] = moved;
  const double total = std::accumulate(s, s + size, 0.0);
  if (!(total > 0.0)) {
    std::copy(saved.begin(), saved.end(), s);
    return false;
  }
  for (std::size_t i = 0; i < size; ++i) s[i] /= total;
  return true;
}

struct ClimbResult {
  Strategy strategy;
  RateTriple rates;
  double value = 0.0;
};

ClimbResult climb(int cls, BoundKind kind, const StateBroadcastChannel& c, AuxCardinalities cards,
                  Direction dir, const SearchConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  StrategyParams p = sample_params(cls, c.alphabets(), cards, rng);
  Strategy current = p.to_strategy();
  auto rates = detail::score(kind, c, current, cfg.markov_tolerance);
  if (!rates) {
    // Chain-compliant by construction; a failure here means the tolerance is
    // tighter than the rounding of the audit itself.
    throw ConstraintError("sampled Class II strategy failed the Markov audit");
  }
  double value = weighted_value(*rates, dir);

  const std::size_t iters = cfg.iterations;
  const double ratio = cfg.final_scale / cfg.initial_scale;
  std::vector<double> saved;
  Move move;
  for (std::size_t it = 0; it < iters; ++it) {
    const double scale =
        cfg.initial_scale * (iters > 1 ? std::pow(ratio, double(it) / double(iters - 1)) : 1.0);
    if (!draw_move(p, rng, scale, move) || !apply_move(p, move, saved)) continue;
    Strategy candidate = p.to_strategy();
    const auto cand_rates = detail::score(kind, c, candidate, cfg.markov_tolerance);
    const double cand_value = cand_rates ? weighted_value(*cand_rates, dir) : -1.0;
    if (cand_rates && cand_value >= value) {
      value = cand_value;
      rates = cand_rates;
      current = std::move(candidate);
    } else {
      std::copy(saved.begin(), saved.end(),
                p.tables[move.table].begin() + static_cast<std::ptrdiff_t>(move.offset));
    }
  }
  return {std::move(current), *rates, value};
}

}  // namespace

// ---------------------------------------------------------------------------

const char* to_string(BoundKind kind) { return kind == BoundKind::inner ? "inner" : "outer"; }

void validate(const SearchConfig& cfg) {
  if (cfg.directions < 2) throw ArgumentError("search needs at least two directions");
  if (cfg.restarts < 1) throw ArgumentError("search needs at least one restart");
  if (cfg.cards.u < 1) throw ArgumentError("|U| must be at least 1");
  if (!(cfg.initial_scale > 0.0) || !(cfg.final_scale > 0.0))
    throw ArgumentError("perturbation scales must be positive");
}

AuxCardinalities resolved_cardinalities(int cls, const StateBroadcastChannel& c,
                                        const SearchConfig& cfg) {
  const Alphabets a = c.alphabets();
  const std::size_t dflt = a.x * a.w + 1;
  AuxCardinalities r;
  r.u = cls == 1 ? 1 : cfg.cards.u;
  r.v1 = cfg.cards.v1 == 0 ? dflt : cfg.cards.v1;
  r.v2 = cfg.cards.v2 == 0 ? dflt : cfg.cards.v2;
  return r;
}

std::vector<Direction> sweep_directions(std::size_t count) {
  if (count < 2) throw ArgumentError("direction sweep needs at least two directions");
  std::vector<Direction> dirs;
  dirs.reserve(count);
  for (std::size_t d = 0; d < count; ++d) {
    if (d == 0) {
      dirs.push_back({1.0, 0.0});
    } else if (d + 1 == count) {
      dirs.push_back({0.0, 1.0});
    } else {
      const double theta = 0.5 * std::numbers::pi * double(d) / double(count - 1);
      dirs.push_back({std::cos(theta), std::sin(theta)});
    }
  }
  return dirs;
}

Strategy sample_strategy(int cls, const StateBroadcastChannel& c, const SearchConfig& cfg,
                         std::uint64_t seed) {
  if (cls != 1 && cls != 2) throw ArgumentError("strategy class must be 1 or 2");
  Rng rng(seed);
  StrategyParams p = sample_params(cls, c.alphabets(), resolved_cardinalities(cls, c, cfg), rng);
  Strategy s = p.to_strategy();
  if (cls == 2 && !markov_check(induced_joint(c, s), cfg.markov_tolerance).pass)
    throw ConstraintError("sampled Class II strategy failed the Markov audit");
  return s;
}

RateTriple evaluate_strategy(BoundKind kind, const StateBroadcastChannel& c, const Strategy& s,
                             double markov_tolerance) {
  const JointPMF joint = induced_joint(c, s);
  if (strategy_class(s) == 1)
    return kind == BoundKind::outer ? class1_outer(joint) : class1_inner(joint);
  if (kind == BoundKind::outer) return class2_outer(class2_terms(joint));
  return class2_inner(joint, markov_tolerance);
}

std::vector<RatePoint> polytope_vertices(const RateTriple& t) {
  const double a = std::max(t.r1, 0.0);
  const double b = std::max(t.r2, 0.0);
  const double s = std::max(t.sum, 0.0);
  const double ac = std::min(a, s);
  const double bc = std::min(b, s);
  return {{0.0, 0.0, 0},
          {ac, 0.0, 0},
          {0.0, bc, 0},
          {ac, std::min(bc, s - ac), 0},
          {std::min(ac, s - bc), bc, 0}};
}

double weighted_value(const RateTriple& t, Direction d) {
  double best = 0.0;
  for (const auto& v : polytope_vertices(t)) best = std::max(best, d.mu1 * v.r1 + d.mu2 * v.r2);
  return best;
}

// ---------------------------------------------------------------------------

const std::optional<RateTriple>& CandidatePool::rates(std::size_t i, BoundKind kind) const {
  return kind == BoundKind::inner ? entries_[i].inner : entries_[i].outer;
}

std::size_t CandidatePool::append(const StateBroadcastChannel& c, Strategy s) {
  if (bcr::strategy_class(s) != class_) throw ArgumentError("strategy class does not match the pool");
  Entry e{std::move(s), std::nullopt, std::nullopt};
  e.inner = detail::score(BoundKind::inner, c, e.strategy, markov_tolerance_);
  e.outer = detail::score(BoundKind::outer, c, e.strategy, markov_tolerance_);
  entries_.push_back(std::move(e));
  return entries_.size() - 1;
}

WeightedResult maximize_weighted(int cls, BoundKind kind, const StateBroadcastChannel& c,
                                 Direction direction, const SearchConfig& cfg,
                                 CandidatePool* pool) {
  validate(cfg);
  if (cls != 1 && cls != 2) throw ArgumentError("strategy class must be 1 or 2");
  if (!(direction.mu1 >= 0.0) || !(direction.mu2 >= 0.0) ||
      (direction.mu1 == 0.0 && direction.mu2 == 0.0))
    throw ArgumentError("direction weights must be nonnegative and not both zero");
  if (pool && pool->strategy_class() != cls)
    throw ArgumentError("candidate pool holds a different strategy class");

  const AuxCardinalities cards = resolved_cardinalities(cls, c, cfg);
  std::vector<std::optional<ClimbResult>> runs(cfg.restarts);
  detail::parallel_for(cfg.restarts, cfg.threads, [&](std::size_t r) {
    runs[r] = climb(cls, kind, c, cards, direction, cfg,
                    derive_seed(cfg.seed, direction_key(direction), r));
  });

  const std::size_t existing = pool ? pool->size() : 0;
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r]->value > runs[best]->value) best = r;
  WeightedResult result{runs[best]->value, runs[best]->strategy, runs[best]->rates};

  if (pool) {
    for (std::size_t i = 0; i < existing; ++i) {
      const auto& rates = pool->rates(i, kind);
      if (!rates) continue;
      const double v = weighted_value(*rates, direction);
      if (v > result.value) result = {v, (*pool)[i].strategy, *rates};
    }
    for (auto& run : runs) pool->append(c, std::move(run->strategy));
  }
  return result;
}

void search_into_pool(int cls, BoundKind kind, const StateBroadcastChannel& c,
                      const SearchConfig& cfg, CandidatePool& pool) {
  validate(cfg);
  if (pool.strategy_class() != cls) throw ArgumentError("candidate pool holds a different strategy class");
  const AuxCardinalities cards = resolved_cardinalities(cls, c, cfg);
  const auto dirs = sweep_directions(cfg.directions);
  const std::size_t items = dirs.size() * cfg.restarts;

  std::vector<std::optional<ClimbResult>> runs(items);
  detail::parallel_for(items, cfg.threads, [&](std::size_t i) {
    const Direction d = dirs[i / cfg.restarts];
    runs[i] = climb(cls, kind, c, cards, d, cfg,
                    derive_seed(cfg.seed, direction_key(d), i % cfg.restarts));
  });
  for (auto& run : runs) pool.append(c, std::move(run->strategy));
}

FrontierPolyline assemble_frontier(BoundKind kind, const CandidatePool& pool,
                                   const SearchConfig& cfg) {
  std::vector<RatePoint> points;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& rates = pool.rates(i, kind);
    if (!rates) continue;
    for (auto v : polytope_vertices(*rates)) {
      v.source = i;
      points.push_back(v);
    }
  }
  if (points.empty()) points.push_back({0.0, 0.0, 0});
  const auto hull = pareto_hull(std::move(points), cfg.time_sharing);
  return detail::build_polyline(
      pool.strategy_class(), kind, hull, cfg,
      [&](std::uint64_t src) { return pool[src].strategy; },
      [&](std::uint64_t src) { return *pool.rates(src, kind); });
}

FrontierPolyline frontier(int cls, BoundKind kind, const StateBroadcastChannel& c,
                          const SearchConfig& cfg, CandidatePool* shared) {
  CandidatePool local(cls, cfg.markov_tolerance);
  CandidatePool& pool = shared ? *shared : local;
  search_into_pool(cls, kind, c, cfg, pool);
  return assemble_frontier(kind, pool, cfg);
}

std::vector<RatePoint> FrontierPolyline::points() const {
  std::vector<RatePoint> out;
  out.reserve(vertices.size());
  for (const auto& v : vertices) out.push_back({v.r1, v.r2, v.strategy});
  return out;
}

DominanceReport dominance(const FrontierPolyline& inner, const FrontierPolyline& outer,
                          double tolerance) {
  DominanceReport rep;
  rep.tolerance = tolerance;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const auto outer_pts = outer.points();
  for (const auto& v : inner.vertices) {
    DominanceCheck chk{v.r1, v.r2, 0.0, true};
    const double h = frontier_height(outer_pts, v.r1, outer.hulled);
    chk.margin = std::isinf(h) ? outer.max_r1() - v.r1 : h - v.r2;
    chk.dominated = chk.margin >= -tolerance;
    rep.min_margin = std::min(rep.min_margin, chk.margin);
    rep.dominated = rep.dominated && chk.dominated;
    rep.checks.push_back(chk);
  }
  if (rep.checks.empty()) rep.min_margin = 0.0;
  return rep;
}

BoundComparison compare_bounds(int cls, const StateBroadcastChannel& c, const SearchConfig& cfg,
                               double tolerance) {
  CandidatePool pool(cls, cfg.markov_tolerance);
  search_into_pool(cls, BoundKind::inner, c, cfg, pool);
  search_into_pool(cls, BoundKind::outer, c, cfg, pool);
  BoundComparison out;
  out.inner = assemble_frontier(BoundKind::inner, pool, cfg);
  out.outer = assemble_frontier(BoundKind::outer, pool, cfg);
  out.pool_size = pool.size();
  out.report = dominance(out.inner, out.outer, tolerance);
  return out;
}

}  // namespace bcr
