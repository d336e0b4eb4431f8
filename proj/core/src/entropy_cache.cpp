#include "bcregions/entropy_cache.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "bcregions/errors.hpp"
#include "odometer.hpp"

namespace bcr {

namespace {

double shannon(std::span<const double> mass) {
  double h = 0.0;
  for (double p : mass)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

}  // namespace

EntropyCache::EntropyCache(const JointPMF& joint) : joint_(joint) {
  if (joint.variable_count() > 64) throw SizeError("entropy cache supports at most 64 variables");
  cards_.reserve(joint.variable_count());
  for (const auto& v : joint.variables()) cards_.push_back(v.cardinality);
}

VarSet EntropyCache::set(const Names& names) const {
  std::uint64_t bits = 0;
  for (const auto& name : names) {
    const std::uint64_t bit = std::uint64_t{1} << joint_.index_of(name);
    if (bits & bit) throw ArgumentError("variable '" + name + "' listed twice");
    bits |= bit;
  }
  return VarSet(bits);
}

VarSet EntropyCache::set(std::initializer_list<const char*> names) const {
  Names n;
  for (const char* s : names) n.emplace_back(s);
  return set(n);
}

const EntropyCache::Marginal& EntropyCache::marginal(VarSet s) {
  for (const auto& m : marginals_)
    if (m.vars == s) return m;

  // Smallest cached superset, falling back to the full joint.
  const Marginal* parent = nullptr;
  for (const auto& m : marginals_)
    if (m.vars.contains(s) && (parent == nullptr || m.mass.size() < parent->mass.size()))
      parent = &m;

  const std::uint64_t all = joint_.variable_count() == 64
                                ? ~std::uint64_t{0}
                                : (std::uint64_t{1} << joint_.variable_count()) - 1;
  const VarSet parent_vars = parent ? parent->vars : VarSet(all);
  const std::span<const double> parent_mass =
      parent ? std::span<const double>(parent->mass) : joint_.mass();

  std::vector<std::size_t> pcards, pstrides;
  std::size_t child_cells = 1;
  for (std::size_t i = cards_.size(); i-- > 0;) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    if (!(parent_vars.bits() & bit)) continue;
    pcards.push_back(cards_[i]);
    if (s.bits() & bit) {
      pstrides.push_back(child_cells);
      child_cells *= cards_[i];
    } else {
      pstrides.push_back(0);
    }
  }
  // Collected fastest axis first; the odometer wants slowest first.
  std::reverse(pcards.begin(), pcards.end());
  std::reverse(pstrides.begin(), pstrides.end());

  Marginal m{s, std::vector<double>(child_cells, 0.0)};
  detail::for_each_offset(pcards, pstrides, [&](std::size_t cell, std::size_t off) {
    m.mass[off] += parent_mass[cell];
  });
  // Pointer into marginals_ may be invalidated by the push; parent is not used after.
  marginals_.push_back(std::move(m));
  return marginals_.back();
}

double EntropyCache::entropy(VarSet s) {
  if (s.empty()) return 0.0;
  for (const auto& [vars, h] : entropies_)
    if (vars == s) return h;

  const std::size_t n = joint_.variable_count();
  const bool full = std::popcount(s.bits()) == static_cast<int>(n);
  const double h = full ? shannon(joint_.mass()) : shannon(marginal(s).mass);
  entropies_.emplace_back(s, h);
  return h;
}

double EntropyCache::conditional_entropy(VarSet target, VarSet given) {
  if (target.intersects(given))
    throw ArgumentError("conditional entropy: target and conditioning sets overlap");
  return entropy(target | given) - entropy(given);
}

double EntropyCache::mutual_information(VarSet a, VarSet b, VarSet given) {
  if (a.intersects(b) || a.intersects(given) || b.intersects(given))
    throw ArgumentError("mutual information: variable sets must be pairwise disjoint");
  return entropy(a | given) + entropy(b | given) - entropy(a | b | given) - entropy(given);
}

}  // namespace bcr
