#pragma once

#include <cstdint>
#include <vector>

#include "bcregions/prob.hpp"

namespace bcr {

// Set of variable positions within one joint, as a bitmask.
class VarSet {
 public:
  constexpr VarSet() = default;
  constexpr explicit VarSet(std::uint64_t bits) : bits_(bits) {}

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(VarSet other) const { return (bits_ & other.bits_) == other.bits_; }
  constexpr bool intersects(VarSet other) const { return (bits_ & other.bits_) != 0; }

  friend constexpr VarSet operator|(VarSet a, VarSet b) { return VarSet(a.bits_ | b.bits_); }
  friend constexpr bool operator==(VarSet, VarSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

// Memoizes marginals and entropies of one joint. Each marginal is derived from the
// smallest cached superset, so evaluating many functionals of the same joint costs
// far less than marginalizing from scratch each time.
//
// Not thread-safe; intended as a short-lived local next to the joint it borrows.
class EntropyCache {
 public:
  explicit EntropyCache(const JointPMF& joint);

  const JointPMF& joint() const { return joint_; }

  // Throws NameError for unknown names and ArgumentError for repeated names.
  VarSet set(const Names& names) const;
  VarSet set(std::initializer_list<const char*> names) const;

  // Computes and caches the marginal on `s` so later subsets derive from it.
  void prime(VarSet s) { marginal(s); }

  double entropy(VarSet s);
  double conditional_entropy(VarSet target, VarSet given);
  double mutual_information(VarSet a, VarSet b, VarSet given = {});

 private:
  struct Marginal {
    VarSet vars;
    std::vector<double> mass;
  };

  const Marginal& marginal(VarSet s);

  const JointPMF& joint_;
  std::vector<std::size_t> cards_;
  std::vector<Marginal> marginals_;
  std::vector<std::pair<VarSet, double>> entropies_;
};

}  // namespace bcr
