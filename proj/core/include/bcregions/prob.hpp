#pragma once

// Dense finite joint distributions, conditional factors and information
// functionals in bits.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bcr {

inline constexpr std::size_t kDefaultCellLimit = 1'000'000;

// Tolerance used when a joint is built from user data.
inline constexpr double kJointSumTolerance = 1e-9;

struct VariableSpec {
  std::string name;
  std::size_t cardinality = 1;

  friend bool operator==(const VariableSpec&, const VariableSpec&) = default;
};

using Names = std::vector<std::string>;

// Number of cells of a product alphabet; throws SizeError past `limit`.
std::size_t cell_count(std::span<const VariableSpec> vars, std::size_t limit = kDefaultCellLimit);

// Probability mass function over an ordered list of finite variables. Storage is
// row-major with the last variable varying fastest. Immutable after construction.
class JointPMF {
 public:
  // Throws ArgumentError on shape mismatch, duplicate names or zero cardinality,
  // ValidationError on negative mass or a total outside 1 +- kJointSumTolerance,
  // SizeError when the table exceeds `cell_limit`.
  JointPMF(std::vector<VariableSpec> variables, std::vector<double> mass,
           std::size_t cell_limit = kDefaultCellLimit);

  const std::vector<VariableSpec>& variables() const { return variables_; }
  std::span<const double> mass() const { return mass_; }
  const std::vector<std::size_t>& strides() const { return strides_; }
  std::size_t size() const { return mass_.size(); }
  std::size_t variable_count() const { return variables_.size(); }

  bool has(std::string_view name) const;
  // Throws NameError for unknown names.
  std::size_t index_of(std::string_view name) const;
  const VariableSpec& variable(std::string_view name) const { return variables_[index_of(name)]; }

  // Mass at a full outcome (one index per variable, in variable order).
  double at(std::span<const std::size_t> outcome) const;

 private:
  std::vector<VariableSpec> variables_;
  std::vector<std::size_t> strides_;
  std::vector<double> mass_;
};

// Conditional distribution p(outputs | conditioning). Values are laid out as
// [conditioning..., outputs...] row-major, so each conditioning index owns a
// contiguous slice of outcome_count() entries.
class Factor {
 public:
  // Checks shape and disjointness only; normalization is checked by violations()
  // or enforced by normalized().
  Factor(std::vector<VariableSpec> outputs, std::vector<VariableSpec> conditioning,
         std::vector<double> values);

  // Validates every slice within `tolerance` and rescales it to sum to one.
  // Throws ValidationError listing every violation.
  static Factor normalized(std::vector<VariableSpec> outputs,
                           std::vector<VariableSpec> conditioning, std::vector<double> values,
                           double tolerance = 1e-9);

  const std::vector<VariableSpec>& outputs() const { return outputs_; }
  const std::vector<VariableSpec>& conditioning() const { return conditioning_; }
  std::span<const double> values() const { return values_; }

  std::size_t condition_count() const { return condition_count_; }
  std::size_t outcome_count() const { return outcome_count_; }
  std::span<const double> slice(std::size_t condition) const;

  // Human-readable index path of a conditioning slice, e.g. "[w=0][x=1]".
  std::string slice_label(std::size_t condition) const;

  // Negative entries and slices whose sum is off by more than `tolerance`.
  // Empty iff the factor is a valid conditional distribution.
  std::vector<std::string> violations(double tolerance = 1e-9, std::string_view label = {}) const;

 private:
  std::vector<VariableSpec> outputs_;
  std::vector<VariableSpec> conditioning_;
  std::vector<double> values_;
  std::size_t condition_count_ = 1;
  std::size_t outcome_count_ = 1;
};

// Product of an ordered factor chain. Every conditioning variable must be an
// output of an earlier factor with the same cardinality, and no variable may be
// produced twice. Variables appear in the joint in order of production.
JointPMF compose(std::span<const Factor> factors, std::size_t cell_limit = kDefaultCellLimit);

// Sums out every variable not in `keep`; the result lists variables in `keep` order.
JointPMF marginalize(const JointPMF& joint, const Names& keep);

double entropy(const JointPMF& joint, const Names& subset);
double conditional_entropy(const JointPMF& joint, const Names& target, const Names& given);
double mutual_information(const JointPMF& joint, const Names& a, const Names& b,
                          const Names& given = {});

// Binary entropy function in bits.
double binary_entropy(double p);

}  // namespace bcr
