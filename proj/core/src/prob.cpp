#include "bcregions/prob.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "bcregions/entropy_cache.hpp"
#include "bcregions/errors.hpp"
#include "odometer.hpp"

namespace bcr {

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::size_t> row_major_strides(std::span<const VariableSpec> vars) {
  std::vector<std::size_t> strides(vars.size(), 1);
  for (std::size_t k = vars.size(); k-- > 1;) strides[k - 1] = strides[k] * vars[k].cardinality;
  return strides;
}

void check_unique_names(std::span<const VariableSpec> vars, const char* what) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].cardinality == 0)
      throw ArgumentError(std::string(what) + ": variable '" + vars[i].name +
                          "' has cardinality 0");
    for (std::size_t j = 0; j < i; ++j)
      if (vars[i].name == vars[j].name)
        throw ArgumentError(std::string(what) + ": duplicate variable '" + vars[i].name + "'");
  }
}

}  // namespace

std::size_t cell_count(std::span<const VariableSpec> vars, std::size_t limit) {
  std::size_t total = 1;
  for (const auto& v : vars) {
    if (v.cardinality != 0 && total > limit / v.cardinality)
      throw SizeError("table over variables exceeds the cell limit of " + std::to_string(limit));
    total *= v.cardinality;
  }
  if (total > limit)
    throw SizeError("table of " + std::to_string(total) + " cells exceeds the cell limit of " +
                    std::to_string(limit));
  return total;
}

// ---------------------------------------------------------------------------
// JointPMF

JointPMF::JointPMF(std::vector<VariableSpec> variables, std::vector<double> mass,
                   std::size_t cell_limit)
    : variables_(std::move(variables)), mass_(std::move(mass)) {
  check_unique_names(variables_, "joint");
  const std::size_t cells = cell_count(variables_, cell_limit);
  if (mass_.size() != cells)
    throw ArgumentError("joint has " + std::to_string(mass_.size()) + " entries, expected " +
                        std::to_string(cells));
  double total = 0.0;
  for (double p : mass_) {
    if (!(p >= 0.0) || !std::isfinite(p))
      throw ValidationError("joint has a negative or non-finite entry " + format_number(p));
    total += p;
  }
  if (std::abs(total - 1.0) > kJointSumTolerance)
    throw ValidationError("joint mass sums to " + format_number(total));
  strides_ = row_major_strides(variables_);
}

bool JointPMF::has(std::string_view name) const {
  return std::any_of(variables_.begin(), variables_.end(),
                     [&](const VariableSpec& v) { return v.name == name; });
}

std::size_t JointPMF::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i].name == name) return i;
  throw NameError("unknown variable '" + std::string(name) + "'");
}

double JointPMF::at(std::span<const std::size_t> outcome) const {
  if (outcome.size() != variables_.size()) throw ArgumentError("outcome has wrong arity");
  std::size_t offset = 0;
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (outcome[i] >= variables_[i].cardinality) throw ArgumentError("outcome out of range");
    offset += outcome[i] * strides_[i];
  }
  return mass_[offset];
}

// ---------------------------------------------------------------------------
// Factor

Factor::Factor(std::vector<VariableSpec> outputs, std::vector<VariableSpec> conditioning,
               std::vector<double> values)
    : outputs_(std::move(outputs)),
      conditioning_(std::move(conditioning)),
      values_(std::move(values)) {
  if (outputs_.empty()) throw ArgumentError("factor must produce at least one variable");
  std::vector<VariableSpec> all = conditioning_;
  all.insert(all.end(), outputs_.begin(), outputs_.end());
  check_unique_names(all, "factor");
  condition_count_ = cell_count(conditioning_);
  outcome_count_ = cell_count(outputs_);
  if (values_.size() != condition_count_ * outcome_count_)
    throw ArgumentError("factor has " + std::to_string(values_.size()) + " entries, expected " +
                        std::to_string(condition_count_ * outcome_count_));
}

Factor Factor::normalized(std::vector<VariableSpec> outputs,
                          std::vector<VariableSpec> conditioning, std::vector<double> values,
                          double tolerance) {
  Factor f(std::move(outputs), std::move(conditioning), std::move(values));
  if (auto v = f.violations(tolerance); !v.empty()) {
    std::ostringstream msg;
    msg << "invalid conditional distribution:";
    for (const auto& line : v) msg << "\n  " << line;
    throw ValidationError(msg.str());
  }
  for (std::size_t c = 0; c < f.condition_count_; ++c) {
    auto first = f.values_.begin() + static_cast<std::ptrdiff_t>(c * f.outcome_count_);
    auto last = first + static_cast<std::ptrdiff_t>(f.outcome_count_);
    const double s = std::accumulate(first, last, 0.0);
    std::for_each(first, last, [s](double& x) { x /= s; });
  }
  return f;
}

std::span<const double> Factor::slice(std::size_t condition) const {
  return std::span<const double>(values_).subspan(condition * outcome_count_, outcome_count_);
}

std::string Factor::slice_label(std::size_t condition) const {
  std::string label;
  std::size_t rest = condition;
  std::vector<std::size_t> digits(conditioning_.size());
  for (std::size_t k = conditioning_.size(); k-- > 0;) {
    digits[k] = rest % conditioning_[k].cardinality;
    rest /= conditioning_[k].cardinality;
  }
  for (std::size_t k = 0; k < conditioning_.size(); ++k)
    label += "[" + lower(conditioning_[k].name) + "=" + std::to_string(digits[k]) + "]";
  return label;
}

std::vector<std::string> Factor::violations(double tolerance, std::string_view label) const {
  std::vector<std::string> out;
  const std::string prefix = label.empty() ? std::string("slice") : std::string(label) + " slice";
  for (std::size_t c = 0; c < condition_count_; ++c) {
    const auto s = slice(c);
    const std::string where = prefix + (conditioning_.empty() ? "" : " " + slice_label(c));
    double total = 0.0;
    for (std::size_t o = 0; o < s.size(); ++o) {
      if (!std::isfinite(s[o])) {
        out.push_back(where + " has a non-finite entry at position " + std::to_string(o));
      } else if (s[o] < 0.0) {
        out.push_back(where + " has negative entry " + format_number(s[o]) + " at position " +
                      std::to_string(o));
      }
      total += s[o];
    }
    if (std::isfinite(total) && std::abs(total - 1.0) > tolerance)
      out.push_back(where + " sums to " + format_number(total) + " (expected 1)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// compose / marginalize

JointPMF compose(std::span<const Factor> factors, std::size_t cell_limit) {
  if (factors.empty()) throw CompositionError("cannot compose an empty factor list");

  std::vector<VariableSpec> vars;
  auto find = [&](const std::string& name) -> const VariableSpec* {
    for (const auto& v : vars)
      if (v.name == name) return &v;
    return nullptr;
  };

  std::vector<double> mass{1.0};
  for (const Factor& f : factors) {
    for (const auto& c : f.conditioning()) {
      const VariableSpec* known = find(c.name);
      if (known == nullptr)
        throw CompositionError("conditioning variable '" + c.name +
                               "' is not produced by an earlier factor");
      if (known->cardinality != c.cardinality)
        throw CompositionError("cardinality mismatch for '" + c.name + "': " +
                               std::to_string(known->cardinality) + " vs " +
                               std::to_string(c.cardinality));
    }
    for (const auto& o : f.outputs())
      if (find(o.name) != nullptr)
        throw CompositionError("variable '" + o.name + "' is produced twice");

    std::vector<std::size_t> cards(vars.size());
    std::vector<std::size_t> cond_strides(vars.size(), 0);
    for (std::size_t i = 0; i < vars.size(); ++i) cards[i] = vars[i].cardinality;
    {
      std::size_t stride = 1;
      const auto& cond = f.conditioning();
      for (std::size_t k = cond.size(); k-- > 0;) {
        for (std::size_t i = 0; i < vars.size(); ++i)
          if (vars[i].name == cond[k].name) cond_strides[i] = stride;
        stride *= cond[k].cardinality;
      }
    }

    std::vector<VariableSpec> next_vars = vars;
    next_vars.insert(next_vars.end(), f.outputs().begin(), f.outputs().end());
    const std::size_t next_cells = cell_count(next_vars, cell_limit);
    const std::size_t outs = f.outcome_count();

    std::vector<double> next(next_cells);
    const auto values = f.values();
    detail::for_each_offset(cards, cond_strides, [&](std::size_t cell, std::size_t cond) {
      const double p = mass[cell];
      const double* row = values.data() + cond * outs;
      double* dst = next.data() + cell * outs;
      for (std::size_t o = 0; o < outs; ++o) dst[o] = p * row[o];
    });
    mass = std::move(next);
    vars = std::move(next_vars);
  }
  return JointPMF(std::move(vars), std::move(mass), cell_limit);
}

JointPMF marginalize(const JointPMF& joint, const Names& keep) {
  if (keep.empty()) throw ArgumentError("marginalize: keep list is empty");
  const auto& vars = joint.variables();
  std::vector<VariableSpec> kept;
  std::vector<std::size_t> positions;
  for (const auto& name : keep) {
    const std::size_t pos = joint.index_of(name);
    if (std::find(positions.begin(), positions.end(), pos) != positions.end())
      throw ArgumentError("marginalize: variable '" + name + "' listed twice");
    positions.push_back(pos);
    kept.push_back(vars[pos]);
  }

  const auto kept_strides = row_major_strides(kept);
  std::vector<std::size_t> cards(vars.size()), strides(vars.size(), 0);
  for (std::size_t i = 0; i < vars.size(); ++i) cards[i] = vars[i].cardinality;
  for (std::size_t k = 0; k < positions.size(); ++k) strides[positions[k]] = kept_strides[k];

  std::vector<double> out(cell_count(kept), 0.0);
  const auto mass = joint.mass();
  detail::for_each_offset(cards, strides,
                          [&](std::size_t cell, std::size_t off) { out[off] += mass[cell]; });
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (auto& p : out) p /= total;
  return JointPMF(std::move(kept), std::move(out));
}

// ---------------------------------------------------------------------------
// functionals

double entropy(const JointPMF& joint, const Names& subset) {
  EntropyCache cache(joint);
  return cache.entropy(cache.set(subset));
}

double conditional_entropy(const JointPMF& joint, const Names& target, const Names& given) {
  EntropyCache cache(joint);
  return cache.conditional_entropy(cache.set(target), cache.set(given));
}

double mutual_information(const JointPMF& joint, const Names& a, const Names& b,
                          const Names& given) {
  EntropyCache cache(joint);
  return cache.mutual_information(cache.set(a), cache.set(b), cache.set(given));
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

}  // namespace bcr
