#pragma once

// State-dependent two-receiver broadcast channels and the auxiliary-variable
// strategies that induce joint distributions over (U, W, V1, V2, X, Y1, Y2).

#include <string>
#include <variant>
#include <vector>

#include "bcregions/prob.hpp"

namespace bcr {

class EntropyCache;

namespace var {
inline constexpr const char* W = "W";
inline constexpr const char* U = "U";
inline constexpr const char* V1 = "V1";
inline constexpr const char* V2 = "V2";
inline constexpr const char* X = "X";
inline constexpr const char* Y1 = "Y1";
inline constexpr const char* Y2 = "Y2";
}  // namespace var

struct Alphabets {
  std::size_t w = 1;
  std::size_t x = 2;
  std::size_t y1 = 2;
  std::size_t y2 = 2;

  friend bool operator==(const Alphabets&, const Alphabets&) = default;
};

// p(w) and p(y1, y2 | w, x). With kernel_ignores_state the induced joints use the
// state-averaged kernel p(y1, y2 | x) instead.
struct StateBroadcastChannel {
  Factor state;
  Factor kernel;
  bool kernel_ignores_state = false;

  Alphabets alphabets() const;
  Factor effective_kernel() const;
};

// Flat arrays: state[w], kernel[w][x][y1][y2]. Shapes are checked, values are not;
// run validate_channel() or use checked_channel().
StateBroadcastChannel make_channel(const Alphabets& alphabets, std::vector<double> state,
                                   std::vector<double> kernel, bool kernel_ignores_state = false);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_channel(const StateBroadcastChannel& channel, double tolerance = 1e-9);

// Validates and rescales every slice to sum to one; throws ValidationError.
StateBroadcastChannel checked_channel(const StateBroadcastChannel& channel,
                                      double tolerance = 1e-9);

struct AuxCardinalities {
  std::size_t u = 1;
  std::size_t v1 = 1;
  std::size_t v2 = 1;

  friend bool operator==(const AuxCardinalities&, const AuxCardinalities&) = default;
};

// Member of the Class I set: p(v1, v2 | w) p(x | w, v1, v2).
struct StrategyClass1 {
  Factor aux;
  Factor input;
};

// Member of the Class II set: p(u) p(v1, v2 | w, u) p(x | w, v1, v2).
struct StrategyClass2 {
  Factor u;
  Factor aux;
  Factor input;
};

using Strategy = std::variant<StrategyClass1, StrategyClass2>;

int strategy_class(const Strategy& s);
AuxCardinalities cardinalities(const Strategy& s);

// aux[w][v1][v2], input[w][v1][v2][x].
StrategyClass1 make_strategy_class1(const Alphabets& alphabets, AuxCardinalities cards,
                                    std::vector<double> aux, std::vector<double> input);
// u[u], aux[w][u][v1][v2], input[w][v1][v2][x].
StrategyClass2 make_strategy_class2(const Alphabets& alphabets, AuxCardinalities cards,
                                    std::vector<double> u, std::vector<double> aux,
                                    std::vector<double> input);

ValidationReport validate_strategy(const Strategy& s, double tolerance = 1e-9);
Strategy checked_strategy(const Strategy& s, double tolerance = 1e-9);

JointPMF induced_joint_class1(const StateBroadcastChannel& c, const StrategyClass1& s);
JointPMF induced_joint_class2(const StateBroadcastChannel& c, const StrategyClass2& s);
JointPMF induced_joint(const StateBroadcastChannel& c, const Strategy& s);

struct MarkovReport {
  double residual_uv1x = 0.0;  // I(U;X|V1)
  double residual_uv2x = 0.0;  // I(U;X|V2)
  double tolerance = 1e-9;
  bool pass = true;
};

// Audits U -> V1 -> X and U -> V2 -> X. Throws NameError if U, V1, V2 or X is missing.
MarkovReport markov_check(const JointPMF& joint, double tolerance = 1e-9);
MarkovReport markov_check(EntropyCache& cache, double tolerance = 1e-9);

}  // namespace bcr
