#pragma once

// Numerical audits of the identities and inequalities that the converse
// arguments rely on: chain rules, Fano, the Csiszar sum identity and the
// Class II sum-rate decomposition.

#include <cstdint>
#include <string>
#include <vector>

#include "bcregions/prob.hpp"
#include "bcregions/sampling.hpp"

namespace bcr {

// A joint whose variables are tagged as two equal-length sequences X_1..X_N and
// Y_1..Y_N. The joint may hold further untagged variables.
class SequenceJoint {
 public:
  // Throws ArgumentError for unequal or empty sequences, repeated tags or overlap
  // between the two sequences; NameError for tags missing from the joint.
  SequenceJoint(JointPMF joint, Names xs, Names ys);

  const JointPMF& joint() const { return joint_; }
  const Names& xs() const { return xs_; }
  const Names& ys() const { return ys_; }
  std::size_t length() const { return xs_.size(); }

 private:
  JointPMF joint_;
  Names xs_;
  Names ys_;
};

// Variables named X1..XN followed by Y1..YN with the given per-letter alphabets,
// drawn as an arbitrary (not memoryless) dependent joint.
SequenceJoint random_sequence_joint(Rng& rng, std::size_t length, std::size_t x_letters,
                                    std::size_t y_letters, double zero_probability = 0.0);

// | sum_n I(Y_{n+1}^N; X_n | X^{n-1}) - sum_n I(X^{n-1}; Y_n | Y_{n+1}^N) |.
double csiszar_residual(const SequenceJoint& s);

// h2(Pe) + Pe log2(k - 1) - H(M | Mhat) with Pe = Pr[M != Mhat]. Nonnegative up
// to rounding. Throws ArgumentError unless both variables have cardinality k >= 2.
double fano_residual(const JointPMF& joint, const std::string& message = "M",
                     const std::string& estimate = "Mhat");

// | (I1 + I2) - (I1* + I2*) - I(W;V1|U,V2) - I(W;V2|U,V1) | over a joint holding
// U, W, V1, V2, Y1, Y2.
double class2_delta_residual(const JointPMF& joint);

struct AuditSizes {
  std::size_t max_letters = 3;
  std::size_t max_length = 3;
};

enum class CheckKind {
  identity,    // |residual| must stay below tolerance
  inequality,  // slack must stay at or above -tolerance
};

struct CheckResult {
  std::string name;
  CheckKind kind = CheckKind::identity;
  double tolerance = 0.0;
  std::size_t evaluations = 0;
  double worst = 0.0;  // max |residual| or min slack
  std::size_t worst_trial = 0;
  std::uint64_t worst_seed = 0;
  std::string worst_instance;
  bool pass = true;
};

struct AuditReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  AuditSizes sizes;
  std::vector<CheckResult> checks;
  double max_identity_residual = 0.0;
  double min_inequality_slack = 0.0;
  bool pass = true;

  const CheckResult* find(const std::string& name) const;
};

inline constexpr double kIdentityTolerance = 1e-10;
inline constexpr double kInequalityTolerance = 1e-12;

// Seeded battery over random joints. Deterministic in (seed, trials, sizes).
AuditReport proof_step_suite(std::uint64_t seed, std::size_t trials, AuditSizes sizes = {});

}  // namespace bcr
