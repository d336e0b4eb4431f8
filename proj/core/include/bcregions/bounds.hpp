#pragma once

// Rate-bound expressions for the two channel classes, evaluated exactly on an
// induced joint. Raw values are returned unclamped and may be negative.

#include <optional>
#include <string>

#include "bcregions/channel.hpp"
#include "bcregions/entropy_cache.hpp"
#include "bcregions/prob.hpp"

namespace bcr {

struct RateTriple {
  double r1 = 0.0;
  double r2 = 0.0;
  double sum = 0.0;

  friend bool operator==(const RateTriple&, const RateTriple&) = default;
};

// Class II constraint values. i12 and i12s are evaluated literally from their
// defining sums, so i12 == i1 + i2 holds only up to rounding.
struct Class2Terms {
  double i1 = 0.0;
  double i2 = 0.0;
  double i12 = 0.0;
  double i1s = 0.0;  // genie-aided
  double i2s = 0.0;
  double i12s = 0.0;
};

// Class I outer bound: R_t <= I(V_t;Y_t) - I(W;V_t), sum = r1 + r2.
RateTriple class1_outer(EntropyCache& cache);
RateTriple class1_outer(const JointPMF& joint);

// Class I inner bound: individual constraints as the outer bound; the sum pays
// I(V1;V2) + I(V1,V2;W) instead of I(W;V1) + I(W;V2).
RateTriple class1_inner(EntropyCache& cache);
RateTriple class1_inner(const JointPMF& joint);

Class2Terms class2_terms(EntropyCache& cache);
Class2Terms class2_terms(const JointPMF& joint);

// r_t = min(I_t, I_t*); sum = min(I12, I12*, I1 + I2*, I2 + I1*).
RateTriple class2_outer(const Class2Terms& t);

// min(I1 + I2*, I2 + I1*), the tightened sum-rate expression alone.
double class2_tightened_sum(const Class2Terms& t);

// Class II inner bound. Requires the Markov chains U -> V_t -> X; throws
// ConstraintError naming the residual otherwise.
RateTriple class2_inner(EntropyCache& cache, double markov_tolerance = 1e-9);
RateTriple class2_inner(const JointPMF& joint, double markov_tolerance = 1e-9);

// Same expressions without the Markov precondition (callers that already audited).
RateTriple class2_inner_unchecked(EntropyCache& cache);

// Single-user side-information rate I(V;Y) - I(W;V).
double gp_rate(const JointPMF& joint, const std::string& v = "V", const std::string& w = "W",
               const std::string& y = "Y");

// Everything the CLI prints for one Class I evaluation.
struct Class1Report {
  double i_v1_y1 = 0.0;
  double i_v2_y2 = 0.0;
  double i_w_v1 = 0.0;
  double i_w_v2 = 0.0;
  double i_v1_v2 = 0.0;
  double i_v1v2_w = 0.0;
  RateTriple outer;
  RateTriple inner;
};

struct Class2Report {
  Class2Terms terms;
  RateTriple outer;
  double plain_sum = 0.0;      // min(I12, I12*)
  double tightened_sum = 0.0;  // min(I1 + I2*, I2 + I1*)
  bool tightened_below_genie_sum = false;
  double delta = 0.0;  // (I1 + I2) - (I1* + I2*)
  double i_w_v1_given_u_v2 = 0.0;
  double i_w_v2_given_u_v1 = 0.0;
  MarkovReport markov;
  std::optional<RateTriple> inner;
  std::string inner_error;
};

Class1Report class1_report(const JointPMF& joint);
Class2Report class2_report(const JointPMF& joint, double markov_tolerance = 1e-9);

}  // namespace bcr
