#include "bcregions/bounds.hpp"

#include <algorithm>
#include <cstdio>

#include "bcregions/errors.hpp"

namespace bcr {

namespace {

void require(const JointPMF& j, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (!j.has(n)) throw NameError(std::string("joint is missing variable '") + n + "'");
}

double gp_term(EntropyCache& c, const char* v, const char* y) {
  return c.mutual_information(c.set({v}), c.set({y})) -
         c.mutual_information(c.set({var::W}), c.set({v}));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

RateTriple class1_outer(EntropyCache& c) {
  require(c.joint(), {var::W, var::V1, var::V2, var::Y1, var::Y2});
  c.prime(c.set({var::W, var::V1, var::V2, var::Y1, var::Y2}));
  RateTriple t;
  t.r1 = gp_term(c, var::V1, var::Y1);
  t.r2 = gp_term(c, var::V2, var::Y2);
  t.sum = t.r1 + t.r2;
  return t;
}

RateTriple class1_outer(const JointPMF& joint) {
  EntropyCache c(joint);
  return class1_outer(c);
}

RateTriple class1_inner(EntropyCache& c) {
  RateTriple t = class1_outer(c);
  const VarSet w = c.set({var::W}), v1 = c.set({var::V1}), v2 = c.set({var::V2});
  t.sum = c.mutual_information(v1, c.set({var::Y1})) + c.mutual_information(v2, c.set({var::Y2})) -
          c.mutual_information(v1, v2) - c.mutual_information(v1 | v2, w);
  return t;
}

RateTriple class1_inner(const JointPMF& joint) {
  EntropyCache c(joint);
  return class1_inner(c);
}

Class2Terms class2_terms(EntropyCache& c) {
  require(c.joint(), {var::U, var::W, var::V1, var::V2, var::Y1, var::Y2});
  const VarSet u = c.set({var::U}), w = c.set({var::W}), v1 = c.set({var::V1}),
               v2 = c.set({var::V2}), y1 = c.set({var::Y1}), y2 = c.set({var::Y2});

  c.prime(u | w | v1 | v2 | y1 | y2);
  c.prime(u | v1 | v2 | y1 | y2);
  c.prime(u | w | v1 | v2);

  const double v1y1_u = c.mutual_information(v1, y1, u);
  const double v1y2_u = c.mutual_information(v1, y2, u);
  const double v2y2_u = c.mutual_information(v2, y2, u);
  const double v2y1_u = c.mutual_information(v2, y1, u);
  const double hw_uv1 = c.conditional_entropy(w, u | v1);
  const double hw_uv2 = c.conditional_entropy(w, u | v2);

  const double v1y1_uv2 = c.mutual_information(v1, y1, u | v2);
  const double v1y2_uv2 = c.mutual_information(v1, y2, u | v2);
  const double v2y2_uv1 = c.mutual_information(v2, y2, u | v1);
  const double v2y1_uv1 = c.mutual_information(v2, y1, u | v1);
  const double hw_uv1v2 = c.conditional_entropy(w, u | v1 | v2);

  Class2Terms t;
  t.i1 = v1y1_u - v1y2_u + hw_uv1;
  t.i2 = v2y2_u - v2y1_u + hw_uv2;
  t.i12 = v1y1_u + v2y2_u - v1y2_u - v2y1_u + hw_uv1 + hw_uv2;
  t.i1s = v1y1_uv2 - v1y2_uv2 + hw_uv1v2;
  t.i2s = v2y2_uv1 - v2y1_uv1 + hw_uv1v2;
  t.i12s = v1y1_uv2 + v2y2_uv1 - v1y2_uv2 - v2y1_uv1 + 2.0 * hw_uv1v2;
  return t;
}

Class2Terms class2_terms(const JointPMF& joint) {
  EntropyCache c(joint);
  return class2_terms(c);
}

double class2_tightened_sum(const Class2Terms& t) {
  return std::min(t.i1 + t.i2s, t.i2 + t.i1s);
}

RateTriple class2_outer(const Class2Terms& t) {
  RateTriple r;
  r.r1 = std::min(t.i1, t.i1s);
  r.r2 = std::min(t.i2, t.i2s);
  r.sum = std::min({t.i12, t.i12s, t.i1 + t.i2s, t.i2 + t.i1s});
  return r;
}

RateTriple class2_inner_unchecked(EntropyCache& c) {
  require(c.joint(), {var::U, var::W, var::V1, var::V2, var::Y1, var::Y2});
  const VarSet u = c.set({var::U}), w = c.set({var::W}), v1 = c.set({var::V1}),
               v2 = c.set({var::V2}), y1 = c.set({var::Y1}), y2 = c.set({var::Y2});

  c.prime(u | w | v1 | v2 | y1 | y2);
  c.prime(u | v1 | v2 | y1 | y2);
  c.prime(u | w | v1 | v2);

  const double v1y1_u = c.mutual_information(v1, y1, u);
  const double v2y2_u = c.mutual_information(v2, y2, u);
  const double v1y2_uv2 = c.mutual_information(v1, y2, u | v2);
  const double v2y1_uv1 = c.mutual_information(v2, y1, u | v1);

  RateTriple r;
  r.r1 = v1y1_u - std::max(v1y2_uv2, c.mutual_information(w, v1, u));
  r.r2 = v2y2_u - std::max(v2y1_uv1, c.mutual_information(w, v2, u));
  r.sum = v1y1_u + v2y2_u - v1y2_uv2 - v2y1_uv1 - c.mutual_information(v1, v2, u) -
          c.mutual_information(v1 | v2, w, u);
  return r;
}

RateTriple class2_inner(EntropyCache& c, double markov_tolerance) {
  const MarkovReport m = markov_check(c, markov_tolerance);
  if (!m.pass) {
    std::string msg = "Markov chain violated:";
    if (m.residual_uv1x > markov_tolerance)
      msg += " I(U;X|V1) = " + fmt(m.residual_uv1x) + " > " + fmt(markov_tolerance);
    if (m.residual_uv2x > markov_tolerance)
      msg += " I(U;X|V2) = " + fmt(m.residual_uv2x) + " > " + fmt(markov_tolerance);
    throw ConstraintError(msg);
  }
  return class2_inner_unchecked(c);
}

RateTriple class2_inner(const JointPMF& joint, double markov_tolerance) {
  EntropyCache c(joint);
  return class2_inner(c, markov_tolerance);
}

double gp_rate(const JointPMF& joint, const std::string& v, const std::string& w,
               const std::string& y) {
  EntropyCache c(joint);
  const VarSet vs = c.set(Names{v});
  return c.mutual_information(vs, c.set(Names{y})) - c.mutual_information(c.set(Names{w}), vs);
}

Class1Report class1_report(const JointPMF& joint) {
  EntropyCache c(joint);
  Class1Report r;
  r.outer = class1_outer(c);
  r.inner = class1_inner(c);
  const VarSet w = c.set({var::W}), v1 = c.set({var::V1}), v2 = c.set({var::V2});
  r.i_v1_y1 = c.mutual_information(v1, c.set({var::Y1}));
  r.i_v2_y2 = c.mutual_information(v2, c.set({var::Y2}));
  r.i_w_v1 = c.mutual_information(w, v1);
  r.i_w_v2 = c.mutual_information(w, v2);
  r.i_v1_v2 = c.mutual_information(v1, v2);
  r.i_v1v2_w = c.mutual_information(v1 | v2, w);
  return r;
}

Class2Report class2_report(const JointPMF& joint, double markov_tolerance) {
  EntropyCache c(joint);
  Class2Report r;
  r.terms = class2_terms(c);
  r.outer = class2_outer(r.terms);
  r.plain_sum = std::min(r.terms.i12, r.terms.i12s);
  r.tightened_sum = class2_tightened_sum(r.terms);
  r.tightened_below_genie_sum = r.tightened_sum <= r.terms.i12s;
  r.delta = (r.terms.i1 + r.terms.i2) - (r.terms.i1s + r.terms.i2s);
  const VarSet u = c.set({var::U}), w = c.set({var::W}), v1 = c.set({var::V1}),
               v2 = c.set({var::V2});
  r.i_w_v1_given_u_v2 = c.mutual_information(w, v1, u | v2);
  r.i_w_v2_given_u_v1 = c.mutual_information(w, v2, u | v1);
  r.markov = markov_check(c, markov_tolerance);
  try {
    r.inner = class2_inner(c, markov_tolerance);
  } catch (const ConstraintError& e) {
    r.inner_error = e.what();
  }
  return r;
}

}  // namespace bcr
