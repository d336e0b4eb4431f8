#include <gtest/gtest.h>

#include "bcregions/bounds.hpp"
#include "bcregions/errors.hpp"
#include "bcregions/region_search.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bcr;

namespace {

// Identity channel to both receivers, no state.
StateBroadcastChannel noiseless() {
  return checked_channel(make_channel({1, 2, 2, 2}, {1.0}, {1, 0, 0, 0, 0, 0, 0, 1}));
}

// Y1 = X, Y2 constant.
StateBroadcastChannel only_y1() {
  return checked_channel(make_channel({1, 2, 2, 1}, {1.0}, {1, 0, 0, 1}));
}

// Copy of X to Y1 when the state is 0, noise otherwise; Y2 constant.
StateBroadcastChannel stateful_y1(Rng& rng) {
  std::vector<double> k = {1, 0, 0, 1};
  const auto noise = random_simplex(rng, 2), noise2 = random_simplex(rng, 2);
  k.insert(k.end(), noise.begin(), noise.end());
  k.insert(k.end(), noise2.begin(), noise2.end());
  return checked_channel(make_channel({2, 2, 2, 1}, random_simplex(rng, 2), k));
}

}  // namespace

TEST(Class1Outer, IdentityChannelGivesOneBit) {
  // V1 = X uniform, V2 constant.
  const auto c = noiseless();
  const auto s = make_strategy_class1(c.alphabets(), {1, 2, 1}, {0.5, 0.5}, {1, 0, 0, 1});
  const RateTriple t = class1_outer(induced_joint_class1(c, s));
  EXPECT_DOUBLE_EQ(t.r1, 1.0);
  EXPECT_EQ(t.r2, 0.0);
}

TEST(Class1Outer, UselessReceiverGivesZero) {
  const auto c = checked_channel(make_channel({1, 2, 2, 2}, {1.0}, std::vector<double>(8, 0.25)));
  Rng rng(1);
  const RateTriple t =
      class1_outer(induced_joint_class1(c, fixture::random_class1(rng, c, {1, 2, 2})));
  EXPECT_NEAR(t.r1, 0.0, 1e-15);
  EXPECT_NEAR(t.r2, 0.0, 1e-15);
}

TEST(Class1, InvariantsOnRandomJoints) {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const auto c = fixture::random_channel(rng, {2, 2, 2, 2});
    const JointPMF j = induced_joint_class1(c, fixture::random_class1(rng, c, {1, 3, 3}, 0.2));
    const RateTriple outer = class1_outer(j), inner = class1_inner(j);
    EXPECT_EQ(outer.sum, outer.r1 + outer.r2);
    EXPECT_EQ(inner.r1, outer.r1);
    EXPECT_EQ(inner.r2, outer.r2);
    EXPECT_LE(inner.sum, outer.sum + 1e-12);

    const double r1 = oracle::mi(j, {"V1"}, {"Y1"}) - oracle::mi(j, {"W"}, {"V1"});
    const double sum = oracle::mi(j, {"V1"}, {"Y1"}) + oracle::mi(j, {"V2"}, {"Y2"}) -
                       oracle::mi(j, {"V1"}, {"V2"}) - oracle::mi(j, {"V1", "V2"}, {"W"});
    EXPECT_NEAR(outer.r1, r1, 1e-12);
    EXPECT_NEAR(inner.sum, sum, 1e-12);
  }
}

TEST(Class1Inner, IndependentAuxWithoutStateAddsUp) {
  const auto c = noiseless();
  const auto s =
      make_strategy_class1(c.alphabets(), {1, 2, 2}, {0.06, 0.14, 0.24, 0.56}, {1, 0, 1, 0, 0, 1, 0, 1});
  const RateTriple t = class1_inner(induced_joint_class1(c, s));
  EXPECT_NEAR(t.sum, t.r1 + t.r2, 1e-15);
}

TEST(Class2Terms, CopiedReceiverWithoutStateCancels) {
  // Y2 = Y1 = X through BSC(0.1), |W| = 1.
  const double f = 0.1;
  const auto c = checked_channel(
      make_channel({1, 2, 2, 2}, {1.0}, {1 - f, 0, 0, f, f, 0, 0, 1 - f}));
  Rng rng(3);
  const JointPMF j = induced_joint_class2(c, fixture::random_class2(rng, c, {2, 2, 2}));
  const Class2Terms t = class2_terms(j);
  EXPECT_NEAR(t.i1, 0.0, 1e-15);
  EXPECT_NEAR(t.i2, 0.0, 1e-15);
}

TEST(Class2Terms, StructuralIdentitiesAndDelta) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = fixture::random_channel(rng, {trial % 2 ? 2u : 1u, 2, 2, 2});
    const JointPMF j = induced_joint_class2(c, fixture::random_class2(rng, c, {2, 2, 3}));
    const Class2Terms t = class2_terms(j);
    EXPECT_NEAR(t.i12, t.i1 + t.i2, 1e-10);
    EXPECT_NEAR(t.i12s, t.i1s + t.i2s, 1e-10);
    const double gap = oracle::mi(j, {"W"}, {"V1"}, {"U", "V2"}) +
                       oracle::mi(j, {"W"}, {"V2"}, {"U", "V1"});
    EXPECT_NEAR(t.i12 - t.i12s, gap, 1e-10);
    EXPECT_GE((t.i1 + t.i2) - (t.i1s + t.i2s), -1e-12);
    if (c.alphabets().w == 1) EXPECT_NEAR(t.i1 + t.i2, t.i1s + t.i2s, 1e-12);

    const RateTriple o = class2_outer(t);
    EXPECT_LE(o.sum, std::min(t.i12, t.i12s) + 1e-12);
    const double i1 = oracle::mi(j, {"V1"}, {"Y1"}, {"U"}) - oracle::mi(j, {"V1"}, {"Y2"}, {"U"}) +
                      oracle::entropy(j, {"W", "U", "V1"}) - oracle::entropy(j, {"U", "V1"});
    EXPECT_NEAR(t.i1, i1, 1e-10);
  }
}

TEST(Class2Outer, TakesMinima) {
  Class2Terms t{0.5, 0.4, 0.9, 0.3, 0.45, 0.75};
  const RateTriple r = class2_outer(t);
  EXPECT_EQ(r.r1, 0.3);
  EXPECT_EQ(r.r2, 0.4);
  EXPECT_DOUBLE_EQ(r.sum, std::min({0.9, 0.75, 0.5 + 0.45, 0.4 + 0.3}));
  EXPECT_DOUBLE_EQ(class2_tightened_sum(t), 0.7);

  const Class2Terms eq{0.2, 0.3, 0.5, 0.2, 0.3, 0.5};
  EXPECT_DOUBLE_EQ(class2_outer(eq).sum, 0.5);
}

TEST(Class2Inner, WithoutStateOrUReducesToSecrecyForm) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = fixture::random_channel(rng, {1, 2, 2, 2});
    const JointPMF j = induced_joint_class2(c, fixture::random_class2(rng, c, {1, 2, 2}));
    const RateTriple r = class2_inner(j);
    EXPECT_NEAR(r.r1, oracle::mi(j, {"V1"}, {"Y1"}) - oracle::mi(j, {"V1"}, {"Y2"}, {"V2"}), 1e-12);
  }
}

TEST(Class2Inner, ConstantEavesdropperGivesSideInformationForm) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = stateful_y1(rng);
    const JointPMF j = induced_joint_class2(c, fixture::random_class2(rng, c, {1, 3, 2}));
    const RateTriple r = class2_inner(j);
    EXPECT_NEAR(r.r1, oracle::mi(j, {"V1"}, {"Y1"}) - oracle::mi(j, {"W"}, {"V1"}), 1e-12);
  }
}

TEST(Class2Inner, CopiedReceiverGivesZero) {
  const auto c = noiseless();
  const auto s = make_strategy_class2(c.alphabets(), {1, 2, 1}, {1.0}, {0.3, 0.7}, {1, 0, 0, 1});
  EXPECT_NEAR(class2_inner(induced_joint_class2(c, s)).r1, 0.0, 1e-15);
}

TEST(Class2Inner, MarkovViolationThrowsWithResidual) {
  const auto c = noiseless();
  const auto s = make_strategy_class2(c.alphabets(), {2, 1, 2}, {0.5, 0.5}, {1, 0, 0, 1},
                                      {1, 0, 0, 1});
  const JointPMF j = induced_joint_class2(c, s);
  try {
    class2_inner(j);
    FAIL() << "expected ConstraintError";
  } catch (const ConstraintError& e) {
    EXPECT_NE(std::string(e.what()).find("I(U;X|V1)"), std::string::npos) << e.what();
  }
  const Class2Report rep = class2_report(j);
  EXPECT_FALSE(rep.inner.has_value());
  EXPECT_FALSE(rep.inner_error.empty());
}

TEST(Class2Report, DeltaAndTightenedFlag) {
  Rng rng(7);
  int below = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = fixture::random_channel(rng);
    const auto s = sample_strategy(2, c, SearchConfig{}, 100 + trial);
    const Class2Report r = class2_report(induced_joint(c, s));
    EXPECT_TRUE(r.markov.pass);
    ASSERT_TRUE(r.inner.has_value());
    EXPECT_NEAR(r.delta, r.i_w_v1_given_u_v2 + r.i_w_v2_given_u_v1, 1e-10);
    EXPECT_EQ(r.tightened_below_genie_sum, r.tightened_sum <= r.terms.i12s);
    below += r.tightened_below_genie_sum;
  }
  RecordProperty("tightened_below_genie", below);
}

TEST(GpRate, Examples) {
  // |W| = 1, V = X uniform, Y = X.
  const JointPMF copy({{"W", 1}, {"V", 2}, {"Y", 2}}, {0.5, 0, 0, 0.5});
  EXPECT_DOUBLE_EQ(gp_rate(copy), 1.0);
  const JointPMF indep({{"W", 2}, {"V", 2}, {"Y", 2}},
                       {0.1, 0.1, 0.15, 0.15, 0.1, 0.1, 0.15, 0.15});
  EXPECT_NEAR(gp_rate(indep), 0.0, 1e-15);
  EXPECT_THROW(gp_rate(indep, "Q"), NameError);
}

TEST(GpRate, StuckAtCellReachesOneMinusP) {
  // V = X, equal to the stuck value on stuck cells and uniform on transparent ones.
  const auto c = fixture::stuck_at_channel(0.2);
  const auto s = make_strategy_class1(c.alphabets(), {1, 2, 1}, {1, 0, 0, 1, 0.5, 0.5},
                                      {1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1});
  const JointPMF j = induced_joint_class1(c, s);
  const JointPMF m = marginalize(j, {"W", "V1", "Y1"});
  EXPECT_NEAR(gp_rate(m, "V1", "W", "Y1"), 0.8, 1e-12);
  EXPECT_EQ(gp_rate(m, "V1", "W", "Y1"), class1_outer(j).r1);

  // Ignoring the state only reaches the plain channel's mutual information.
  const auto naive = make_strategy_class1(c.alphabets(), {1, 2, 1}, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5},
                                          {1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1});
  EXPECT_LT(class1_outer(induced_joint_class1(c, naive)).r1, 0.8 - 0.1);
}
