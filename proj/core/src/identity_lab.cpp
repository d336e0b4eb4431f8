#include "bcregions/identity_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcregions/channel.hpp"
#include "bcregions/entropy_cache.hpp"
#include "bcregions/errors.hpp"

namespace bcr {

namespace {

Names prefix(const Names& seq, std::size_t count) {
  return Names(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(count));
}

Names suffix(const Names& seq, std::size_t from) {
  return Names(seq.begin() + static_cast<std::ptrdiff_t>(from), seq.end());
}

Names concat(Names a, const Names& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string describe(std::initializer_list<std::pair<const char*, std::size_t>> fields) {
  std::string s;
  for (const auto& [k, v] : fields) {
    if (!s.empty()) s += ' ';
    s += k;
    s += '=';
    s += std::to_string(v);
  }
  return s;
}

class Check {
 public:
  Check(std::string name, CheckKind kind, double tolerance) {
    r_.name = std::move(name);
    r_.kind = kind;
    r_.tolerance = tolerance;
    r_.worst = kind == CheckKind::identity ? 0.0 : std::numeric_limits<double>::infinity();
  }

  void record(double value, std::size_t trial, std::uint64_t seed, const std::string& instance) {
    const bool worse = r_.kind == CheckKind::identity ? std::abs(value) > r_.worst || r_.evaluations == 0
                                                      : value < r_.worst;
    if (worse) {
      r_.worst = r_.kind == CheckKind::identity ? std::abs(value) : value;
      r_.worst_trial = trial;
      r_.worst_seed = seed;
      r_.worst_instance = instance;
    }
    ++r_.evaluations;
  }

  CheckResult finish() {
    if (r_.evaluations == 0) r_.worst = 0.0;
    r_.pass = r_.kind == CheckKind::identity ? r_.worst < r_.tolerance : r_.worst >= -r_.tolerance;
    return r_;
  }

 private:
  CheckResult r_;
};

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, std::max(lo, hi))(rng);
}

}  // namespace

// ---------------------------------------------------------------------------

SequenceJoint::SequenceJoint(JointPMF joint, Names xs, Names ys)
    : joint_(std::move(joint)), xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.empty()) throw ArgumentError("sequence joint needs length N >= 1");
  if (xs_.size() != ys_.size())
    throw ArgumentError("sequence joint has unequal lengths " + std::to_string(xs_.size()) +
                        " and " + std::to_string(ys_.size()));
  EntropyCache probe(joint_);
  const VarSet x = probe.set(xs_);
  const VarSet y = probe.set(ys_);
  if (x.intersects(y)) throw ArgumentError("sequence joint tags a variable in both sequences");
}

SequenceJoint random_sequence_joint(Rng& rng, std::size_t length, std::size_t x_letters,
                                    std::size_t y_letters, double zero_probability) {
  std::vector<VariableSpec> vars;
  Names xs, ys;
  for (std::size_t n = 1; n <= length; ++n) {
    xs.push_back("X" + std::to_string(n));
    vars.push_back({xs.back(), x_letters});
  }
  for (std::size_t n = 1; n <= length; ++n) {
    ys.push_back("Y" + std::to_string(n));
    vars.push_back({ys.back(), y_letters});
  }
  return SequenceJoint(random_joint(rng, std::move(vars), zero_probability), std::move(xs),
                       std::move(ys));
}

double csiszar_residual(const SequenceJoint& s) {
  EntropyCache c(s.joint());
  const Names& xs = s.xs();
  const Names& ys = s.ys();
  const std::size_t n_len = s.length();

  double lhs = 0.0;
  double rhs = 0.0;
  for (std::size_t n = 0; n < n_len; ++n) {
    const VarSet x_past = c.set(prefix(xs, n));
    const VarSet y_future = c.set(suffix(ys, n + 1));
    if (!y_future.empty()) lhs += c.mutual_information(y_future, c.set(Names{xs[n]}), x_past);
    if (!x_past.empty()) rhs += c.mutual_information(x_past, c.set(Names{ys[n]}), y_future);
  }
  return std::abs(lhs - rhs);
}

double fano_residual(const JointPMF& joint, const std::string& message,
                     const std::string& estimate) {
  const std::size_t k = joint.variable(message).cardinality;
  if (joint.variable(estimate).cardinality != k)
    throw ArgumentError("fano: '" + message + "' and '" + estimate +
                        "' must share a cardinality");
  if (k < 2) throw ArgumentError("fano: message alphabet needs at least two letters");

  const JointPMF pair = marginalize(joint, {message, estimate});
  const auto mass = pair.mass();
  double pe = 0.0;
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t e = 0; e < k; ++e)
      if (m != e) pe += mass[m * k + e];

  EntropyCache c(pair);
  const double equivocation = c.conditional_entropy(c.set(Names{message}), c.set(Names{estimate}));
  const double bound = binary_entropy(pe) + (pe > 0.0 ? pe * std::log2(double(k - 1)) : 0.0);
  return bound - equivocation;
}

double class2_delta_residual(const JointPMF& joint) {
  EntropyCache c(joint);
  const VarSet u = c.set({var::U}), w = c.set({var::W}), v1 = c.set({var::V1}),
               v2 = c.set({var::V2}), y1 = c.set({var::Y1}), y2 = c.set({var::Y2});
  auto I = [&](VarSet a, VarSet b, VarSet g) { return c.mutual_information(a, b, g); };
  auto H = [&](VarSet a, VarSet g) { return c.conditional_entropy(a, g); };

  const double i1 = I(v1, y1, u) - I(v1, y2, u) + H(w, u | v1);
  const double i2 = I(v2, y2, u) - I(v2, y1, u) + H(w, u | v2);
  const double i1s = I(v1, y1, u | v2) - I(v1, y2, u | v2) + H(w, u | v1 | v2);
  const double i2s = I(v2, y2, u | v1) - I(v2, y1, u | v1) + H(w, u | v1 | v2);
  return std::abs((i1 + i2) - (i1s + i2s) - I(w, v1, u | v2) - I(w, v2, u | v1));
}

// ---------------------------------------------------------------------------

const CheckResult* AuditReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

AuditReport proof_step_suite(std::uint64_t seed, std::size_t trials, AuditSizes sizes) {
  AuditReport report;
  report.seed = seed;
  report.trials = trials;
  report.sizes = sizes;
  if (trials == 0) return report;

  const std::size_t letters = std::max<std::size_t>(2, sizes.max_letters);
  const std::size_t max_len = std::max<std::size_t>(1, sizes.max_length);

  Check chain("chain_rule", CheckKind::identity, kIdentityTolerance);
  Check conditioning("conditioning_reduces_entropy", CheckKind::inequality, kInequalityTolerance);
  Check csiszar("csiszar_sum_identity", CheckKind::identity, kIdentityTolerance);
  Check fano("fano_inequality", CheckKind::inequality, kInequalityTolerance);
  Check delta("class2_delta_identity", CheckKind::identity, kIdentityTolerance);
  Check delta_sign("class2_delta_nonnegative", CheckKind::inequality, kInequalityTolerance);
  Check iid("iid_state_independence", CheckKind::identity, kIdentityTolerance);

  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    Rng rng(trial_seed);
    const double sparsity = (t % 3 == 0) ? 0.3 : 0.0;

    // Sequence pair: chain rule, conditioning, Csiszar.
    {
      const std::size_t n = pick(rng, 1, max_len);
      const std::size_t xl = pick(rng, 2, letters), yl = pick(rng, 2, letters);
      const SequenceJoint s = random_sequence_joint(rng, n, xl, yl, sparsity);
      const std::string inst = describe({{"N", n}, {"|X|", xl}, {"|Y|", yl}});
      EntropyCache c(s.joint());
      const VarSet xall = c.set(s.xs());

      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const VarSet y_past = c.set(prefix(s.ys(), k));
        const VarSet yk = c.set(Names{s.ys()[k]});
        sum += c.mutual_information(xall, yk, y_past);
        conditioning.record(c.entropy(yk) - c.conditional_entropy(yk, y_past | xall), t,
                            trial_seed, inst);
      }
      chain.record(c.mutual_information(xall, c.set(s.ys())) - sum, t, trial_seed, inst);
      csiszar.record(csiszar_residual(s), t, trial_seed, inst);
    }

    // Message / estimate pair.
    {
      const std::size_t k = pick(rng, 2, letters);
      const JointPMF j = random_joint(rng, {{"M", k}, {"Mhat", k}}, sparsity);
      fano.record(fano_residual(j), t, trial_seed, describe({{"k", k}}));
    }

    // Induced Class II joint from arbitrary factors.
    {
      const std::size_t wl = pick(rng, 1, letters), xl = pick(rng, 2, letters);
      const std::size_t ul = pick(rng, 1, letters), v1l = pick(rng, 1, letters),
                        v2l = pick(rng, 1, letters);
      const std::vector<Factor> chain_factors{
          random_factor(rng, {{var::U, ul}}, {}),
          random_factor(rng, {{var::W, wl}}, {}),
          random_factor(rng, {{var::V1, v1l}, {var::V2, v2l}}, {{var::W, wl}, {var::U, ul}}),
          random_factor(rng, {{var::X, xl}}, {{var::W, wl}, {var::V1, v1l}, {var::V2, v2l}}),
          random_factor(rng, {{var::Y1, 2}, {var::Y2, 2}}, {{var::X, xl}, {var::W, wl}}),
      };
      const JointPMF j = compose(chain_factors);
      const std::string inst =
          describe({{"|U|", ul}, {"|W|", wl}, {"|V1|", v1l}, {"|V2|", v2l}, {"|X|", xl}});
      delta.record(class2_delta_residual(j), t, trial_seed, inst);

      EntropyCache c(j);
      const VarSet u = c.set({var::U}), w = c.set({var::W}), v1 = c.set({var::V1}),
                   v2 = c.set({var::V2});
      delta_sign.record(c.mutual_information(w, v1, u | v2) + c.mutual_information(w, v2, u | v1),
                        t, trial_seed, inst);
    }

    // Product-form state sequence with an independent message.
    {
      const std::size_t n = pick(rng, 1, max_len);
      const std::size_t wl = pick(rng, 2, letters), ml = pick(rng, 2, letters);
      std::vector<Factor> factors;
      factors.push_back(Factor({{"M", ml}}, {}, std::vector<double>(ml, 1.0 / double(ml))));
      const auto pw = random_simplex(rng, wl);
      Names ws;
      for (std::size_t i = 1; i <= n; ++i) {
        ws.push_back("W" + std::to_string(i));
        factors.push_back(Factor({{ws.back(), wl}}, {}, pw));
      }
      const JointPMF j = compose(factors);
      EntropyCache c(j);
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const VarSet future = c.set(concat(Names{"M"}, suffix(ws, i + 1)));
        const double v = c.mutual_information(future, c.set(Names{ws[i]}));
        if (std::abs(v) > std::abs(worst)) worst = v;
      }
      iid.record(worst, t, trial_seed, describe({{"N", n}, {"|W|", wl}, {"|M|", ml}}));
    }
  }

  for (Check* c : {&chain, &conditioning, &csiszar, &fano, &delta, &delta_sign, &iid})
    report.checks.push_back(c->finish());

  report.min_inequality_slack = std::numeric_limits<double>::infinity();
  for (const auto& c : report.checks) {
    if (c.kind == CheckKind::identity)
      report.max_identity_residual = std::max(report.max_identity_residual, c.worst);
    else
      report.min_inequality_slack = std::min(report.min_inequality_slack, c.worst);
    report.pass = report.pass && c.pass;
  }
  return report;
}

}  // namespace bcr
