#include "bcregions/channel.hpp"

#include <array>
#include <type_traits>

#include "bcregions/entropy_cache.hpp"
#include "bcregions/errors.hpp"

namespace bcr {

namespace {

VariableSpec spec(const char* name, std::size_t card) { return VariableSpec{name, card}; }

std::size_t card_of(const std::vector<VariableSpec>& vars, const char* name) {
  for (const auto& v : vars)
    if (v.name == name) return v.cardinality;
  return 0;
}

void append(std::vector<std::string>& out, std::vector<std::string> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

}  // namespace

Alphabets StateBroadcastChannel::alphabets() const {
  return Alphabets{card_of(state.outputs(), var::W), card_of(kernel.conditioning(), var::X),
                   card_of(kernel.outputs(), var::Y1), card_of(kernel.outputs(), var::Y2)};
}

Factor StateBroadcastChannel::effective_kernel() const {
  if (!kernel_ignores_state) return kernel;
  const Alphabets a = alphabets();
  const std::size_t outs = a.y1 * a.y2;
  std::vector<double> avg(a.x * outs, 0.0);
  const auto pw = state.values();
  const auto k = kernel.values();
  for (std::size_t w = 0; w < a.w; ++w)
    for (std::size_t i = 0; i < a.x * outs; ++i) avg[i] += pw[w] * k[w * a.x * outs + i];
  return Factor(kernel.outputs(), {spec(var::X, a.x)}, std::move(avg));
}

StateBroadcastChannel make_channel(const Alphabets& a, std::vector<double> state,
                                   std::vector<double> kernel, bool kernel_ignores_state) {
  return StateBroadcastChannel{
      Factor({spec(var::W, a.w)}, {}, std::move(state)),
      Factor({spec(var::Y1, a.y1), spec(var::Y2, a.y2)}, {spec(var::W, a.w), spec(var::X, a.x)},
             std::move(kernel)),
      kernel_ignores_state};
}

ValidationReport validate_channel(const StateBroadcastChannel& c, double tolerance) {
  ValidationReport report;
  const auto& st = c.state;
  const auto& k = c.kernel;
  if (st.outputs().size() != 1 || st.outputs()[0].name != var::W || !st.conditioning().empty())
    report.violations.push_back("state must be an unconditioned distribution over W");
  if (k.outputs().size() != 2 || k.outputs()[0].name != var::Y1 || k.outputs()[1].name != var::Y2)
    report.violations.push_back("kernel must produce (Y1, Y2)");
  if (k.conditioning().size() != 2 || k.conditioning()[0].name != var::W ||
      k.conditioning()[1].name != var::X)
    report.violations.push_back("kernel must be conditioned on (W, X)");
  const std::size_t w_state = card_of(st.outputs(), var::W);
  const std::size_t w_kernel = card_of(k.conditioning(), var::W);
  if (w_state != w_kernel)
    report.violations.push_back("cardinality mismatch: state has |W|=" + std::to_string(w_state) +
                                ", kernel expects |W|=" + std::to_string(w_kernel));
  append(report.violations, st.violations(tolerance, "state"));
  append(report.violations, k.violations(tolerance, "kernel"));
  return report;
}

StateBroadcastChannel checked_channel(const StateBroadcastChannel& c, double tolerance) {
  if (auto r = validate_channel(c, tolerance); !r.ok()) {
    std::string msg = "invalid channel:";
    for (const auto& v : r.violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
  auto rebuild = [&](const Factor& f) {
    return Factor::normalized(f.outputs(), f.conditioning(),
                              std::vector<double>(f.values().begin(), f.values().end()), tolerance);
  };
  return StateBroadcastChannel{rebuild(c.state), rebuild(c.kernel), c.kernel_ignores_state};
}

// ---------------------------------------------------------------------------
// strategies

int strategy_class(const Strategy& s) { return std::holds_alternative<StrategyClass1>(s) ? 1 : 2; }

AuxCardinalities cardinalities(const Strategy& s) {
  return std::visit(
      [](const auto& st) {
        AuxCardinalities c;
        c.v1 = card_of(st.aux.outputs(), var::V1);
        c.v2 = card_of(st.aux.outputs(), var::V2);
        if constexpr (std::is_same_v<std::decay_t<decltype(st)>, StrategyClass2>)
          c.u = card_of(st.u.outputs(), var::U);
        return c;
      },
      s);
}

StrategyClass1 make_strategy_class1(const Alphabets& a, AuxCardinalities c, std::vector<double> aux,
                                    std::vector<double> input) {
  return StrategyClass1{
      Factor({spec(var::V1, c.v1), spec(var::V2, c.v2)}, {spec(var::W, a.w)}, std::move(aux)),
      Factor({spec(var::X, a.x)},
             {spec(var::W, a.w), spec(var::V1, c.v1), spec(var::V2, c.v2)}, std::move(input))};
}

StrategyClass2 make_strategy_class2(const Alphabets& a, AuxCardinalities c, std::vector<double> u,
                                    std::vector<double> aux, std::vector<double> input) {
  return StrategyClass2{
      Factor({spec(var::U, c.u)}, {}, std::move(u)),
      Factor({spec(var::V1, c.v1), spec(var::V2, c.v2)}, {spec(var::W, a.w), spec(var::U, c.u)},
             std::move(aux)),
      Factor({spec(var::X, a.x)},
             {spec(var::W, a.w), spec(var::V1, c.v1), spec(var::V2, c.v2)}, std::move(input))};
}

ValidationReport validate_strategy(const Strategy& s, double tolerance) {
  ValidationReport r;
  std::visit(
      [&](const auto& st) {
        if constexpr (std::is_same_v<std::decay_t<decltype(st)>, StrategyClass2>)
          append(r.violations, st.u.violations(tolerance, "u"));
        append(r.violations, st.aux.violations(tolerance, "aux"));
        append(r.violations, st.input.violations(tolerance, "input"));
      },
      s);
  return r;
}

Strategy checked_strategy(const Strategy& s, double tolerance) {
  if (auto r = validate_strategy(s, tolerance); !r.ok()) {
    std::string msg = "invalid strategy:";
    for (const auto& v : r.violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
  auto rebuild = [&](const Factor& f) {
    return Factor::normalized(f.outputs(), f.conditioning(),
                              std::vector<double>(f.values().begin(), f.values().end()), tolerance);
  };
  return std::visit(
      [&](const auto& st) -> Strategy {
        if constexpr (std::is_same_v<std::decay_t<decltype(st)>, StrategyClass2>)
          return StrategyClass2{rebuild(st.u), rebuild(st.aux), rebuild(st.input)};
        else
          return StrategyClass1{rebuild(st.aux), rebuild(st.input)};
      },
      s);
}

JointPMF induced_joint_class1(const StateBroadcastChannel& c, const StrategyClass1& s) {
  const std::array<Factor, 4> chain{c.state, s.aux, s.input, c.effective_kernel()};
  return compose(chain);
}

JointPMF induced_joint_class2(const StateBroadcastChannel& c, const StrategyClass2& s) {
  const std::array<Factor, 5> chain{s.u, c.state, s.aux, s.input, c.effective_kernel()};
  return compose(chain);
}

JointPMF induced_joint(const StateBroadcastChannel& c, const Strategy& s) {
  return std::visit(
      [&](const auto& st) -> JointPMF {
        if constexpr (std::is_same_v<std::decay_t<decltype(st)>, StrategyClass2>)
          return induced_joint_class2(c, st);
        else
          return induced_joint_class1(c, st);
      },
      s);
}

MarkovReport markov_check(EntropyCache& cache, double tolerance) {
  const VarSet u = cache.set({var::U});
  const VarSet x = cache.set({var::X});
  cache.prime(u | x | cache.set({var::V1, var::V2}));
  MarkovReport r;
  r.tolerance = tolerance;
  r.residual_uv1x = cache.mutual_information(u, x, cache.set({var::V1}));
  r.residual_uv2x = cache.mutual_information(u, x, cache.set({var::V2}));
  r.pass = r.residual_uv1x <= tolerance && r.residual_uv2x <= tolerance;
  return r;
}

MarkovReport markov_check(const JointPMF& joint, double tolerance) {
  EntropyCache cache(joint);
  return markov_check(cache, tolerance);
}

}  // namespace bcr
