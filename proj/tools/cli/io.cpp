#include "cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bcregions/errors.hpp"

namespace bcr::cli {

namespace {

std::size_t positive_int(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw SchemaError("missing member \"" + where + "." + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw SchemaError("\"" + where + "." + key + "\" must be a positive integer");
  return v.get<std::size_t>();
}

const json& member(const json& doc, const char* key) {
  if (!doc.is_object()) throw SchemaError("document must be a JSON object");
  if (!doc.contains(key)) throw SchemaError(std::string("missing member \"") + key + "\"");
  return doc.at(key);
}

// Flattens a nested array of the given shape row-major.
void flatten(const json& node, const std::vector<std::size_t>& shape, std::size_t depth,
             const std::string& path, std::vector<double>& out) {
  if (depth == shape.size()) {
    if (!node.is_number()) throw SchemaError(path + " must be a number");
    out.push_back(node.get<double>());
    return;
  }
  if (!node.is_array()) throw SchemaError(path + " must be an array");
  if (node.size() != shape[depth])
    throw SchemaError(path + " has " + std::to_string(node.size()) + " entries, expected " +
                      std::to_string(shape[depth]));
  for (std::size_t i = 0; i < node.size(); ++i)
    flatten(node[i], shape, depth + 1, path + "[" + std::to_string(i) + "]", out);
}

std::vector<double> nested(const json& doc, const char* key, const std::vector<std::size_t>& shape) {
  std::vector<double> out;
  flatten(member(doc, key), shape, 0, key, out);
  return out;
}

json unflatten(std::span<const double> values, const std::vector<std::size_t>& shape,
               std::size_t depth = 0) {
  if (depth == shape.size()) return values[0];
  json arr = json::array();
  std::size_t block = 1;
  for (std::size_t k = depth + 1; k < shape.size(); ++k) block *= shape[k];
  for (std::size_t i = 0; i < shape[depth]; ++i)
    arr.push_back(unflatten(values.subspan(i * block, block), shape, depth + 1));
  return arr;
}

void throw_violations(const char* what, const ValidationReport& r) {
  std::string msg = std::string("invalid ") + what + ":";
  for (const auto& v : r.violations) msg += "\n  " + v;
  throw ValidationError(msg);
}

void require_finite(const json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>()))
    throw std::logic_error("non-finite number in output");
  if (j.is_structured())
    for (const auto& child : j) require_finite(child);
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::logic_error("non-finite number in output");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// channels and strategies

StateBroadcastChannel channel_from_json(const json& doc) {
  const json& alph = member(doc, "alphabets");
  if (!alph.is_object()) throw SchemaError("\"alphabets\" must be an object");
  Alphabets a;
  a.w = positive_int(alph, "W", "alphabets");
  a.x = positive_int(alph, "X", "alphabets");
  a.y1 = positive_int(alph, "Y1", "alphabets");
  a.y2 = positive_int(alph, "Y2", "alphabets");

  auto state = nested(doc, "state", {a.w});
  auto kernel = nested(doc, "kernel", {a.w, a.x, a.y1, a.y2});
  bool ignores = false;
  if (doc.contains("kernel_ignores_state")) {
    if (!doc["kernel_ignores_state"].is_boolean())
      throw SchemaError("\"kernel_ignores_state\" must be a boolean");
    ignores = doc["kernel_ignores_state"].get<bool>();
  }
  const StateBroadcastChannel raw = make_channel(a, std::move(state), std::move(kernel), ignores);
  if (auto r = validate_channel(raw); !r.ok()) throw_violations("channel", r);
  return checked_channel(raw);
}

StateBroadcastChannel parse_channel(const std::filesystem::path& path) {
  return channel_from_json(read_json(path));
}

json channel_to_json(const StateBroadcastChannel& c) {
  const Alphabets a = c.alphabets();
  return {{"alphabets", {{"W", a.w}, {"X", a.x}, {"Y1", a.y1}, {"Y2", a.y2}}},
          {"state", unflatten(c.state.values(), {a.w})},
          {"kernel", unflatten(c.kernel.values(), {a.w, a.x, a.y1, a.y2})},
          {"kernel_ignores_state", c.kernel_ignores_state}};
}

Strategy strategy_from_json(const json& doc, const StateBroadcastChannel& c) {
  const json& cls_node = member(doc, "class");
  if (!cls_node.is_number_integer() || (cls_node.get<int>() != 1 && cls_node.get<int>() != 2))
    throw SchemaError("\"class\" must be 1 or 2");
  const int cls = cls_node.get<int>();
  const json& cards_node = member(doc, "cardinalities");
  if (!cards_node.is_object()) throw SchemaError("\"cardinalities\" must be an object");

  AuxCardinalities cards;
  cards.v1 = positive_int(cards_node, "V1", "cardinalities");
  cards.v2 = positive_int(cards_node, "V2", "cardinalities");
  const Alphabets a = c.alphabets();

  Strategy s = [&]() -> Strategy {
    if (cls == 1) {
      return make_strategy_class1(a, cards, nested(doc, "aux", {a.w, cards.v1, cards.v2}),
                                  nested(doc, "input", {a.w, cards.v1, cards.v2, a.x}));
    }
    cards.u = positive_int(cards_node, "U", "cardinalities");
    return make_strategy_class2(a, cards, nested(doc, "u", {cards.u}),
                                nested(doc, "aux", {a.w, cards.u, cards.v1, cards.v2}),
                                nested(doc, "input", {a.w, cards.v1, cards.v2, a.x}));
  }();
  if (auto r = validate_strategy(s); !r.ok()) throw_violations("strategy", r);
  return checked_strategy(s);
}

Strategy parse_strategy(const std::filesystem::path& path, const StateBroadcastChannel& c) {
  return strategy_from_json(read_json(path), c);
}

json strategy_to_json(const Strategy& s, const Alphabets& a) {
  const AuxCardinalities cards = cardinalities(s);
  json doc;
  doc["class"] = strategy_class(s);
  if (const auto* s1 = std::get_if<StrategyClass1>(&s)) {
    doc["cardinalities"] = {{"V1", cards.v1}, {"V2", cards.v2}};
    doc["aux"] = unflatten(s1->aux.values(), {a.w, cards.v1, cards.v2});
    doc["input"] = unflatten(s1->input.values(), {a.w, cards.v1, cards.v2, a.x});
  } else {
    const auto& s2 = std::get<StrategyClass2>(s);
    doc["cardinalities"] = {{"U", cards.u}, {"V1", cards.v1}, {"V2", cards.v2}};
    doc["u"] = unflatten(s2.u.values(), {cards.u});
    doc["aux"] = unflatten(s2.aux.values(), {a.w, cards.u, cards.v1, cards.v2});
    doc["input"] = unflatten(s2.input.values(), {a.w, cards.v1, cards.v2, a.x});
  }
  return doc;
}

// ---------------------------------------------------------------------------
// reports

json rates_to_json(const RateTriple& t) { return {{"r1", t.r1}, {"r2", t.r2}, {"sum", t.sum}}; }

json eval_to_json(const StateBroadcastChannel& c, const Strategy& s, double markov_tolerance) {
  const JointPMF joint = induced_joint(c, s);
  json out;
  out["class"] = strategy_class(s);
  out["kernel_ignores_state"] = c.kernel_ignores_state;
  if (strategy_class(s) == 1) {
    const Class1Report r = class1_report(joint);
    out["terms"] = {{"I(V1;Y1)", r.i_v1_y1}, {"I(V2;Y2)", r.i_v2_y2}, {"I(W;V1)", r.i_w_v1},
                    {"I(W;V2)", r.i_w_v2},   {"I(V1;V2)", r.i_v1_v2}, {"I(V1,V2;W)", r.i_v1v2_w}};
    out["outer"] = {{"eq3", r.outer.r1}, {"eq4", r.outer.r2}, {"eq5", r.outer.sum}};
    out["inner"] = {{"eq15", r.inner.r1}, {"eq16", r.inner.r2}, {"eq17", r.inner.sum}};
  } else {
    const Class2Report r = class2_report(joint, markov_tolerance);
    out["terms"] = {{"eq9", r.terms.i1},   {"eq10", r.terms.i2},  {"eq11", r.terms.i12},
                    {"eq12", r.terms.i1s}, {"eq13", r.terms.i2s}, {"eq14", r.terms.i12s}};
    out["outer"] = {{"eq6", r.outer.r1},
                    {"eq7", r.outer.r2},
                    {"eq8", r.plain_sum},
                    {"eq21", r.tightened_sum},
                    {"sum_bound", r.outer.sum}};
    out["eq21_at_most_eq14"] = r.tightened_below_genie_sum;
    out["delta"] = {{"value", r.delta},
                    {"I(W;V1|U,V2)", r.i_w_v1_given_u_v2},
                    {"I(W;V2|U,V1)", r.i_w_v2_given_u_v1}};
    out["markov"] = {{"I(U;X|V1)", r.markov.residual_uv1x},
                     {"I(U;X|V2)", r.markov.residual_uv2x},
                     {"tolerance", r.markov.tolerance},
                     {"pass", r.markov.pass}};
    if (r.inner) {
      out["inner"] = {{"eq18", r.inner->r1}, {"eq19", r.inner->r2}, {"eq20", r.inner->sum}};
    } else {
      out["inner"] = nullptr;
      out["inner_error"] = r.inner_error;
    }
  }
  require_finite(out);
  return out;
}

json audit_to_json(const AuditReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"kind", c.kind == CheckKind::identity ? "identity" : "inequality"},
                      {"tolerance", c.tolerance},
                      {"evaluations", c.evaluations},
                      {"worst", c.worst},
                      {"worst_trial", c.worst_trial},
                      {"worst_seed", c.worst_seed},
                      {"worst_instance", c.worst_instance},
                      {"pass", c.pass}});
  }
  json out = {{"seed", r.seed},
              {"trials", r.trials},
              {"sizes", {{"max_letters", r.sizes.max_letters}, {"max_length", r.sizes.max_length}}},
              {"pass", r.pass},
              {"max_identity_residual", r.max_identity_residual},
              {"min_inequality_slack", r.min_inequality_slack},
              {"checks", checks}};
  require_finite(out);
  return out;
}

json frontier_to_json(const FrontierPolyline& f) {
  json verts = json::array();
  for (const auto& v : f.vertices) {
    verts.push_back({{"R1", v.r1},
                     {"R2", v.r2},
                     {"mu1", v.direction.mu1},
                     {"mu2", v.direction.mu2},
                     {"value", v.value},
                     {"strategy", v.strategy}});
  }
  json out = {{"class", f.strategy_class},
              {"bound", to_string(f.kind)},
              {"time_sharing", f.hulled},
              {"max_R1", f.max_r1()},
              {"max_R2", f.max_r2()},
              {"vertices", verts}};
  require_finite(out);
  return out;
}

json comparison_to_json(const BoundComparison& cmp) {
  json checks = json::array();
  for (const auto& c : cmp.report.checks)
    checks.push_back({{"R1", c.r1}, {"R2", c.r2}, {"margin", c.margin}, {"dominated", c.dominated}});
  json out = {{"class", cmp.inner.strategy_class},
              {"pool_size", cmp.pool_size},
              {"tolerance", cmp.report.tolerance},
              {"dominated", cmp.report.dominated},
              {"min_margin", cmp.report.min_margin},
              {"inner", frontier_to_json(cmp.inner)},
              {"outer", frontier_to_json(cmp.outer)},
              {"checks", checks}};
  require_finite(out);
  return out;
}

std::string frontier_csv(const FrontierPolyline& f) {
  std::ostringstream csv;
  csv << "mu1,mu2,R1,R2,value\n";
  for (const auto& v : f.vertices) {
    csv << format_double(v.direction.mu1) << ',' << format_double(v.direction.mu2) << ','
        << format_double(v.r1) << ',' << format_double(v.r2) << ',' << format_double(v.value)
        << '\n';
  }
  return csv.str();
}

json frontier_sidecar(const FrontierPolyline& f, const StateBroadcastChannel& c,
                      const SearchConfig& cfg) {
  json doc = frontier_to_json(f);
  const AuxCardinalities cards = f.strategies.empty() ? AuxCardinalities{}
                                                      : cardinalities(f.strategies.front());
  doc["seed"] = cfg.seed;
  doc["config"] = {{"directions", cfg.directions},
                   {"restarts", cfg.restarts},
                   {"iterations", cfg.iterations},
                   {"initial_scale", cfg.initial_scale},
                   {"final_scale", cfg.final_scale},
                   {"markov_tolerance", cfg.markov_tolerance},
                   {"cardinalities", {{"U", cards.u}, {"V1", cards.v1}, {"V2", cards.v2}}}};
  json strategies = json::array();
  const Alphabets a = c.alphabets();
  for (std::size_t i = 0; i < f.strategies.size(); ++i) {
    json s = strategy_to_json(f.strategies[i], a);
    s["rates"] = rates_to_json(f.strategy_rates[i]);
    strategies.push_back(std::move(s));
  }
  doc["strategies"] = std::move(strategies);
  require_finite(doc);
  return doc;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p.replace_extension(".strategies.json");
  return p;
}

}  // namespace bcr::cli
