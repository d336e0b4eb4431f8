#include "cli/commands.hpp"

#include <cstdlib>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "bcregions/errors.hpp"
#include "cli/io.hpp"

namespace bcr::cli {

namespace {

struct SearchFlags {
  std::size_t directions = 33;
  std::size_t restarts = 16;
  std::size_t iterations = 400;
  std::size_t card_u = 2;
  std::size_t card_v1 = 0;
  std::size_t card_v2 = 0;
  double markov_tol = 1e-9;
  bool no_time_sharing = false;
  long long threads = -1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--directions", directions, "number of sweep directions")->capture_default_str();
    cmd->add_option("--restarts", restarts, "hill-climbing restarts per direction")
        ->capture_default_str();
    cmd->add_option("--iterations", iterations, "moves per restart")->capture_default_str();
    cmd->add_option("--card-u", card_u, "|U| (class 2)")->capture_default_str();
    cmd->add_option("--card-v1", card_v1, "|V1|, 0 = |X||W|+1")->capture_default_str();
    cmd->add_option("--card-v2", card_v2, "|V2|, 0 = |X||W|+1")->capture_default_str();
    cmd->add_option("--markov-tol", markov_tol, "Markov audit tolerance")->capture_default_str();
    cmd->add_flag("--no-time-sharing", no_time_sharing, "staircase frontier instead of hull");
    cmd->add_option("--threads", threads, "worker threads, 0 = auto (default: BCREGIONS_THREADS)");
  }

  SearchConfig config(std::uint64_t seed) const {
    SearchConfig cfg;
    cfg.directions = directions;
    cfg.restarts = restarts;
    cfg.iterations = iterations;
    cfg.cards = {card_u, card_v1, card_v2};
    cfg.markov_tolerance = markov_tol;
    cfg.time_sharing = !no_time_sharing;
    cfg.seed = seed;
    cfg.threads = resolved_threads();
    return cfg;
  }

  std::size_t resolved_threads() const {
    if (threads >= 0) return static_cast<std::size_t>(threads);
    if (const char* env = std::getenv("BCREGIONS_THREADS")) {
      try {
        const long long v = std::stoll(env);
        if (v >= 0) return static_cast<std::size_t>(v);
      } catch (const std::exception&) {
      }
      throw ArgumentError(std::string("BCREGIONS_THREADS must be a non-negative integer, got '") +
                          env + "'");
    }
    return 0;
  }
};

BoundKind parse_bound(const std::string& s) { return s == "inner" ? BoundKind::inner : BoundKind::outer; }

void print(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity bound explorer for state-dependent broadcast channels", "bcregions"};
  app.require_subcommand(1);

  std::string channel_path;
  std::string strategy_path;
  std::string out_path;
  std::uint64_t seed = 1;
  int cls = 1;
  std::string bound = "outer";
  double tolerance = 1e-9;
  SearchFlags search;

  auto* eval = app.add_subcommand("eval", "evaluate every bound term of one strategy");
  eval->add_option("--channel", channel_path, "channel JSON")->required();
  eval->add_option("--strategy", strategy_path, "strategy JSON")->required();
  eval->add_option("--markov-tol", search.markov_tol, "Markov audit tolerance")
      ->capture_default_str();

  auto* frontier_cmd = app.add_subcommand("frontier", "trace a bound frontier by search");
  frontier_cmd->add_option("--channel", channel_path, "channel JSON")->required();
  frontier_cmd->add_option("--class", cls, "strategy class")->check(CLI::IsMember({1, 2}))->required();
  frontier_cmd->add_option("--bound", bound, "inner or outer")
      ->check(CLI::IsMember({"inner", "outer"}))
      ->required();
  frontier_cmd->add_option("--seed", seed, "search seed")->capture_default_str();
  frontier_cmd->add_option("--out", out_path, "CSV output path")->required();
  search.attach(frontier_cmd);

  std::size_t resolution = 4;
  std::size_t input_resolution = 0;
  std::uint64_t cap = 10'000'000;
  std::size_t oracle_u = 1, oracle_v1 = 2, oracle_v2 = 2;
  bool oracle_no_ts = false;
  long long oracle_threads = -1;
  auto* oracle = app.add_subcommand("oracle", "exhaustive lattice frontier for tiny instances");
  oracle->add_option("--channel", channel_path, "channel JSON")->required();
  oracle->add_option("--class", cls, "strategy class")->check(CLI::IsMember({1, 2}))->required();
  oracle->add_option("--bound", bound, "inner or outer")
      ->check(CLI::IsMember({"inner", "outer"}))
      ->required();
  oracle->add_option("--resolution", resolution, "lattice step 1/k for auxiliary factors")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  oracle->add_option("--input-resolution", input_resolution, "lattice for input factors, 0 = same")
      ->capture_default_str();
  oracle->add_option("--cap", cap, "maximum number of lattice strategies")->capture_default_str();
  oracle->add_option("--card-u", oracle_u, "|U| (class 2)")->capture_default_str();
  oracle->add_option("--card-v1", oracle_v1, "|V1|")->capture_default_str();
  oracle->add_option("--card-v2", oracle_v2, "|V2|")->capture_default_str();
  oracle->add_option("--markov-tol", search.markov_tol, "Markov audit tolerance")
      ->capture_default_str();
  oracle->add_flag("--no-time-sharing", oracle_no_ts, "staircase frontier instead of hull");
  oracle->add_option("--threads", oracle_threads, "worker threads, 0 = auto");
  oracle->add_option("--out", out_path, "optional CSV output path");

  std::uint64_t audit_seed = 7;
  std::size_t trials = 200;
  AuditSizes sizes;
  auto* audit = app.add_subcommand("audit", "run the proof-step identity suite");
  audit->add_option("--seed", audit_seed, "suite seed")->capture_default_str();
  audit->add_option("--trials", trials, "random joints per check")->capture_default_str();
  audit->add_option("--max-letters", sizes.max_letters, "largest per-letter alphabet")
      ->check(CLI::Range(2, 4))
      ->capture_default_str();
  audit->add_option("--max-length", sizes.max_length, "longest sequence length")
      ->check(CLI::Range(1, 4))
      ->capture_default_str();

  auto* compare = app.add_subcommand("compare", "inner vs outer frontier on a shared pool");
  compare->add_option("--channel", channel_path, "channel JSON")->required();
  compare->add_option("--class", cls, "strategy class")->check(CLI::IsMember({1, 2}))->required();
  compare->add_option("--seed", seed, "search seed")->capture_default_str();
  compare->add_option("--tol", tolerance, "dominance tolerance")->capture_default_str();
  search.attach(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "bcregions: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (eval->parsed()) {
      const auto channel = parse_channel(channel_path);
      const auto strategy = parse_strategy(strategy_path, channel);
      print(out, eval_to_json(channel, strategy, search.markov_tol));
      return kExitOk;
    }
    if (frontier_cmd->parsed()) {
      const auto channel = parse_channel(channel_path);
      const SearchConfig cfg = search.config(seed);
      const auto f = frontier(cls, parse_bound(bound), channel, cfg);
      const std::filesystem::path csv = out_path;
      write_text(csv, frontier_csv(f));
      write_text(sidecar_path(csv), frontier_sidecar(f, channel, cfg).dump(2) + "\n");
      json summary = frontier_to_json(f);
      summary["csv"] = csv.string();
      summary["sidecar"] = sidecar_path(csv).string();
      print(out, summary);
      return kExitOk;
    }
    if (oracle->parsed()) {
      const auto channel = parse_channel(channel_path);
      SearchConfig cfg;
      cfg.cards = {oracle_u, oracle_v1, oracle_v2};
      cfg.grid_resolution = resolution;
      cfg.input_resolution = input_resolution;
      cfg.grid_cap = cap;
      cfg.markov_tolerance = search.markov_tol;
      cfg.time_sharing = !oracle_no_ts;
      search.threads = oracle_threads;
      cfg.threads = search.resolved_threads();
      const auto f = grid_oracle(cls, parse_bound(bound), channel, cfg);
      json doc = frontier_to_json(f);
      doc["lattice_size"] = grid_size(cls, channel, cfg);
      if (!out_path.empty()) {
        write_text(out_path, frontier_csv(f));
        doc["csv"] = out_path;
      }
      print(out, doc);
      return kExitOk;
    }
    if (audit->parsed()) {
      const AuditReport r = proof_step_suite(audit_seed, trials, sizes);
      print(out, audit_to_json(r));
      return r.pass ? kExitOk : kExitFailure;
    }
    if (compare->parsed()) {
      const auto channel = parse_channel(channel_path);
      const auto cmp = compare_bounds(cls, channel, search.config(seed), tolerance);
      print(out, comparison_to_json(cmp));
      return cmp.report.dominated ? kExitOk : kExitFailure;
    }
  } catch (const ValidationError& e) {
    err << "bcregions: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const SchemaError& e) {
    err << "bcregions: schema error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const IoError& e) {
    err << "bcregions: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const SizeError& e) {
    err << "bcregions: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ConstraintError& e) {
    err << "bcregions: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "bcregions: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "bcregions: internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace bcr::cli
