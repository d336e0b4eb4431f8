#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bcregions/errors.hpp"
#include "cli/commands.hpp"
#include "cli/io.hpp"

using namespace bcr;
using bcr::cli::json;
namespace fs = std::filesystem;

namespace {

const char* kChannel = R"({
  "alphabets": {"W": 2, "X": 2, "Y1": 2, "Y2": 2},
  "state": [0.4, 0.6],
  "kernel": [[[[0.81, 0.09], [0.09, 0.01]], [[0.01, 0.09], [0.09, 0.81]]],
             [[[0.25, 0.25], [0.25, 0.25]], [[0.40, 0.10], [0.10, 0.40]]]]
})";

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "bcregions");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("bcregions_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ParsesBinaryChannel) {
  const auto c = cli::parse_channel(file("c.json", kChannel));
  EXPECT_EQ(c.alphabets(), (Alphabets{2, 2, 2, 2}));
  EXPECT_FALSE(c.kernel_ignores_state);
  const auto again = cli::channel_from_json(cli::channel_to_json(c));
  EXPECT_TRUE(std::equal(c.kernel.values().begin(), c.kernel.values().end(),
                         again.kernel.values().begin()));
}

TEST_F(Cli, KernelSliceErrorNamesIndexAndSum) {
  json doc = json::parse(kChannel);
  doc["kernel"][0][1][0][0] = 0.03;  // slice [w=0][x=1] sums to 1.02
  try {
    cli::channel_from_json(doc);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("[w=0][x=1]"), std::string::npos) << msg;
    EXPECT_NE(msg.find("1.02"), std::string::npos) << msg;
  }
  const Result r = run({"eval", "--channel", file("bad.json", doc.dump()), "--strategy", "x"});
  EXPECT_EQ(r.status, cli::kExitInvalid);
  EXPECT_NE(r.err.find("[w=0][x=1]"), std::string::npos) << r.err;
}

TEST_F(Cli, SchemaErrors) {
  json doc = json::parse(kChannel);
  doc.erase("alphabets");
  EXPECT_THROW(cli::channel_from_json(doc), cli::SchemaError);
  doc = json::parse(kChannel);
  doc["kernel"][1].erase(1);
  try {
    cli::channel_from_json(doc);
    FAIL();
  } catch (const cli::SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("kernel[1]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(cli::read_json(path("missing.json")), cli::IoError);
  EXPECT_THROW(cli::parse_channel(file("junk.json", "{not json")), cli::SchemaError);
  const Result r =
      run({"frontier", "--channel", file("noalph.json", R"({"state": [1]})"), "--class", "1",
           "--bound", "outer", "--out", path("f.csv")});
  EXPECT_EQ(r.status, cli::kExitInvalid);
  EXPECT_NE(r.err.find("alphabets"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({"audit", "--bogus"}).status, cli::kExitUsage);
  EXPECT_EQ(run({}).status, cli::kExitUsage);
  EXPECT_EQ(run({"teleport"}).status, cli::kExitUsage);
  EXPECT_EQ(run({"frontier", "--channel", "c.json", "--class", "3", "--bound", "outer", "--out",
                 "x.csv"})
                .status,
            cli::kExitUsage);
  const Result help = run({"--help"});
  EXPECT_EQ(help.status, cli::kExitOk);
  EXPECT_NE(help.out.find("frontier"), std::string::npos);
}

TEST_F(Cli, AuditReportsJson) {
  const Result r = run({"audit", "--seed", "7", "--trials", "20"});
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_TRUE(doc["pass"].get<bool>());
  EXPECT_LT(doc["max_identity_residual"].get<double>(), 1e-10);
  EXPECT_EQ(doc["trials"], 20);
}

TEST_F(Cli, EvalClass1WithoutStateMatchesInnerIndividualRates) {
  const std::string ch = file("c.json", R"({
    "alphabets": {"W": 1, "X": 2, "Y1": 2, "Y2": 2},
    "state": [1],
    "kernel": [[[[0.72, 0.18], [0.08, 0.02]], [[0.02, 0.08], [0.18, 0.72]]]]})");
  const std::string st = file("s.json", R"({
    "class": 1, "cardinalities": {"V1": 2, "V2": 2},
    "aux": [[[0.1, 0.2], [0.3, 0.4]]],
    "input": [[[[0.9, 0.1], [0.6, 0.4]], [[0.3, 0.7], [0.05, 0.95]]]]})");
  const Result r = run({"eval", "--channel", ch, "--strategy", st});
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["outer"]["eq3"].get<double>(), doc["inner"]["eq15"].get<double>());
  EXPECT_EQ(doc["outer"]["eq4"].get<double>(), doc["inner"]["eq16"].get<double>());
  EXPECT_LE(doc["inner"]["eq17"].get<double>(), doc["outer"]["eq5"].get<double>() + 1e-12);
}

TEST_F(Cli, EvalClass2LabelsEveryTerm) {
  const std::string ch = file("c.json", kChannel);
  const std::string st = file("s.json", R"({
    "class": 2, "cardinalities": {"U": 2, "V1": 2, "V2": 2},
    "u": [0.5, 0.5],
    "aux": [[[[1, 0], [0, 0]], [[0, 0], [0, 1]]], [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]],
    "input": [[[[0.9, 0.1], [0.5, 0.5]], [[0.5, 0.5], [0.2, 0.8]]],
              [[[0.7, 0.3], [0.5, 0.5]], [[0.5, 0.5], [0.1, 0.9]]]]})");
  const Result r = run({"eval", "--channel", ch, "--strategy", st});
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  for (const char* k : {"eq9", "eq10", "eq11", "eq12", "eq13", "eq14"})
    EXPECT_TRUE(doc["terms"].contains(k)) << k;
  for (const char* k : {"eq6", "eq7", "eq8", "eq21"}) EXPECT_TRUE(doc["outer"].contains(k)) << k;
  EXPECT_TRUE(doc["markov"]["pass"].get<bool>());
  ASSERT_TRUE(doc["inner"].is_object());
  EXPECT_TRUE(doc["inner"].contains("eq20"));

  json bad = json::parse(slurp(st));
  // V1 no longer reveals U, and V2 carries it into X
  bad["aux"][0][0] = json::parse("[[0.5, 0.5], [0, 0]]");
  bad["aux"][0][1] = json::parse("[[0, 1], [0, 0]]");
  const Result r2 = run({"eval", "--channel", ch, "--strategy", file("s2.json", bad.dump())});
  ASSERT_EQ(r2.status, cli::kExitOk) << r2.err;
  const json doc2 = json::parse(r2.out);
  EXPECT_FALSE(doc2["markov"]["pass"].get<bool>());
  EXPECT_TRUE(doc2["inner"].is_null());
  EXPECT_FALSE(doc2["inner_error"].get<std::string>().empty());
}

TEST_F(Cli, StrategyShapeMustMatchChannel) {
  const std::string ch = file("c.json", kChannel);
  const std::string st = file("s.json", R"({
    "class": 1, "cardinalities": {"V1": 2, "V2": 1},
    "aux": [[[1.0], [0.0]]],
    "input": [[[[1, 0]], [[0, 1]]]]})");
  const Result r = run({"eval", "--channel", ch, "--strategy", st});
  EXPECT_EQ(r.status, cli::kExitInvalid);
  EXPECT_NE(r.err.find("expected 2"), std::string::npos) << r.err;
}

TEST_F(Cli, FrontierIsByteIdenticalAndRoundTrips) {
  const std::string ch = file("c.json", kChannel);
  const std::vector<std::string> common = {"--channel", ch, "--class", "2", "--bound", "outer",
                                           "--seed", "5", "--directions", "5", "--restarts",
                                           "2", "--iterations", "60"};
  auto with_out = [&](const std::string& out) {
    auto a = common;
    a.insert(a.begin(), "frontier");
    a.push_back("--out");
    a.push_back(out);
    return a;
  };
  ASSERT_EQ(run(with_out(path("a.csv"))).status, cli::kExitOk);
  const Result b = run(with_out(path("b.csv")));
  ASSERT_EQ(b.status, cli::kExitOk) << b.err;
  const std::string csv = slurp(path("a.csv"));
  EXPECT_EQ(csv, slurp(path("b.csv")));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "mu1,mu2,R1,R2,value");

  const auto channel = cli::parse_channel(ch);
  const json side = cli::read_json(path("a.strategies.json"));
  ASSERT_FALSE(side["strategies"].empty());
  for (const auto& s : side["strategies"]) {
    const Strategy st = cli::strategy_from_json(s, channel);
    const RateTriple t = evaluate_strategy(BoundKind::outer, channel, st);
    EXPECT_NEAR(t.r1, s["rates"]["r1"].get<double>(), 1e-12);
    EXPECT_NEAR(t.r2, s["rates"]["r2"].get<double>(), 1e-12);
    EXPECT_NEAR(t.sum, s["rates"]["sum"].get<double>(), 1e-12);
  }
}

TEST_F(Cli, OracleAndCompare) {
  const std::string ch = file("c.json", kChannel);
  const Result o = run({"oracle", "--channel", ch, "--class", "1", "--bound", "outer",
                        "--resolution", "2", "--card-v2", "1", "--out", path("o.csv")});
  ASSERT_EQ(o.status, cli::kExitOk) << o.err;
  EXPECT_GT(json::parse(o.out)["lattice_size"].get<std::uint64_t>(), 1u);
  EXPECT_TRUE(fs::exists(path("o.csv")));

  const Result big = run({"oracle", "--channel", ch, "--class", "2", "--bound", "outer",
                          "--resolution", "12", "--cap", "1000"});
  EXPECT_EQ(big.status, cli::kExitInvalid);

  const Result c = run({"compare", "--channel", ch, "--class", "1", "--seed", "3",
                        "--directions", "5", "--restarts", "2", "--iterations", "60"});
  ASSERT_EQ(c.status, cli::kExitOk) << c.err;
  const json doc = json::parse(c.out);
  EXPECT_TRUE(doc["dominated"].get<bool>());
  EXPECT_EQ(doc["pool_size"], 20);
}

TEST_F(Cli, ThreadsEnvironmentVariable) {
  const std::string ch = file("c.json", kChannel);
  ::setenv("BCREGIONS_THREADS", "many", 1);
  const Result r = run({"compare", "--channel", ch, "--class", "1", "--directions", "2",
                        "--restarts", "1", "--iterations", "5"});
  ::unsetenv("BCREGIONS_THREADS");
  EXPECT_EQ(r.status, cli::kExitInvalid);
  EXPECT_NE(r.err.find("BCREGIONS_THREADS"), std::string::npos);
}

TEST(Format, SeventeenDigitsAndFinite) {
  EXPECT_EQ(cli::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(cli::format_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_THROW(cli::format_double(std::nan("")), std::logic_error);
}
