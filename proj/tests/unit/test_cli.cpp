#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "expdecomp/errors.hpp"
#include "expdecomp/graph.hpp"

using namespace expdecomp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "expdecomp");
  std::ostringstream out, err;
  Outcome r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("expdecomp_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string drop_column(const std::string& csv, std::size_t col) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    std::istringstream ls(line);
    std::string cell;
    std::size_t i = 0;
    while (std::getline(ls, cell, ','))
      if (i++ != col) out += cell + ",";
    out += "\n";
  }
  return out;
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"gen", "--spec", "nope:3"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"decompose", "--spec", "clique:5", "--epsilon", "1.5"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"lowdiam", "--spec", "clique:5", "--beta", "2"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--spec", "clique:5"}).code, cli::kExitUsage);
}

TEST(Cli, SeedResolution) {
  EXPECT_EQ(cli::resolve_seed("7", true, 3), 7u);
  EXPECT_EQ(cli::resolve_seed(nullptr, true, 3), 3u);
  EXPECT_EQ(cli::resolve_seed(nullptr, false, 3), 0u);
  EXPECT_THROW(cli::resolve_seed("x7", false, 0), ParseError);
}

TEST(Cli, GenWritesReadableEdgeList) {
  const Outcome r = invoke({"gen", "--spec", "clique:4"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream in(r.out);
  const Graph g = read_graph(in);
  EXPECT_EQ(g.num_vertices(), 4u);
  EXPECT_EQ(g.num_edges(), 6u);
}

TEST(Cli, DecomposeThenVerifyAndTamper) {
  const fs::path graph = temp_file("g.txt");
  const fs::path out = temp_file("d.json");
  const fs::path bad = temp_file("bad.json");
  ASSERT_EQ(invoke({"gen", "--spec", "chain:3:6:1", "--out", graph.string()}).code, 0);
  const Outcome d = invoke({"decompose", "--graph", graph.string(), "--seed", "3", "--mode", "accounted", "--out",
                     out.string()});
  ASSERT_EQ(d.code, cli::kExitOk) << d.err;
  nlohmann::json js;
  std::ifstream(out) >> js;
  EXPECT_TRUE(js.contains("components"));
  EXPECT_TRUE(js.contains("config"));
  EXPECT_EQ(js["seed"], 3);
  EXPECT_EQ(invoke({"verify", "--graph", graph.string(), "--input", out.string()}).code, cli::kExitOk);

  // drop a vertex from the partition
  js["components"][0].erase(js["components"][0].size() - 1);
  std::ofstream(bad) << js.dump();
  EXPECT_EQ(invoke({"verify", "--graph", graph.string(), "--input", bad.string()}).code, cli::kExitFail);

  std::ofstream(bad) << "{not json";
  EXPECT_EQ(invoke({"verify", "--graph", graph.string(), "--input", bad.string()}).code, cli::kExitUsage);
  fs::remove(graph);
  fs::remove(out);
  fs::remove(bad);
}

TEST(Cli, TrianglesVerified) {
  const Outcome r = invoke({"triangles", "--spec", "gnp:30:0.3", "--seed", "2", "--mode", "accounted", "--verify"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto js = nlohmann::json::parse(r.out);
  EXPECT_TRUE(js["verified"].get<bool>());
  EXPECT_EQ(js["count"].get<std::size_t>(), js["triangles"].size());
}

TEST(Cli, EnvironmentSeedOverridesFlag) {
  ::setenv("EXPANDER_SEED", "41", 1);
  const Outcome a = invoke({"lowdiam", "--spec", "grid:5x5", "--seed", "1"});
  const Outcome b = invoke({"lowdiam", "--spec", "grid:5x5", "--seed", "2"});
  ::unsetenv("EXPANDER_SEED");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("41"), std::string::npos);
}

TEST(Cli, BenchDeterministicCsv) {
  const std::vector<std::string> args{"bench", "--specs", "barbell:6:1", "grid:4x4", "--seed", "5", "--trials", "2",
                                      "--mode", "accounted"};
  const Outcome a = invoke(args);
  const Outcome b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out.rfind("# config", 0), 0u);
  // wall_ms is the last of ten columns
  EXPECT_EQ(drop_column(a.out, 9), drop_column(b.out, 9));
  std::istringstream in(a.out);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 9) << line;
    ++rows;
  }
  EXPECT_GT(rows, 4u);
}

TEST(Cli, SparseCutJson) {
  const Outcome r = invoke({"sparse-cut", "--spec", "barbell:8:1", "--phi", "0.02", "--seed", "1", "--mode", "accounted"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto js = nlohmann::json::parse(r.out);
  EXPECT_TRUE(js.contains("rounds"));
  EXPECT_TRUE(js.contains("config"));
}
