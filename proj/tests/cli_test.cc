#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "searchlab/cli.h"
#include "searchlab/graph.h"

using namespace searchlab;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("searchlab_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_graph(const std::string &name, const Graph &g) {
    const std::string path = (dir_ / name).string();
    std::ofstream(path) << save_edge_list(g);
    return path;
  }
  std::string path(const std::string &name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

int count_lines(const std::string &text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_F(CliTest, GenHexChain) {
  const auto r = run({"gen", "--family", "hex_chain", "--k", "3", "--out", path("g.el")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Graph g = load_edge_list_file(path("g.el"));
  EXPECT_EQ(g.num_nodes(), 21);
  EXPECT_EQ(g.num_edges(), 23u);
}

TEST_F(CliTest, GenCycleHasOneLinePerEdge) {
  const auto r = run({"gen", "--family", "cycle", "--n", "6"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 6);
  EXPECT_EQ(r.out, run({"gen", "--family", "cycle", "--n", "6"}).out);
}

TEST_F(CliTest, GenRandomFamiliesNeedSeed) {
  const auto bad = run({"gen", "--family", "random_tree", "--n", "10"});
  EXPECT_NE(bad.code, 0);
  EXPECT_EQ(nlohmann::json::parse(bad.err)["error"], "invalid_argument");
  const auto a = run({"gen", "--family", "er_connected", "--n", "30", "--avg-deg", "4", "--seed", "3"});
  const auto b = run({"gen", "--family", "er_connected", "--n", "30", "--avg-deg", "4", "--seed", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, CoverageCsv) {
  const std::string g = write_graph("c6.el", cycle_graph(6));
  const auto r = run({"coverage", "--graph", g, "--kind", "walks,searches", "--m-list", "1,2,4",
                      "--trials", "200", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "kind,m,node_frac_mean,edge_frac_mean,trials,seed");
  int walks = 0;
  while (std::getline(in, line)) {
    if (line.starts_with("walks,")) ++walks;
    if (line.starts_with("searches,")) {
      EXPECT_NE(line.find(",1.000000,"), std::string::npos) << line;
      if (line.starts_with("searches,1,"))
        EXPECT_EQ(line, "searches,1,1.000000,0.833333,200,5");
    }
  }
  EXPECT_EQ(walks, 3);
}

TEST_F(CliTest, Bound) {
  auto m_for = [](const std::vector<std::string> &args) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return nlohmann::json::parse(r.out)["m_required"].get<int>();
  };
  EXPECT_EQ(m_for({"bound", "--n", "30", "--C", "1", "--d-max", "3", "--delta", "0.05"}), 16);
  EXPECT_EQ(m_for({"bound", "--n", "7", "--C", "1", "--d-max", "3", "--delta", "0.01"}), 17);
  EXPECT_EQ(m_for({"bound", "--n", "20", "--C", "1.5", "--d-max", "3", "--delta", "0.05"}), 16);
  const int near_one = m_for({"bound", "--n", "1", "--C", "1", "--d-max", "3", "--delta", "0.999"});
  EXPECT_EQ(near_one, 1);
  EXPECT_GT(m_for({"bound", "--n", "50", "--d-max", "3", "--delta", "0.1"}),
            m_for({"bound", "--n", "50", "--d-max", "2", "--delta", "0.1"}));

  const std::string g = write_graph("h.el", hex_chain(2));
  const auto r = run({"bound", "--graph", g, "--delta", "0.1", "--trials", "200", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  for (const char *key : {"C", "n", "d_max", "delta", "m_required", "empirical_success", "trials"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_GE(j["empirical_success"].get<double>(), 0.9);
}

TEST_F(CliTest, WlAndDistinguish) {
  const std::string p3 = write_graph("p3.el", path_graph(3));
  const std::string c3 = write_graph("c3.el", cycle_graph(3));
  const auto r = run({"distinguish", "--graph", p3, "--other", c3, "--test", "wl"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"], "distinguished");
  EXPECT_EQ(j["test"], "wl");
  EXPECT_TRUE(j.contains("rounds_to_stable"));

  const auto w = run({"wl", "--graph", p3});
  ASSERT_EQ(w.code, 0) << w.err;
  const auto h = nlohmann::json::parse(w.out);
  EXPECT_EQ(h["rounds"].back()["partitions"][0],
            nlohmann::json::parse("[[0, 2], [1]]"));

  const auto ww = run({"wwl", "--graph", p3, "--graph", c3, "--length", "2"});
  ASSERT_EQ(ww.code, 0) << ww.err;
  EXPECT_EQ(nlohmann::json::parse(ww.out)["rounds"][0]["partitions"].size(), 2u);
}

TEST_F(CliTest, InvarianceExact) {
  const std::string p3 = write_graph("p3.el", path_graph(3));
  const auto r = run({"invariance", "--graph", p3, "--mode", "exact", "--perm", "2,1,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["discrepancy"], "0");
  EXPECT_EQ(j["pass"], true);
  for (const char *key : {"graph", "perm_seed", "mode", "baseline_tv", "pass"})
    EXPECT_TRUE(j.contains(key)) << key;
}

TEST_F(CliTest, Reconstruct) {
  const std::string g = write_graph("c6.el", cycle_graph(6));
  const auto r = run({"reconstruct", "--graph", g, "--m", "1", "--seed", "2", "--trials", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["s"], 7);
  EXPECT_EQ(j["exact"], true);
  EXPECT_EQ(j["missing_count"], 0);
  EXPECT_EQ(j["spurious_count"], 0);
}

TEST_F(CliTest, StochasticCommandsIgnoreThreadCount) {
  const std::string g = write_graph("h.el", hex_chain(2));
  const std::vector<std::vector<std::string>> commands{
      {"sample", "--graph", g, "--kind", "searches", "--m", "20", "--window", "4", "--seed", "9"},
      {"sample", "--graph", g, "--kind", "walks", "--m", "20", "--window", "3", "--seed", "9"},
      {"coverage", "--graph", g, "--m-list", "1,3", "--trials", "300", "--seed", "9"},
      {"bound", "--graph", g, "--delta", "0.1", "--trials", "300", "--seed", "9"},
      {"covertime", "--graph", g, "--trials", "200", "--seed", "9"},
      {"invariance", "--graph", g, "--mode", "sampled", "--perm-seed", "4", "--trials", "2000",
       "--seed", "9"},
      {"reconstruct", "--graph", g, "--m", "2", "--window", "4", "--trials", "20", "--seed", "9"},
  };
  for (const auto &cmd : commands) {
    std::vector<std::string> one = cmd;
    one.insert(one.end(), {"--threads", "1"});
    std::vector<std::string> many = cmd;
    many.insert(many.end(), {"--threads", "4"});
    const auto a = run(one);
    const auto b = run(many);
    const auto c = run(many);
    ASSERT_EQ(a.code, 0) << cmd[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << cmd[0];
    EXPECT_EQ(b.out, c.out) << cmd[0];
  }
}

TEST_F(CliTest, SeedIsMandatoryForStochasticCommands) {
  const std::string g = write_graph("c6.el", cycle_graph(6));
  for (const std::string verb : {"sample", "coverage", "covertime", "reconstruct"}) {
    const auto r = run({verb, "--graph", g});
    EXPECT_EQ(r.code, 1) << verb;
    EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "usage");
  }
  const auto inv = run({"invariance", "--graph", g, "--mode", "sampled", "--perm-seed", "1"});
  EXPECT_NE(inv.code, 0);
}

TEST_F(CliTest, ErrorsAreJsonOnStderr) {
  std::ofstream(path("loop.el")) << "0 0\n";
  const auto r = run({"wl", "--graph", path("loop.el")});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j["error"], "invalid_graph");

  const auto missing = run({"wl", "--graph", path("nope.el")});
  EXPECT_EQ(nlohmann::json::parse(missing.err)["error"], "io_error");

  std::ofstream(path("split.el")) << "0 1\n2 3\n";
  const auto split = run({"sample", "--graph", path("split.el"), "--seed", "1"});
  EXPECT_EQ(nlohmann::json::parse(split.err)["error"], "disconnected_graph");

  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
}
