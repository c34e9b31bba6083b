#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dendro/cli.hpp"
#include "dendro/json_io.hpp"

using namespace dendro;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str()};
}

const std::string kS = std::string(DENDRO_DATA_DIR) + "/percolation_s.json";
const std::string kT = std::string(DENDRO_DATA_DIR) + "/percolation_t.json";

long count_of(const std::string& s, const std::string& needle) {
  long n = 0;
  for (size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cli, AssociahedronExample) {
  auto r = run({"w", "assoc", "--n", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"vertices\":3,\"edges\":2,\"euler\":1}\n");
}

TEST(Cli, PercolationDot) {
  auto r = run({"tensor", "percolation", "--s", kS, "--t", kT, "--format", "dot"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
  EXPECT_EQ(count_of(r.out, "[label=\"T"), 14);
  EXPECT_EQ(count_of(r.out, " -> "), 21);
  auto j = Json::parse(run({"tensor", "percolation", "--s", kS, "--t", kT}).out);
  EXPECT_EQ(j["count"], 14);
  EXPECT_EQ(j["covers"].size(), 21u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"tree", "validate", "--tree", R"({"edges":["a","b"],"parent":{"a":"b","b":"a"}})"}).code, 2);
  auto bad = run({"tree", "validate", "--tree", R"({"edges":["a","a"]})"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(Json::parse(bad.out)["error"], "DuplicateEdge");
  EXPECT_EQ(run({"tree", "validate", "--tree", R"({"edges":["a"],"colour":1})"}).code, 2);
  EXPECT_EQ(run({"w", "assoc", "--n", "3", "--unknown"}).code, 2);
  EXPECT_EQ(run({"w", "assoc", "--n", "12"}).code, 3);
  EXPECT_EQ(run({"dset", "kan", "--operad", "As", "--vertices", "9"}).code, 3);
  EXPECT_EQ(run({"operad", "transfer", "--sizes", "3,3", "--arity", "3"}).code, 3);
  EXPECT_EQ(run({"nothing"}).code, 2);
  // a size bound too small to close the table
  auto u = run({"operad", "tabulate", "--presentation", "As", "--arity", "3", "--size", "1"});
  EXPECT_EQ(u.code, 3);
  EXPECT_NE(Json::parse(u.out)["status"], "yes");
}

TEST(Cli, Deterministic) {
  std::vector<std::vector<std::string>> cmds{
      {"tree", "enumerate", "--vertices", "3"},
      {"dset", "nerve", "--operad", "Comm", "--vertices", "2", "--edges", "4"},
      {"w", "cells", "--n", "4"},
      {"signs", "solve", "--vertices", "2", "--dump"},
      {"tensor", "percolation", "--s", kS, "--t", kT}};
  for (const auto& c : cmds) {
    auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, VerdictsCarryBounds) {
  for (const std::string& cmd : {"kan", "strict", "normal"}) {
    auto j = Json::parse(run({"dset", cmd, "--operad", "As", "--vertices", "2", "--edges", "4"}).out);
    EXPECT_EQ(j["within_bound"], "vertices<=2,edges<=4");
  }
  auto e = Json::parse(run({"operad", "equal", "--presentation", "Comm", "--lhs", "mu(x0,x1)", "--rhs", "mu(x1,x0)"}).out);
  EXPECT_EQ(e["verdict"], "yes");
  EXPECT_TRUE(e.contains("within_bound"));
}

TEST(Cli, TreeRoundTrip) {
  auto r = run({"tree", "render", "--tree", kT, "--format", "json"});
  ASSERT_EQ(r.code, 0);
  Tree a = tree_from_json(Json::parse(r.out));
  std::ifstream f(kT);
  Tree b = tree_from_json(Json::parse(f));
  EXPECT_EQ(a, b);
}

TEST(Cli, PresentationRoundTrip) {
  auto r = run({"operad", "bv-tensor", "--p", "As", "--q", "Comm"});
  ASSERT_EQ(r.code, 0);
  auto p = presentation_from_json(Json::parse(r.out));
  EXPECT_TRUE(same_presentation_shape(p, bv_tensor_presentation(as_presentation(), comm_presentation())));
  EXPECT_EQ(presentation_to_json(p).dump() + "\n", r.out);
}

TEST(Cli, DendroidalSetRoundTrip) {
  auto r = run({"dset", "nerve", "--operad", "Comm", "--vertices", "2", "--edges", "4", "--dump"});
  ASSERT_EQ(r.code, 0);
  auto x = dset_from_json(Json::parse(r.out));
  EXPECT_TRUE(validate_presheaf(x).ok);
  EXPECT_EQ(dset_to_json(x).dump() + "\n", r.out);
  std::string path = ::testing::TempDir() + "/comm.json";
  {
    std::ofstream f(path);
    f << r.out;
  }
  auto k = Json::parse(run({"dset", "strict", "--input", path}).out);
  EXPECT_EQ(k["holds"], true);
  auto n = Json::parse(run({"dset", "normal", "--input", path}).out);
  EXPECT_EQ(n["normal"], false);
  // a broken action is rejected on load
  auto j = Json::parse(r.out);
  j["action"].begin().value().begin().value() = 99;
  {
    std::ofstream f(path);
    f << j.dump();
  }
  EXPECT_EQ(run({"dset", "kan", "--input", path}).code, 2);
}

TEST(Cli, FactorizeListsChain) {
  std::string m = R"({"source":{"edges":["x","y","z"],"parent":{"y":"x","z":"y"},"leaves":["z"]},
    "target":{"edges":["r","e","a","b"],"parent":{"e":"r","a":"e","b":"e"},"leaves":["a","b"]},
    "edge_map":{"x":"r","y":"r","z":"e"}})";
  auto j = Json::parse(run({"omega", "factorize", "--map", m}).out);
  EXPECT_EQ(j["recomposes"], true);
  EXPECT_EQ(j["degeneracies"].size(), 1u);
  EXPECT_EQ(j["faces"].size(), 1u);
  EXPECT_EQ(j["faces"][0]["face"]["kind"], "top");
  std::string bad = R"({"source":{"edges":["x","y"],"parent":{"y":"x"},"leaves":["y"]},
    "target":{"edges":["r","e","a","b"],"parent":{"e":"r","a":"e","b":"e"},"leaves":["a","b"]},
    "edge_map":{"x":"r","y":"a"}})";
  EXPECT_EQ(run({"omega", "classify", "--map", bad}).code, 2);
}
