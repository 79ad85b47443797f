#include "ftvn/cli.h"

#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

namespace ftvn::cli {
namespace {

using nlohmann::json;

struct Outcome {
  int code;
  json body;
  std::string raw;
};

Outcome call(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  Outcome o{code, json(), out.str()};
  if (!o.raw.empty() && o.raw.front() == '{') o.body = json::parse(o.raw);
  return o;
}

std::string strip_elapsed(const std::string& raw) {
  json j = json::parse(raw);
  j["diagnostics"].erase("elapsed_ms");
  return j.dump();
}

TEST(Cli, LambdaOfSwapMatrix) {
  const Outcome o = call({"lambda", "--system", "sym:2", "--input",
                          R"({"point":{"kind":"symmetric","data":[[0,1],[1,0]]}})"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.body["status"], "ok");
  EXPECT_EQ(o.body["command"], "lambda");
  EXPECT_EQ(o.body["system"], "sym:2");
  EXPECT_EQ(o.body["result"], json::parse("[1.0,-1.0]"));
  EXPECT_TRUE(o.body["diagnostics"].contains("elapsed_ms"));
  EXPECT_EQ(o.body["diagnostics"]["seed"], 0);
  EXPECT_EQ(o.body["diagnostics"]["tol"], 1e-8);
}

TEST(Cli, CommuteDiagonals) {
  const Outcome o = call({"commute", "--system", "sym:2", "--input",
                          R"({"x":{"kind":"symmetric","data":[[2,0],[0,1]]},
                              "y":{"kind":"symmetric","data":[[5,0],[0,3]]}})"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.body["result"], true);
}

TEST(Cli, AxiomsSorted) {
  const Outcome o = call({"axioms", "--system", "sorted:4", "--samples", "1000", "--seed", "7"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.body["status"], "ok");
  for (const char* k : {"a1_max_violation", "a2_max_violation", "a3_max_violation"}) {
    EXPECT_LE(o.body["result"][k].get<double>(), 1e-12);
  }
  EXPECT_EQ(o.body["result"]["pass"], true);
  EXPECT_EQ(o.body["result"]["samples"], 1000);
}

TEST(Cli, DeterministicModuloElapsed) {
  const std::vector<std::string> args{"transfer-suite", "--system", "sym:2", "--seed", "3",
                                      "--input",
                                      R"({"set":{"variant":"maj_hull","generators":[[1,0]]},"combos":200,"probes":50})"};
  const Outcome a = call(args), b = call(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(strip_elapsed(a.raw), strip_elapsed(b.raw));
}

TEST(Cli, StdinInput) {
  const Outcome o = call({"lambda", "--system", "norm:2"}, R"({"point":{"kind":"vector","data":[3,4]}})");
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.body["result"], json::parse("[5.0]"));
}

TEST(Cli, PairPoints) {
  const Outcome o = call({"lambda", "--system", "soc:2", "--input",
                          R"({"point":{"kind":"pair","data":[{"kind":"vector","data":[-1]},{"kind":"vector","data":[3,4]}]}})"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.body["result"], json::parse("[-1.0,5.0]"));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, kUsage);
  EXPECT_EQ(call({"lambda", "--tol", "-1"}).code, kUsage);
  const Outcome unknown = call({"frobnicate", "--system", "sym:2"});
  EXPECT_EQ(unknown.code, kUsage);
  EXPECT_EQ(unknown.body["status"], "error");
  EXPECT_EQ(unknown.body["error"]["pointer"], "/command");
}

TEST(Cli, SchemaPointers) {
  const Outcome missing = call({"align", "--system", "sorted:3", "--input",
                                R"({"c":{"kind":"vector","data":[1,2,3]}})"});
  EXPECT_EQ(missing.code, kUsage);
  EXPECT_EQ(missing.body["error"]["pointer"], "/q");

  const Outcome bad = call({"lambda", "--system", "sym:2", "--input",
                            R"({"point":{"kind":"symmetric","data":[[0,1],[1,"x"]]}})"});
  EXPECT_EQ(bad.code, kUsage);
  EXPECT_EQ(bad.body["error"]["pointer"], "/point/data/1/1");

  const Outcome kind = call({"lambda", "--system", "sym:2", "--input",
                             R"({"point":{"kind":"vector","data":[1,2,3]}})"});
  EXPECT_EQ(kind.body["error"]["pointer"], "/point/kind");

  const Outcome set = call({"support", "--system", "sorted:2", "--input",
                            R"({"set":{"variant":"blob"},"c":{"kind":"vector","data":[1,2]}})"});
  EXPECT_EQ(set.code, kUsage);
  EXPECT_EQ(set.body["error"]["pointer"], "/set/variant");

  const Outcome sys = call({"lambda", "--system", "sorted3", "--input", "{}"});
  EXPECT_EQ(sys.code, kUsage);
  EXPECT_EQ(sys.body["error"]["pointer"], "/system");

  const Outcome json_err = call({"lambda", "--system", "sorted:3", "--input", "{not json"});
  EXPECT_EQ(json_err.code, kUsage);
}

TEST(Cli, DomainAndCapabilityErrors) {
  const Outcome asym = call({"lambda", "--system", "sym:2", "--input",
                             R"({"point":{"kind":"symmetric","data":[[0,1],[1.5,0]]}})"});
  EXPECT_EQ(asym.code, kDomain);
  EXPECT_EQ(asym.body["status"], "error");
  const Outcome range = call({"align", "--system", "sorted:2", "--input",
                              R"({"c":{"kind":"vector","data":[1,2]},"q":[0,1]})"});
  EXPECT_EQ(range.code, kDomain);
  const Outcome pre = call({"subdiff-construct", "--system", "sym:2", "--input",
                            R"({"fn":{"fn":"max"},"xbar":{"kind":"symmetric","data":[[2,0],[0,0]]},"v":[0,1]})"});
  EXPECT_EQ(pre.code, kDomain);
  EXPECT_EQ(pre.body["error"]["type"], "precondition");
  EXPECT_EQ(call({"axioms", "--system", "sym:65"}).code, kCapability);
  const Outcome big = call({"oracle-perms-support", "--input",
                            R"({"c":[1,2,3,4,5,6,7,8,9],"u":[1,2,3,4,5,6,7,8,9]})"});
  EXPECT_EQ(big.code, kCapability);
}

TEST(Cli, ConjugateAndSubdiff) {
  const Outcome inf = call({"conjugate", "--system", "sym:2", "--input",
                            R"({"fn":{"fn":"max"},"z":{"kind":"symmetric","data":[[2,0],[0,0]]}})"});
  ASSERT_EQ(inf.code, 0);
  EXPECT_EQ(inf.body["result"]["value"], "inf");
  EXPECT_TRUE(inf.body["result"]["maximizer"].is_null());

  const Outcome q = call({"conjugate", "--system", "sorted:3", "--input",
                          R"({"fn":{"fn":"quadratic"},"domain":{"variant":"maj_hull","generators":[[2,1,0]]},
                              "z":{"kind":"vector","data":[1,1,1]}})"});
  ASSERT_EQ(q.code, 0);
  EXPECT_NEAR(q.body["result"]["value"].get<double>(), 1.5, 1e-14);

  const Outcome s = call({"subdiff-check", "--system", "sym:2", "--input",
                          R"({"fn":{"fn":"max"},"xbar":{"kind":"symmetric","data":[[2,0],[0,0]]},
                              "y":{"kind":"symmetric","data":[[1,0],[0,0]]}})"});
  EXPECT_EQ(s.body["result"]["holds"], true);
  const Outcome c = call({"subdiff-construct", "--system", "sorted:3", "--input",
                          R"({"fn":{"fn":"sum_k_largest","k":2},"xbar":{"kind":"vector","data":[3,2,1]},"v":[1,1,0]})"});
  EXPECT_EQ(c.body["result"]["data"], json::parse("[1.0,1.0,0.0]"));
}

TEST(Cli, OtherCommands) {
  EXPECT_EQ(call({"majorize", "--system", "sorted:3", "--input", R"({"u":[1,1,0],"v":[2,0,0]})"})
                .body["result"]["holds"],
            true);
  EXPECT_EQ(call({"mu", "--system", "soc:3", "--input", R"({"w":[1,-2]})"}).body["result"],
            json::parse("[1.0,2.0]"));
  EXPECT_EQ(call({"in-range", "--system", "sorted:3", "--input", R"({"w":[0,1,2]})"}).body["result"], false);
  EXPECT_EQ(call({"member", "--system", "norm:2", "--input",
                  R"({"set":{"variant":"interval","lo":-1,"hi":0,"lo_closed":false},"x":{"kind":"vector","data":[0,0]}})"})
                .body["result"],
            true);
  EXPECT_EQ(call({"support", "--system", "sorted:3", "--input",
                  R"({"set":{"variant":"maj_hull","generators":[[2,1,0]]},"c":{"kind":"vector","data":[0,1,1]}})"})
                .body["result"]["value"],
            3.0);
  const Outcome e = call({"extreme", "--system", "sorted:3", "--input",
                          R"({"set":{"variant":"maj_hull","generators":[[2,1,0]]},"candidate":{"kind":"vector","data":[1,1,1]}})"});
  EXPECT_EQ(e.body["result"]["refuted"], true);
  const Outcome v = call({"extreme", "--system", "sorted:3", "--input",
                          R"({"set":{"variant":"maj_hull","generators":[[2,1,0]]},"candidate":{"kind":"vector","data":[2,1,0]}})"});
  EXPECT_EQ(v.body["result"]["certified_extreme"], true);
  const Outcome m = call({"minkowski", "--system", "sorted:2", "--input",
                          R"({"q1":{"variant":"maj_hull","generators":[[1,0]]},"q2":{"variant":"maj_hull","generators":[[2,0]]},"trials":50})"});
  EXPECT_EQ(m.body["result"]["pass"], true);
  const Outcome d = call({"davis-probe", "--system", "sym:2", "--input",
                          R"({"fn":{"fn":"min"},"x":{"kind":"symmetric","data":[[1,0],[0,0]]},
                              "y":{"kind":"symmetric","data":[[0,0],[0,1]]},"t":0.5})"});
  EXPECT_EQ(d.body["result"]["violation"], 0.5);
  EXPECT_EQ(call({"oracle-perms-support", "--input", R"({"c":[1,2,3],"u":[1,0,-1]})"}).body["result"], 2.0);
  const Outcome lp = call({"oracle-conv-member", "--input", R"({"points":[[2,0,0],[0,2,0],[0,0,2]],"x":[1,1,0]})"});
  EXPECT_EQ(lp.body["result"]["feasible"], true);
  const Outcome g = call({"oracle-grid-conjugate", "--system", "sorted:2", "--input",
                          R"({"fn":{"fn":"quadratic"},"lo":[-10,-10],"hi":[10,10],"step":0.05,"z":[3,4]})"});
  EXPECT_NEAR(g.body["result"]["value"].get<double>(), 12.5, 1e-2);
  const Outcome r = call({"oracle-random-orthogonal", "--seed", "4", "--input", R"({"n":3})"});
  EXPECT_EQ(r.body["result"].size(), 3u);
  const Outcome pretty = call({"mu", "--system", "sorted:2", "--out", "pretty", "--input", R"({"w":[0,1]})"});
  EXPECT_NE(pretty.raw.find("\n  \"command\""), std::string::npos);
}

}  // namespace
}  // namespace ftvn::cli
