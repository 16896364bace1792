#include <gtest/gtest.h>

#include <sstream>

#include "hyperreal/cli.hpp"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hyperreal::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json(std::vector<std::string> args) {
  args.insert(args.begin(), "--json");
  return nlohmann::json::parse(run(std::move(args)).out);
}

}  // namespace

TEST(Cli, Eval) {
  EXPECT_EQ(run({"eval", "(1+eps)^2"}).out, "1 + 2*eps + eps^2\n");
  EXPECT_EQ(run({"--precision", "4", "eval", "1/(1+eps)"}).out,
            "1 - eps + eps^2 - eps^3 + O(eps^4)\n");
  EXPECT_EQ(run({"eval", "x^2", "--at", "3"}).out, "9\n");
  const auto j = json({"--precision", "2", "eval", "1/(1-eps)"});
  EXPECT_EQ(j["ok"], true);
  EXPECT_EQ(j["result"]["exact"], false);
  EXPECT_EQ(j["result"]["order_bound"], "2");
}

TEST(Cli, Calculus) {
  EXPECT_EQ(run({"diff", "x^2", "--at", "3"}).out, "6\n");
  EXPECT_EQ(json({"diff", "abs(x)", "--at", "0"})["result"]["differentiable"], false);
  EXPECT_EQ(run({"seq-limit", "(2*n^2+1)/(n^2+3)"}).out, "2\n");
  EXPECT_EQ(json({"limit", "1/x", "--to", "0", "--side", "right"})["result"]["kind"],
            "+inf");
  EXPECT_EQ(json({"continuity", "1/x", "--at", "0"})["result"]["continuous"], false);
  EXPECT_EQ(json({"compare", "w", "2*w", "--galaxy"})["result"]["ordering"], "less");
  EXPECT_EQ(json({"shadow", "3 + eps"})["result"]["shadow"], "3");
}

TEST(Cli, FiltersTransferHilbert) {
  const auto e = json({"filters", "enumerate", "--size", "3"});
  EXPECT_EQ(e["result"]["count"], 3);
  EXPECT_EQ(e["result"]["generators"], nlohmann::json::array({0, 1, 2}));
  const auto c = json({"filters", "classify", "[[0,1,2]]", "--size", "3"});
  EXPECT_EQ(c["result"]["proper"], true);
  EXPECT_EQ(c["result"]["ultrafilter"], false);

  const auto t = json({"transfer", "check", "x in N", "--structure", "N"});
  EXPECT_EQ(t["result"]["verdict"], "FormulaNotStatement");
  EXPECT_EQ(t["result"]["free_vars"], nlohmann::json::array({"x"}));
  EXPECT_EQ(run({"transfer", "star", "forall x in N, x+1 in N", "--structure", "N"}).out,
            "forall x in *N, x + *1 in *N\n");

  EXPECT_EQ(json({"hilbert", "classify", "[eps, eps]"})["result"]["class"], "infinitesimal");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"eval", "1/0"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--precision", "0", "eval", "1"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto err = json({"eval", "1 +"});
  EXPECT_EQ(err["ok"], false);
  EXPECT_EQ(err["error"]["kind"], "SyntaxError");
  EXPECT_EQ(err["error"]["position"], 3);
  const auto usage = json({"filters", "enumerate"});
  EXPECT_EQ(usage["ok"], false);
  EXPECT_EQ(usage["error"]["kind"], "usage");
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args = {"--json", "filters", "enumerate", "--size", "4"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> t = {"--json", "transfer", "weaken",
                                      "forall n in *N, |*s(n)| <= omega"};
  EXPECT_EQ(run(t).out, run(t).out);
}
