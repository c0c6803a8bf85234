#include <gtest/gtest.h>

#include <sstream>

#include "autocomm/cli.hpp"

using namespace autocomm;
using namespace autocomm::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(CommandRequest r) {
  std::ostringstream out, err;
  const int code = run(r, out, err);
  return {code, out.str(), err.str()};
}

CommandRequest request(std::string command, std::string group = "", std::string subgroup = "", std::string g = "") {
  CommandRequest r;
  r.command = std::move(command);
  r.group = std::move(group);
  r.subgroup = std::move(subgroup);
  r.g = std::move(g);
  return r;
}

}  // namespace

TEST(Cli, ParseSpecs) {
  auto s = parse_specs("D4", "r", "r^2");
  EXPECT_EQ(s.k->order(), 8u);
  EXPECT_EQ(s.h.order(), 4u);
  EXPECT_EQ(s.k->label(s.g), "r^2");
  auto p = parse_specs("C3xC4", "", "");
  EXPECT_EQ(p.h.order(), 12u);
  EXPECT_EQ(p.g, 0u);
  EXPECT_EQ(parse_specs("D4", "s, r2", "").h.order(), 4u);
  EXPECT_EQ(parse_specs("C2xC2", "(a,e)", "").h.order(), 2u);
  try {
    parse_specs("C3", "", "b");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownLabel);
  }
  try {
    parse_specs("C3", "a,,a", "");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotASubgroupSpec);
  }
}

TEST(Cli, Compute) {
  auto o = invoke(request("compute", "D4", "r", "r^2"));
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "1/4 (~0.250000)\n");
  auto bad = invoke(request("compute", "C3", "", "b"));
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("UnknownLabel"), std::string::npos);
  EXPECT_EQ(invoke(request("compute", "C3xxC4")).code, 2);
}

TEST(Cli, DistributionTable) {
  auto o = invoke(request("distribution", "C3"));
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("2/3"), std::string::npos);
  EXPECT_NE(o.out.find("a^2  1/6"), std::string::npos);
  auto r = request("distribution", "C3");
  r.format = "csv";
  auto csv = invoke(r);
  EXPECT_NE(csv.out.find("C3,\"{e,a,a^2}\",2,e,2,3,true"), std::string::npos) << csv.out;
}

TEST(Cli, AutWithGenerators) {
  auto r = request("aut", "D4");
  r.generators = true;
  auto o = invoke(r);
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out.rfind("|Aut(D4)| = 8\n", 0), 0u);
}

TEST(Cli, Autoiso) {
  auto r = request("autoiso", "C3");
  r.pair2_group = "C6";
  r.pair2_subgroup = "a^2";
  auto o = invoke(r);
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("autoisoclinic"), std::string::npos);
  auto none = request("autoiso", "D4", "r");
  none.pair2_group = "C3";
  EXPECT_EQ(invoke(none).code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke(request("frobnicate")).code, 2);
  auto r = request("verify");
  r.max_order = 49;
  EXPECT_EQ(invoke(r).code, 2);
  auto f = request("compute", "C3");
  f.format = "xml";
  EXPECT_EQ(invoke(f).code, 2);
}
