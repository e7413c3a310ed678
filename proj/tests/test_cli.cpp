#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#ifndef SPHERE_CLI_PATH
#error "SPHERE_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args, const std::string& stdin_data = "") {
  std::string cmd = std::string(SPHERE_CLI_PATH) + " " + args + " 2>&1";
  if (!stdin_data.empty()) {
    std::string tmp = ::testing::TempDir() + "/sphere_cli_stdin.json";
    std::ofstream f(tmp);
    f << stdin_data;
    f.close();
    cmd = cmd + " < " + tmp;
  }
  std::array<char, 4096> buf;
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

TEST(Cli, ValidateSaturatedPair) {
  auto r = run("validate -d G2 -w 1,0 -w 0,1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("saturated: yes"), std::string::npos);
  EXPECT_NE(r.output.find("S^p: (empty)"), std::string::npos);
}

TEST(Cli, ValidateNotSaturatedWithOracle) {
  auto r = run("validate -d A2 -w 1,1 -w 1,0 --oracle-bound 4 --format json");
  EXPECT_EQ(r.exit_code, 1);
  auto j = nlohmann::json::parse(r.output);
  EXPECT_TRUE(j["free"].get<bool>());
  EXPECT_FALSE(j["saturated"].get<bool>());
  EXPECT_TRUE(j["oracle_agrees"].get<bool>());
  EXPECT_EQ(j["oracle"]["counterexample_pretty"], "w2");
}

TEST(Cli, ValidateNotFree) {
  auto r = run("validate -d A2 -w 1,0 -w 2,0");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("free: no"), std::string::npos);
}

TEST(Cli, MalformedInputs) {
  EXPECT_EQ(run("validate -d Q7 -w 1").exit_code, 2);
  EXPECT_EQ(run("validate -d A2 -w 1").exit_code, 2);       // wrong length
  EXPECT_EQ(run("validate -d A2 -w 1,x").exit_code, 2);     // bad coordinate
  EXPECT_EQ(run("validate -d A2 -w 0,0").exit_code, 2);     // zero weight
  EXPECT_EQ(run("validate -d A2 -w 1,-1").exit_code, 2);    // not dominant
  EXPECT_EQ(run("sigma -d A2").exit_code, 2);               // no weights
}

TEST(Cli, SigmaPinnedCases) {
  auto g2 = run("sigma -d G2 -w 1,0 -w 0,1");
  EXPECT_EQ(g2.exit_code, 0);
  EXPECT_NE(g2.output.find("Sigma: a1+a2"), std::string::npos);
  EXPECT_NE(g2.output.find("dimension: 1"), std::string::npos);

  auto f4 = run("sigma -d F4 -w 0,0,0,1 -w 0,0,1,0");
  EXPECT_EQ(f4.exit_code, 0);
  EXPECT_NE(f4.output.find("dimension: 0"), std::string::npos);

  auto b3 = run("sigma -d B3 -w 1,0,0");
  EXPECT_NE(b3.output.find("Sigma: 2a1+2a2+2a3"), std::string::npos);
}

TEST(Cli, SigmaNotSaturatedExitCode) {
  auto r = run("sigma -d A2 -w 1,1 -w 1,0");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("not-saturated"), std::string::npos);
}

TEST(Cli, SigmaTraceShowsRules) {
  auto r = run("sigma -d B3 -w 1,0,0 --trace");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("drop a1+a2+a3 [B_n] at no-doubling"), std::string::npos);
}

TEST(Cli, SigmaJsonRoundTrips) {
  auto r = run("sigma -d B3 -w 1,0,0 --format json");
  EXPECT_EQ(r.exit_code, 0);
  auto j = nlohmann::json::parse(r.output);
  EXPECT_EQ(j["dimension"].get<int>(), 1);
  // the emitted system re-parses and decomposes through stdin
  auto d = run("decompose --system - --format json", j["system"].dump());
  EXPECT_EQ(d.exit_code, 0);
  auto dj = nlohmann::json::parse(d.output);
  EXPECT_EQ(dj["system"]["diagram"], "B3");
}

TEST(Cli, DiagramCanonicalization) {
  // C2 input maps onto B2 with the node relabeling applied to weights:
  // w1 of C2 is w2 of B2, whose attached root is the doubled short pair
  auto r = run("sigma -d C2 -w 1,0 --format json");
  EXPECT_EQ(r.exit_code, 0);
  auto j = nlohmann::json::parse(r.output);
  EXPECT_EQ(j["diagram"], "B2");
  EXPECT_EQ(j["weights"][0], nlohmann::json::parse("[0,1]"));
}

TEST(Cli, DecomposeCatalogFileGivesSingleLeaf) {
  std::string system = R"({"diagram":"A3xA3","sp":[],
    "sigma":[[1,0,0,1,0,0],[0,1,0,0,1,0],[0,0,1,0,0,1]]})";
  auto r = run("decompose --system - --format json", system);
  EXPECT_EQ(r.exit_code, 0);
  auto j = nlohmann::json::parse(r.output);
  EXPECT_EQ(j["tree"]["kind"], "leaf");
  EXPECT_EQ(j["tree"]["leaf"], "A.2");
  EXPECT_EQ(j["leaves"].get<int>(), 1);
}

TEST(Cli, DecomposeRejectsBadSystems) {
  auto r = run("decompose --system - --format json",
               R"({"diagram":"A2","sp":[],"sigma":[[1,0]]})");
  EXPECT_EQ(r.exit_code, 1);  // simple root with empty A fails the axioms
  auto r2 = run("decompose --system -", R"({"diagram":"A2","sp":[9],"sigma":[]})");
  EXPECT_EQ(r2.exit_code, 2);
}

TEST(Cli, CatalogListAndShow) {
  auto d = run("catalog --family D");
  EXPECT_EQ(d.exit_code, 0);
  int count = 0;
  for (size_t pos = 0; (pos = d.output.find("D.", pos)) != std::string::npos; ++pos) ++count;
  EXPECT_EQ(count, 8);

  auto show = run("catalog show A.2 --n1 3 --n2 3");
  EXPECT_EQ(show.exit_code, 0);
  auto j = nlohmann::json::parse(show.output);
  EXPECT_EQ(j["K"], "N(SL4)");
  EXPECT_EQ(j["system"]["diagram"], "A3xA3");

  EXPECT_EQ(run("catalog show A.2").exit_code, 2);  // missing parameters
}

TEST(Cli, CatalogSelfTest) {
  // the catalog self test reports the documented boundary systems that
  // fail the no-doubling condition and nothing else
  auto r = run("catalog --self-test --format json");
  EXPECT_EQ(r.exit_code, 1);
  auto j = nlohmann::json::parse(r.output);
  EXPECT_EQ(j["entries"].get<int>(), 40);
  EXPECT_EQ(j["instantiations"].get<int>(), 90);
  EXPECT_EQ(j["failures"].get<int>(), 6);
  for (const auto& row : j["report"]) {
    if (row["pass"].get<bool>()) continue;
    EXPECT_TRUE(row["axioms"].get<bool>());
    EXPECT_TRUE(row["cuspidal"].get<bool>());
    EXPECT_FALSE(row["no_doubling"].get<bool>());
    std::string id = row["id"].get<std::string>();
    EXPECT_TRUE(id == "B.7" || id == "C.4") << id;
  }
}

TEST(Cli, DeterministicJsonOutput) {
  auto a = run("sigma -d B4 -w 1,0,0,0 -w 0,0,0,2 --format json");
  auto b = run("sigma -d B4 -w 1,0,0,0 -w 0,0,0,2 --format json");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.output, b.output);

  auto c = run("catalog --self-test --format json");
  auto d = run("catalog --self-test --format json");
  EXPECT_EQ(c.output, d.output);
}
