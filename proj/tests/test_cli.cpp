#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(DRAWCOUPLE_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const char* name) { return std::string(DRAWCOUPLE_TEST_DATA) + "/" + name; }
const std::string kP1 = "--pop " + data("p1.csv");
const std::string kP2 = "--pop " + data("p2.csv");

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, BoundP2) {
  const auto r = run("bound " + kP2 + " --n 2");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["delta"], 2.0);
  EXPECT_NEAR(j["alpha"].get<double>(), 0.4, 1e-15);
  EXPECT_NEAR(j["v"].get<double>(), 32.0, 1e-12);
  EXPECT_TRUE(j["serfling"].is_null());
}

TEST(Cli, BoundJsonInputAndExtras) {
  const auto r = run("bound --pop " + data("p2.json") + " --n 2 --t 2 --a 6");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["tail_bounds"][0]["bound"].get<double>(), std::exp(-4.0 / 64.0), 1e-12);
  // a = n * max value: the bound is P(v = 3)^2.
  EXPECT_NEAR(j["chernoff"]["bound"].get<double>(), 0.25, 1e-9);
  EXPECT_TRUE(j["chernoff"]["theta_star"].is_null());
}

TEST(Cli, BoundChernoffP1) {
  const auto r = run("bound " + kP1 + " --n 2 --a 2");
  ASSERT_EQ(r.status, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["chernoff"]["bound"].get<double>(), 0.49, 1e-6);
}

TEST(Cli, BoundUniformUsesSerfling) {
  const auto dir = std::filesystem::temp_directory_path() / "drawcouple_cli_uniform";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "u.csv") << "id,weight,value\n1,1,0\n2,1,1\n3,1,1\n4,1,0\n";
  const auto r = run("bound --pop " + (dir / "u.csv").string() + " --n 3");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["v"].is_null());
  EXPECT_NEAR(j["serfling"].get<double>(), 3.0 * 2.0 / 16.0, 1e-15);
}

TEST(Cli, ExactModes) {
  const auto without = run("exact " + kP1 + " --n 2 --mode without");
  ASSERT_EQ(without.status, 0);
  EXPECT_EQ(without.out, "{\"atoms\":[{\"point\":1.0,\"prob\":1.0}]}\n");
  const auto with = nlohmann::json::parse(run("exact " + kP1 + " --n 2 --mode with").out);
  ASSERT_EQ(with["atoms"].size(), 3u);
  EXPECT_NEAR(with["atoms"][2]["prob"].get<double>(), 0.49, 1e-12);
  const auto polya = nlohmann::json::parse(run("exact " + kP2 + " --n 1 --mode polya --d 3").out);
  ASSERT_EQ(polya["atoms"].size(), 3u);
  EXPECT_NEAR(polya["atoms"][0]["prob"].get<double>(), 1.0 / 3, 1e-12);
}

TEST(Cli, SampleModes) {
  for (const char* mode : {"with", "without", "polya"}) {
    const auto r = run("sample " + kP2 + " --n 3 --mode " + mode + " --d 2 --seed 4 --replicates 5");
    ASSERT_EQ(r.status, 0) << mode;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 5u);
    for (const auto& s : j) EXPECT_EQ(s["sample"].size(), 3u);
    EXPECT_EQ(r.out, run("sample " + kP2 + " --n 3 --mode " + mode + " --d 2 --seed 4 --replicates 5").out);
  }
  const auto perm = nlohmann::json::parse(run("sample " + kP2 + " --n 3 --seed 1").out);
  EXPECT_EQ(perm[0]["value"], 6.0);
}

TEST(Cli, Couple) {
  const auto screen = nlohmann::json::parse(run("couple " + kP2 + " --n 2 --seed 3").out);
  EXPECT_FALSE(screen.contains("stream"));
  EXPECT_EQ(screen["i_sample"].size(), 2u);
  const auto traced = nlohmann::json::parse(run("couple " + kP2 + " --n 2 --seed 3 --trace").out);
  EXPECT_EQ(traced["stream"].size(), traced["screen_times"][1].get<std::size_t>());
  EXPECT_EQ(traced["i_sample"], screen["i_sample"]);

  const auto urn = nlohmann::json::parse(run("couple " + kP2 + " --n 2 --d 2 --D 3 --seed 3 --trace").out);
  EXPECT_EQ(urn["k_sample"].size(), 2u);
  EXPECT_EQ(urn["l_sample"].size(), 2u);
  EXPECT_GE(urn["steps"].size(), 2u);
  EXPECT_EQ(urn["steps"][0]["label_D"], urn["steps"][0]["label_d"]);
  EXPECT_EQ(run("couple " + kP2 + " --n 2 --d 3 --D 3 --seed 3").status, 1);
  EXPECT_EQ(run("couple " + kP2 + " --n 4 --seed 3").status, 1);
}

TEST(Cli, OrderCheckExact) {
  const auto icx = run("order-check " + kP2 + " --n 2");
  ASSERT_EQ(icx.status, 0);
  const auto j = nlohmann::json::parse(icx.out);
  EXPECT_EQ(j["order"], "icx");
  EXPECT_TRUE(j["holds"].get<bool>());
  const auto cx = nlohmann::json::parse(run("order-check " + kP2 + " --n 3 --d 1 --D 2").out);
  EXPECT_EQ(cx["order"], "cx");
  EXPECT_TRUE(cx["holds"].get<bool>());
}

TEST(Cli, OrderCheckFailureExitsTwo) {
  const auto dir = std::filesystem::temp_directory_path() / "drawcouple_cli_reversed";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "r.csv") << "id,weight,value\n1,0.9,0\n2,0.1,1\n";
  const auto r = run("order-check --pop " + (dir / "r.csv").string() + " --n 2");
  EXPECT_EQ(r.status, 2);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["holds"].get<bool>());
}

TEST(Cli, OrderCheckMonteCarlo) {
  const auto r = run("order-check " + kP2 + " --n 2 --replicates 5000 --seed 9 --t 3 4 5");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 3u);
  for (const auto& rep : j) {
    EXPECT_EQ(rep["check"], "hinge_order");
    EXPECT_EQ(rep["verdict"], "pass");
  }
  EXPECT_EQ(run("order-check " + kP2 + " --n 2 --replicates 50").status, 1);
}

TEST(Cli, Tail) {
  const auto r = run("tail " + kP2 + " --n 2 --t 1.5 --replicates 2000 --seed 5");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["statistic"], 0.0);
  EXPECT_EQ(j[0]["replicates"], 2000);
  EXPECT_EQ(j[0]["seed"]["master_seed"], 5);
  EXPECT_EQ(run("tail " + kP2 + " --n 2 --t 1.5 --replicates 10 --seed 5").status, 1);
  EXPECT_EQ(run("tail " + kP2 + " --n 2 --t 1.5").status, 1);
}

TEST(Cli, VerifyOrderSuite) {
  const auto r = run("verify theorem1 --grid small --seed 7");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  std::size_t icx = 0;
  for (const auto& rep : j) {
    EXPECT_EQ(rep["verdict"], "pass") << rep.dump();
    if (rep["check"] == "icx_exact") ++icx;
  }
  // 9 * 2 + 27 * 3 + 81 * 4 populations-by-n on the small grid.
  EXPECT_EQ(icx, 423u);
}

TEST(Cli, VerifyPolyaSuite) {
  const auto r = run("verify theorem3 --grid small --seed 2 --replicates 3000");
  ASSERT_EQ(r.status, 0);
  for (const auto& rep : nlohmann::json::parse(r.out)) EXPECT_NE(rep["verdict"], "fail");
  EXPECT_EQ(run("verify theorem3 --grid small").status, 0);
}

TEST(Cli, VerifyTailSuiteAndDiagnostics) {
  const auto t2 = run("verify theorem2 --grid small --seed 3 --replicates 2000");
  ASSERT_EQ(t2.status, 0);
  // Three geometric sizes at two t values, uniform at four; two sides each.
  EXPECT_EQ(nlohmann::json::parse(t2.out).size(), 20u);
  const auto custom = run("verify theorem2 " + kP2 + " --n 2 --t 1 --seed 3 --replicates 2000");
  ASSERT_EQ(custom.status, 0);
  EXPECT_EQ(nlohmann::json::parse(custom.out).size(), 2u);
  const auto diag = run("verify diagnostics --seed 3 --replicates 5000");
  ASSERT_EQ(diag.status, 0);
  const auto j = nlohmann::json::parse(diag.out);
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[0]["check"], "expected_Tn");
  EXPECT_EQ(j[1]["check"], "unique_occurrences");
  EXPECT_EQ(j[2]["check"], "entropy_V");
  EXPECT_EQ(j[2]["params"]["i_sample"], nlohmann::json({3, 2}));
  EXPECT_EQ(run("verify diagnostics").status, 1);
}

TEST(Cli, OutFileIsByteIdenticalAcrossThreads) {
  const auto dir = std::filesystem::temp_directory_path() / "drawcouple_cli_out";
  std::filesystem::create_directories(dir);
  const auto a = dir / "a.json", b = dir / "b.json";
  ASSERT_EQ(run("verify diagnostics --seed 11 --replicates 4000 --threads 1 --out " + a.string()).status, 0);
  ASSERT_EQ(run("verify diagnostics --seed 11 --replicates 4000 --threads 4 --out " + b.string()).status, 0);
  const auto sa = slurp(a);
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, slurp(b));
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("frobnicate").status, 1);
  EXPECT_EQ(run("exact --n 2").status, 1);
  EXPECT_EQ(run("exact --pop /nonexistent/p.csv --n 2").status, 1);
  EXPECT_EQ(run("exact " + kP1 + " --n 2 --mode sideways").status, 1);
  EXPECT_EQ(run("exact " + kP2 + " --n 20 --mode with").status, 1);
  EXPECT_EQ(run("exact " + kP2 + " --n 4 --mode without").status, 1);
  EXPECT_EQ(run("verify theorem9").status, 1);
  EXPECT_EQ(run("sample " + kP2 + " --n 2").status, 1);
  EXPECT_EQ(run("--help").status, 0);
}

}  // namespace
