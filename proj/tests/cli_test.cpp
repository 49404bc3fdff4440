#include "disclosure/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

using disclosure::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "disclosure");
  std::ostringstream out, err;
  const int code = disclosure::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json parse(const Run& r) { return Json::parse(r.out); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(CliSolve, ReferenceInstance) {
  const auto r = run({"solve", "--mu", "0.9", "--q", "0.3", "--c", "0.1", "--T", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = parse(r);
  const Json& res = doc["result"];
  EXPECT_GE(res["q_star"].get<double>(), 0.0);
  EXPECT_LT(res["q_star"].get<double>(), 1.0);
  for (const char* key : {"n_p_star", "optimal_utility", "tau_no", "binding_constraint_time",
                          "obedience_slacks"}) {
    EXPECT_TRUE(res.contains(key)) << key;
  }
  EXPECT_EQ(doc["manifest"]["command"], "solve");
  EXPECT_EQ(doc["manifest"]["parameters"]["mu"], "0.9");
  EXPECT_TRUE(doc["manifest"]["timestamp"].is_null());
}

TEST(CliSolve, FreeWaiting) {
  const auto doc = parse(run({"solve", "--mu", "0.9", "--q", "0.3", "--c", "0", "--T", "50"}));
  EXPECT_EQ(doc["result"]["n_p_star"], 50);
  EXPECT_EQ(doc["result"]["q_star"], 1.0);
  EXPECT_EQ(doc["result"]["optimal_utility"], 50.0);
}

TEST(CliSolve, FastMatches) {
  const auto slow = parse(run({"solve", "--mu", "0.6", "--q", "0.2", "--c", "0.3", "--T", "40"}));
  const auto fast =
      parse(run({"solve", "--mu", "0.6", "--q", "0.2", "--c", "0.3", "--T", "40", "--fast"}));
  EXPECT_EQ(fast["result"]["mechanism"], slow["result"]["mechanism"]);
  EXPECT_EQ(fast["result"]["solver"], "algorithm1_fast");
}

TEST(CliSolve, DomainErrorNamesFlag) {
  const auto r = run({"solve", "--mu", "1.5", "--q", "0.3", "--c", "0.1", "--T", "5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("mu"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(CliSolve, ArgumentErrors) {
  EXPECT_EQ(run({"solve", "--mu", "0.5"}).code, 2);
  EXPECT_EQ(run({"solve", "--mu", "abc", "--q", "0.3", "--c", "0.1", "--T", "5"}).code, 2);
  EXPECT_EQ(run({"solve", "--mu", "0.5", "--q", "0.3", "--c", "0.1", "--T", "0"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliSolve, WritesOutFile) {
  const std::string path = ::testing::TempDir() + "solve_out.json";
  const auto r =
      run({"solve", "--mu", "0.9", "--q", "0.3", "--c", "0.1", "--T", "8", "--out", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(Json::parse(read_file(path))["result"]["n_p_star"], 7);
  std::remove(path.c_str());
}

TEST(CliBenchmarks, ImprovementAtSmallDelayCost) {
  const auto doc =
      parse(run({"benchmarks", "--mu", "0.9", "--q", "0.3", "--c", "0.06", "--T", "50"}));
  EXPECT_NEAR(doc["result"]["improvement_pct"].get<double>(), 60.5, 3.0);
}

TEST(CliBenchmarks, SurelyBadChain) {
  const auto doc = parse(run({"benchmarks", "--mu", "0", "--q", "0.3", "--c", "0.5", "--T", "10"}));
  const Json& b = doc["result"]["benchmarks"];
  EXPECT_EQ(b["no_info_utility"], 0.0);
  EXPECT_EQ(b["full_info_utility"], 0.0);
  EXPECT_EQ(b["static_utility"], 0.0);
  EXPECT_EQ(doc["result"]["optimal_utility"], 0.0);
  EXPECT_TRUE(doc["result"]["improvement_pct"].is_null());
}

TEST(CliBenchmarks, StaticAtLeastFullInformation) {
  const auto doc = parse(run({"benchmarks", "--mu", "0.9", "--q", "0.3", "--c", "0.5", "--T", "3"}));
  const Json& b = doc["result"]["benchmarks"];
  EXPECT_GE(b["static_utility"].get<double>(), b["full_info_utility"].get<double>());
}

TEST(CliVerify, SmallGridPasses) {
  const auto r = run({"verify", "--grid", "small"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(parse(r)["all_passed"].get<bool>());
}

TEST(CliVerify, SingleInstancePasses) {
  EXPECT_EQ(run({"verify", "--mu", "0.9", "--q", "0.3", "--c", "0.1", "--T", "8"}).code, 0);
}

TEST(CliVerify, ScaleErrors) {
  EXPECT_EQ(run({"verify", "--T", "20", "--mode", "enumerate"}).code, 3);
  EXPECT_EQ(run({"verify", "--T", "13", "--mode", "oracle"}).code, 3);
  EXPECT_EQ(run({"verify", "--T", "12", "--mode", "oracle", "--step", "0.01"}).code, 0);
}

TEST(CliSimulate, ReferenceRunWithinThreeStderr) {
  const auto doc = parse(run({"simulate", "--mu", "0.9", "--q", "0.3", "--c", "0.1", "--T", "50",
                              "--episodes", "100000", "--seed", "42"}));
  EXPECT_LE(std::abs(doc["closed_form"]["utility_delta_in_stderr"].get<double>()), 3.0);
  EXPECT_LE(std::abs(doc["closed_form"]["cost_delta_in_stderr"].get<double>()), 3.0);
  EXPECT_EQ(doc["manifest"]["seed"], 42);
}

TEST(CliSimulate, FullInformationCostsNothing) {
  const auto doc = parse(run({"simulate", "--mu", "0.9", "--q", "0.3", "--c", "0.1", "--T", "20",
                              "--episodes", "5000", "--policy", "full-info"}));
  EXPECT_EQ(doc["report"]["mean_detector_cost"], 0.0);
}

TEST(CliSimulate, PolicyFileFromSolveOutput) {
  const std::string path = ::testing::TempDir() + "policy.json";
  ASSERT_EQ(run({"solve", "--mu", "0.9", "--q", "0.3", "--c", "0.1", "--T", "20", "--out", path})
                .code,
            0);
  const auto from_file = run({"simulate", "--mu", "0.9", "--q", "0.3", "--c", "0.1", "--T", "20",
                              "--episodes", "2000", "--policy-file", path});
  const auto built_in = run({"simulate", "--mu", "0.9", "--q", "0.3", "--c", "0.1", "--T", "20",
                             "--episodes", "2000"});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(parse(from_file)["report"], parse(built_in)["report"]);
  EXPECT_EQ(run({"simulate", "--mu", "0.9", "--q", "0.3", "--c", "0.1", "--T", "21",
                 "--policy-file", path})
                .code,
            2);
  {
    std::ofstream bad(path);
    bad << R"({"n_p": "three", "q_np": 0.5})";
  }
  EXPECT_EQ(run({"simulate", "--mu", "0.9", "--q", "0.3", "--c", "0.1", "--T", "20",
                 "--policy-file", path})
                .code,
            2);
  std::remove(path.c_str());
}

TEST(CliSimulate, ArgumentErrors) {
  const std::vector<std::string> base{"simulate", "--mu", "0.9", "--q", "0.3", "--c", "0.1",
                                      "--T", "5"};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args).code;
  };
  EXPECT_EQ(with({"--policy", "bogus"}), 2);
  EXPECT_EQ(with({"--episodes", "0"}), 2);
  EXPECT_EQ(with({"--mode", "psychic"}), 2);
  EXPECT_EQ(with({"--policy-file", "/nonexistent/policy.json"}), 2);
}

TEST(CliSimulate, NegativeSeedIsAccepted) {
  const auto r = run({"simulate", "--mu", "0.9", "--q", "0.3", "--c", "0.1", "--T", "5",
                      "--episodes", "10", "--seed", "-1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse(r)["manifest"]["seed"].get<std::uint64_t>(), ~std::uint64_t{0});
}

TEST(CliSimulate, DeterministicAcrossRunsAndThreads) {
  const std::vector<std::string> args{"simulate", "--mu", "0.8", "--q", "0.2", "--c", "0.1",
                                      "--T", "30", "--episodes", "20000", "--seed", "11"};
  auto a = args, b = args;
  a.insert(a.end(), {"--threads", "1"});
  b.insert(b.end(), {"--threads", "4"});
  const auto r1 = run(a), r2 = run(b), r3 = run(a);
  EXPECT_EQ(r1.out, r2.out);
  EXPECT_EQ(r1.out, r3.out);
}

TEST(CliSweep, UtilityVsCTable) {
  const auto r = run({"sweep", "--mode", "utility-vs-c", "--mu", "0.9", "--q", "0.3", "--T", "50",
                      "--points", "101"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  int rows = 0;
  bool header = false;
  std::string summary;
  while (std::getline(in, line)) {
    if (line.rfind("# summary: ", 0) == 0) summary = line.substr(11);
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      EXPECT_EQ(line, "c,optimal,no_info,full_info,static,static_rho,improvement_pct");
      header = true;
      continue;
    }
    ++rows;
  }
  EXPECT_EQ(rows, 101);
  EXPECT_TRUE(Json::parse(summary)["dominance_holds"].get<bool>());
}

TEST(CliSweep, PatienceToFile) {
  const std::string path = ::testing::TempDir() + "map.csv";
  const auto r = run({"sweep", "--mode", "patience", "--fix", "c=0.1", "--grid", "21", "--T", "50",
                      "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = parse(r)["summary"];
  EXPECT_EQ(summary["cells"], 441);
  const std::string table = read_file(path);
  EXPECT_NE(table.find("row,col,mu,q,c,T,tau_no,n_p_star,q_star,eta,never_declares\n"),
            std::string::npos);
  std::remove(path.c_str());
}

TEST(CliSweep, ArgumentErrors) {
  EXPECT_EQ(run({"sweep", "--mode", "heatmap"}).code, 2);
  EXPECT_EQ(run({"sweep"}).code, 2);
  EXPECT_EQ(run({"sweep", "--mode", "patience", "--fix", "T=3"}).code, 2);
  EXPECT_EQ(run({"sweep", "--mode", "patience", "--fix", "c=x"}).code, 2);
  EXPECT_EQ(run({"sweep", "--mode", "patience", "--fix", "c=0.1", "--grid", "1"}).code, 2);
}

TEST(CliSweep, Deterministic) {
  const std::vector<std::string> args{"sweep", "--mode", "patience", "--fix", "q=0.1",
                                      "--grid", "15", "--T", "60"};
  auto a = args, b = args;
  a.insert(a.end(), {"--threads", "1"});
  b.insert(b.end(), {"--threads", "3"});
  EXPECT_EQ(run(a).out, run(b).out);
}

TEST(CliBinary, ExitCodesThroughProcess) {
  const std::string cli = DISCLOSURE_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("solve --mu 0.9 --q 0.3 --c 0.1 --T 10"), 0);
  EXPECT_EQ(status("solve --mu 1.5 --q 0.3 --c 0.1 --T 10"), 2);
  EXPECT_EQ(status("verify --T 20 --mode enumerate"), 3);
}
