// Copyright 2026 The eprapprox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace epr::cli {
namespace {

std::string data(const std::string &name) { return std::string(EPR_TEST_DATA_DIR) + "/" + name; }

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

TEST(Cli, RunPathPasses) {
    const Result r = invoke({"run", data("p4.txt")});
    ASSERT_EQ(r.code, kExitPass) << r.err;
    const nlohmann::json j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["guarantee_met"].get<bool>());
    EXPECT_TRUE(j["sandwich_holds"].get<bool>());
    EXPECT_GE(j["ratio_lower"].get<double>(), 0.839511 - 1e-6);
    EXPECT_EQ(j["params"]["command"], "run");
    EXPECT_EQ(j["params"]["schedule"]["variant"], "default");
}

TEST(Cli, RunCycleReportsCap) {
    const Result r = invoke({"run", data("c4.txt")});
    ASSERT_EQ(r.code, kExitPass) << r.err;
    const nlohmann::json j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["ratio_true_within_cap"].get<bool>());
    EXPECT_NEAR(j["lambda_max"].get<double>(), 6.0, 1e-9);
}

TEST(Cli, MalformedInputNamesTheLine) {
    const Result r = invoke({"run", data("bad.txt")});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("line 5"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({"run", data("p4.txt"), "--no-such-flag"}).code, kExitUsage);
    EXPECT_EQ(invoke({"run", data("missing.txt")}).code, kExitUsage);
    EXPECT_EQ(invoke({}).code, kExitUsage);
    EXPECT_EQ(invoke({"certify", "--grid-r1d", "10"}).code, kExitUsage);
    EXPECT_EQ(invoke({"sweep", "--max-n", "9"}).code, kExitUsage);
    EXPECT_EQ(invoke({"solve", data("p4.txt"), "--method", "simplex"}).code, kExitUsage);
    EXPECT_EQ(invoke({"--help"}).code, kExitPass);
}

TEST(Cli, SolveAndVerifyMoe) {
    const Result s = invoke({"solve", data("paw.txt"), "--certified-bound"});
    ASSERT_EQ(s.code, kExitPass) << s.err;
    const nlohmann::json j = nlohmann::json::parse(s.out);
    EXPECT_NEAR(j["u"].get<double>(), 5.5615527207, 1e-6);
    EXPECT_TRUE(j["constraints_ok"].get<bool>());
    EXPECT_TRUE(j.contains("u_certified"));
    const Result m = invoke({"verify-moe", data("paw.txt")});
    EXPECT_EQ(m.code, kExitPass) << m.err;
}

TEST(Cli, Limits) {
    const Result r = invoke({"limits"});
    ASSERT_EQ(r.code, kExitPass);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["alpha"].get<double>(), 0.8395111, 1e-7);
    EXPECT_NEAR(j["ansatz_cap"].get<double>(), 0.8726779962, 1e-9);
}

TEST(Cli, CertifyPassesAndWritesCsv) {
    const std::filesystem::path csv = std::filesystem::temp_directory_path() / "epr_cli_test_samples.csv";
    const Result r = invoke({"certify", "--csv", csv.string()});
    ASSERT_EQ(r.code, kExitPass) << r.err;
    EXPECT_TRUE(nlohmann::json::parse(r.out)["pass"].get<bool>());
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "g,r1,r2,r3");
    std::filesystem::remove(csv);
}

TEST(Cli, CertifyShiftedBetaFails) {
    const Result r = invoke({"certify", "--beta", "0.60"});
    EXPECT_EQ(r.code, kExitFail);
    EXPECT_NE(r.err.find("FAIL"), std::string::npos);
}

TEST(Cli, SweepSmallGraphs) {
    const Result r = invoke({"sweep", "--max-n", "4", "--random", "3", "--random-max-n", "5"});
    ASSERT_EQ(r.code, kExitPass) << r.err;
    const nlohmann::json j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["instances"].get<int>(), 1 + 2 + 6 + 3);
    EXPECT_TRUE(j["failures"].empty());
}

TEST(Cli, OutFlagWritesFile) {
    const std::filesystem::path path = std::filesystem::temp_directory_path() / "epr_cli_test_out.json";
    const Result r = invoke({"--out", path.string(), "limits"});
    ASSERT_EQ(r.code, kExitPass);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    const nlohmann::json j = nlohmann::json::parse(in);
    EXPECT_TRUE(j.contains("alpha"));
    std::filesystem::remove(path);
}

TEST(Cli, GlobalOptionAfterSubcommand) {
    const std::filesystem::path path = std::filesystem::temp_directory_path() / "epr_cli_test_out2.json";
    ASSERT_EQ(invoke({"limits", "--out", path.string()}).code, kExitPass);
    EXPECT_TRUE(std::filesystem::exists(path));
    std::filesystem::remove(path);
}

}  // namespace
}  // namespace epr::cli
