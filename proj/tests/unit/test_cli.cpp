// Copyright 2026 The cilvr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(CILVR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("cilvr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string out() const { return "--out " + dir_.string(); }
    fs::path dir_;
};

}  // namespace

TEST_F(Cli, PriceWritesCurvesAndManifest) {
    ASSERT_EQ(run("price --r 0.01 --sigma 0.25 --K 100 --q 2 --q 4 --q 8 --points 11 " + out()), 0);
    const auto csv = slurp(dir_ / "price.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "q,S,price,delta");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 33);
    const auto manifest = slurp(dir_ / "manifest.json");
    EXPECT_NE(manifest.find("\"subcommand\": \"price\""), std::string::npos);
    EXPECT_NE(manifest.find("\"seed\""), std::string::npos);
}

TEST_F(Cli, MissingFlagIsValidationErrorWithoutOutput) {
    EXPECT_EQ(run("price --r 0.01 --sigma 0.25 --q 2 " + out()), 2);
    EXPECT_FALSE(fs::exists(dir_));
}

TEST_F(Cli, InadmissibleFeeIsValidationError) {
    EXPECT_EQ(run("price --r 0.05 --sigma 0.25 --K 100 --q 2 " + out()), 2);
    EXPECT_FALSE(fs::exists(dir_));
}

TEST_F(Cli, UnreachableHorizonIsConvergenceError) {
    EXPECT_EQ(run("design --horizon-days 1e12 " + out()), 3);
}

TEST_F(Cli, SweepFlagsOutOfRange) {
    ASSERT_EQ(run("sweep --q 500 --dK 8 " + out()), 0);
    EXPECT_NE(slurp(dir_ / "manifest.json").find("\"out_of_reference_range\": true"), std::string::npos);
    EXPECT_EQ(slurp(dir_ / "sweep.csv").substr(0, 21), "q,dK,max_abs_err,rmse");
}

TEST_F(Cli, DesignDefaultHasFifteenRows) {
    ASSERT_EQ(run("design " + out()), 0);
    const auto csv = slurp(dir_ / "table1.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 16);
    EXPECT_TRUE(fs::exists(dir_ / "table1.txt"));
    EXPECT_TRUE(fs::exists(dir_ / "residual_share.csv"));
}

TEST_F(Cli, CalibrateDoesNotTouchInput) {
    const fs::path iv = fs::path(CILVR_TEST_DATA) / "eth_like_iv.csv";
    const auto before = slurp(iv);
    ASSERT_EQ(run("calibrate --iv " + iv.string() + " --r 0.02 --K 100 --q 5 --paths 200 " + out()), 0);
    EXPECT_EQ(slurp(iv), before);
    EXPECT_NE(slurp(dir_ / "calibration.json").find("sigma_eff"), std::string::npos);
}

TEST_F(Cli, SimulateAndExitRun) {
    ASSERT_EQ(run("simulate --q 1000 --T 0.001 --paths 2 " + out()), 0);
    const auto ledger = slurp(dir_ / "ledger.csv");
    EXPECT_EQ(ledger.substr(0, ledger.find('\n')), "t,S,V,W,LVR,Fee,j");
    ASSERT_EQ(run("exit --r 0.05 --sigma 0.8 --K 100 --q 99 --paths 500 " + out()), 0);
    EXPECT_TRUE(fs::exists(dir_ / "exit_histogram.csv"));
    EXPECT_EQ(run("exit --r 0.05 --sigma 0.8 --K 100 --q 99 --monitor sometimes " + out()), 2);
}

TEST_F(Cli, StripChainedAndUniform) {
    ASSERT_EQ(run("strip --q 500 " + out()), 0);
    EXPECT_NE(slurp(dir_ / "strip_summary.json").find("chained"), std::string::npos);
    ASSERT_EQ(run("strip --q 500 --dK 1 " + out()), 0);
    EXPECT_NE(slurp(dir_ / "strip_summary.json").find("uniform"), std::string::npos);
}
