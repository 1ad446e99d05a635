// Copyright 2026 The hybridsim Authors.
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
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCli = HYBRIDSIM_CLI_PATH;
const std::string kData = HYBRIDSIM_DATA_DIR;

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("hybridsim_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    // Runs the binary and returns its exit code; stderr lands in err.txt.
    int run(const std::string &args) {
        const std::string cmd = "'" + kCli + "' " + args + " > '" + (dir_ / "out.txt").string() +
                                "' 2> '" + (dir_ / "err.txt").string() + "'";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string read(const fs::path &p) const {
        std::ifstream is(p);
        std::stringstream ss;
        ss << is.rdbuf();
        return ss.str();
    }

    std::vector<std::string> lines(const fs::path &p) const {
        std::istringstream is(read(p));
        std::vector<std::string> out;
        for (std::string l; std::getline(is, l);) {
            out.push_back(l);
        }
        return out;
    }

    std::string data(const std::string &name) const { return "'" + kData + "/" + name + "'"; }
    std::string out(const std::string &sub) const { return "'" + (dir_ / sub).string() + "'"; }

    fs::path dir_;
};

std::string drop_last_field(const std::string &line) { return line.substr(0, line.rfind(',')); }

} // namespace

TEST_F(Cli, SimulateWritesReport) {
    ASSERT_EQ(run("simulate " + data("tfim3.ham") + " --out " + out("a1")), 0) << read(dir_ / "err.txt");
    const auto rep = lines(dir_ / "a1" / "report.csv");
    ASSERT_EQ(rep.size(), 3u);
    EXPECT_EQ(rep[0].rfind("# seed=1", 0), 0u);
    EXPECT_EQ(rep[1],
              "approach,K,M,d,|R|,t,delta,declared_err,measured_err,prep_unitary_queries,"
              "be_queries,swap_ops,lcu_terms,amplification_rounds,poly_degree,two_qubit_gates,"
              "ancilla_dims,wall_ms");
    EXPECT_EQ(rep[2].rfind("a1,5,3,2,2,", 0), 0u) << rep[2];
    EXPECT_NE(read(dir_ / "a1" / "summary.txt").find("within_declared yes"), std::string::npos);
}

TEST_F(Cli, SeededRunsAreByteIdenticalApartFromWallClock) {
    const std::string base = "simulate " + data("tfim3.ham") + " --approach a2 --samples 64 --seed 5";
    ASSERT_EQ(run(base + " --out " + out("x")), 0);
    ASSERT_EQ(run(base + " --out " + out("y")), 0);
    const auto x = lines(dir_ / "x" / "report.csv"), y = lines(dir_ / "y" / "report.csv");
    ASSERT_EQ(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        EXPECT_EQ(drop_last_field(x[i]), drop_last_field(y[i]));
    }
}

TEST_F(Cli, LedgerOnlyMatchesDenseCounters) {
    ASSERT_EQ(run("simulate " + data("tfim3.ham") + " --out " + out("d")), 0);
    ASSERT_EQ(run("simulate " + data("tfim3.ham") + " --ledger-only --out " + out("l")), 0);
    auto counters = [&](const std::string &sub) {
        std::string s;
        for (const auto &l : lines(dir_ / sub / "summary.txt")) {
            if (l.rfind("counter.", 0) == 0) {
                s += l + "\n";
            }
        }
        return s;
    };
    EXPECT_FALSE(counters("d").empty());
    EXPECT_EQ(counters("d"), counters("l"));
}

TEST_F(Cli, TimeDependent) {
    EXPECT_EQ(run("simulate " + data("zz_td.ham") + " --approach td --t 1.5 --out " + out("td")), 0)
        << read(dir_ / "err.txt");
    EXPECT_EQ(run("simulate " + data("tfim3.ham") + " --approach td --out " + out("bad")), 2);
    EXPECT_NE(read(dir_ / "err.txt").find("CoefficientsMissing"), std::string::npos)
        << read(dir_ / "err.txt");
}

TEST_F(Cli, ValidationAndNumericalExitCodes) {
    EXPECT_EQ(run("simulate " + data("tfim3.ham") + " --bogus"), 2);
    EXPECT_EQ(run("simulate " + data("missing.ham")), 2);
    EXPECT_EQ(run("simulate " + data("tfim3.ham") + " --approach a3 --out " + out("n")), 2);
    EXPECT_NE(read(dir_ / "err.txt").find("NegativeEigenvalueProduct"), std::string::npos);
    EXPECT_EQ(run("simulate " + data("tfim3.ham") + " --delta 0.9 --out " + out("n")), 2);
    EXPECT_EQ(run("simulate " + data("tfim3.ham") + " --t 1e6 --out " + out("n")), 3);
    EXPECT_NE(read(dir_ / "err.txt").find("DegreeOverflow"), std::string::npos);
    EXPECT_EQ(run(""), 2);
}

TEST_F(Cli, TruncateUniformVector) {
    ASSERT_EQ(run("truncate --vector " + data("uniform16.vec") + " --sparsity 4 --out " + out("t")),
              0);
    const std::string sm = read(dir_ / "t" / "summary.txt");
    EXPECT_NE(sm.find("members 4"), std::string::npos) << sm;
    const auto pos = sm.find("\ntrace_distance ");
    ASSERT_NE(pos, std::string::npos) << sm;
    EXPECT_NEAR(std::stod(sm.substr(pos + 16)), 1.5, 1e-12);
    EXPECT_NE(sm.find("amplitude_bound_holds yes"), std::string::npos) << sm;
    const auto ens = lines(dir_ / "t" / "ensemble.csv");
    ASSERT_EQ(ens.size(), 17u);
    EXPECT_EQ(ens[0], "member,probability,index,re,im");
    EXPECT_EQ(run("truncate --vector " + data("uniform16.vec") + " --sparsity 17 --out " + out("t")),
              2);
    EXPECT_NE(read(dir_ / "err.txt").find("SparsityOutOfRange"), std::string::npos);
}

TEST_F(Cli, SweepWritesScalingCsv) {
    ASSERT_EQ(run("sweep --family chain --param K --values 1,2,4,8 --counter prep_unitary_queries "
                  "--out " + out("s")),
              0)
        << read(dir_ / "err.txt");
    const auto csv = lines(dir_ / "s" / "scaling.csv");
    ASSERT_EQ(csv.size(), 5u);
    EXPECT_EQ(csv[0], "param,value,counter,measured,expected_law,fit");
    EXPECT_NE(read(dir_ / "s" / "summary.txt").find("PASS"), std::string::npos);
}
