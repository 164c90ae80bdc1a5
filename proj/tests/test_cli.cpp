// Copyright 2026 The sicrep Authors
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

#include <filesystem>
#include <sstream>

#include "sicrep/io.hpp"
#include "sicrep_cli/cli.hpp"

namespace fs = std::filesystem;
using namespace sicrep;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("sicrep_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& text) {
        const std::string path = (dir_ / name).string();
        io::write_file(path, text);
        return path;
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(std::vector<std::string> args) {
        out_.str("");
        err_.str("");
        return cli::run(args, out_, err_);
    }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

const char* kPlus = R"({"kind": "density_matrix", "dim": 2, "matrix": [[0.5, 0], [0.5, 0], [0.5, 0], [0.5, 0]]})";

}  // namespace

TEST_F(CliTest, HelpIsSuccess) { EXPECT_EQ(run({"--help"}), cli::kOk); }

TEST_F(CliTest, MissingSubcommandIsInputError) { EXPECT_EQ(run({}), cli::kInputError); }

TEST_F(CliTest, ConvertStateRoundTrip) {
    const std::string in = file("plus.json", kPlus);
    ASSERT_EQ(run({"convert", in, "--out", path("p.json")}), cli::kOk) << err_.str();
    const ProbVector p = io::prob_from_json(io::read_file(path("p.json")));
    EXPECT_NEAR(p.probs.sum(), 1.0, 1e-12);
    ASSERT_EQ(run({"convert", path("p.json"), "--out", path("rho.json")}), cli::kOk) << err_.str();
    const DensityMatrix rho = io::density_from_json(io::read_file(path("rho.json")));
    EXPECT_LT((rho.matrix.array() - cplx(0.5, 0)).abs().maxCoeff(), 1e-12);
}

TEST_F(CliTest, MalformedAndMissingInputs) {
    EXPECT_EQ(run({"convert", file("bad.json", "{\"dim\": ")}), cli::kInputError);
    EXPECT_EQ(run({"convert", path("absent.json")}), cli::kInputError);
    EXPECT_EQ(run({"analyze", file("odd.json", R"({"kind": "pseudostochastic", "matrix": [[1]]})")}),
              cli::kInputError);
    EXPECT_EQ(run({"convert", "--sic", "nonsense"}), cli::kInputError);
}

TEST_F(CliTest, NonCompletelyPositiveMapHasNoKrausForm) {
    ASSERT_EQ(run({"convert", "--ptp", "transposition", "--out", path("t.json")}), cli::kOk) << err_.str();
    EXPECT_EQ(run({"convert", path("t.json")}), cli::kPhysicalityError);
}

TEST_F(CliTest, NegativeSpectrumIsDomainError) {
    ASSERT_EQ(run({"convert", "--ptp", "transposition", "--out", path("t.json")}), cli::kOk);
    EXPECT_EQ(run({"analyze", path("t.json")}), cli::kDomainError);
}

TEST_F(CliTest, UnphysicalStateIsPhysicalityError) {
    const std::string in =
        file("neg.json", R"({"kind": "density_matrix", "dim": 2, "matrix": [[2, 0], [0, 0], [0, 0], [-1, 0]]})");
    EXPECT_EQ(run({"convert", in}), cli::kPhysicalityError);
}

TEST_F(CliTest, SimulateIsSeedDeterministic) {
    ASSERT_EQ(run({"convert", "--ptp", "reduction", "--out", path("r.json")}), cli::kOk);
    ASSERT_EQ(run({"simulate", path("r.json"), "--shots", "500", "--seed", "4"}), cli::kOk) << err_.str();
    const std::string a = out_.str();
    ASSERT_EQ(run({"simulate", path("r.json"), "--shots", "500", "--seed", "4"}), cli::kOk);
    EXPECT_EQ(out_.str(), a);
    ASSERT_EQ(run({"simulate", path("r.json"), "--shots", "500", "--seed", "5"}), cli::kOk);
    EXPECT_NE(out_.str(), a);
    EXPECT_EQ(io::counts_from_json(a).shots, 500);
}

TEST_F(CliTest, AnalyzeWritesReportAndCsv) {
    const std::string gen =
        file("g.json", R"({"kind": "gksl", "dim": 2, "hamiltonian": [[0.5, 0], [0, 0], [0, 0], [-0.5, 0]],
                          "noise_ops": [[[0.1, 0], [0, 0], [0, 0], [-0.1, 0]]]})");
    ASSERT_EQ(run({"convert", gen, "--time", "1.0", "--out", path("s.json")}), cli::kOk) << err_.str();
    ASSERT_EQ(run({"analyze", path("s.json"), "--restarts", "2", "--csv", path("s.csv")}), cli::kOk) << err_.str();
    const std::string report = out_.str();
    EXPECT_NE(report.find("delta_nmark"), std::string::npos);
    EXPECT_NE(report.find("delta_quant"), std::string::npos);
    EXPECT_TRUE(fs::exists(path("s.csv")));
}

TEST_F(CliTest, QutritFiducialSic) {
    const std::string sic = std::string("fiducial:") + SICREP_TEST_DATA "/fiducial_d3.json";
    const std::string in = file(
        "rho.json",
        R"({"kind": "density_matrix", "dim": 3, "matrix": [[1, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0]]})");
    ASSERT_EQ(run({"convert", in, "--sic", sic}), cli::kOk) << err_.str();
    EXPECT_EQ(io::prob_from_json(out_.str()).probs.size(), 9);
    EXPECT_EQ(run({"convert", in}), cli::kInputError);
}
