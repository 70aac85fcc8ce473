// Copyright 2026 The qaml Authors.
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

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "commands.hpp"

using namespace qaml;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qaml_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string &name, const std::string &text) const {
        const fs::path p = dir_ / name;
        std::ofstream(p, std::ios::binary) << text;
        return p.string();
    }

    fs::path dir_;
};

struct Result {
    int code;
    std::string out;
    std::string err;
};

template <typename Opt, typename Fn>
Result invoke(Fn fn, const Opt &opt) {
    std::ostringstream out, err;
    const int code = fn(opt, out, err);
    return {code, out.str(), err.str()};
}

/// Runs the real binary; returns exit status and stdout.
Result spawn(const std::string &args) {
    std::string output;
    FILE *pipe = popen((std::string(QAML_CLI_PATH) + " " + args + " 2>/dev/null").c_str(), "r");
    if (pipe == nullptr) return {-1, "", ""};
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output, ""};
}

} // namespace

TEST_F(CliTest, RunBellHasOnlyCorrelatedKeys) {
    const auto file = write("bell.qc", "qubits 2\nh 0\ncx 0 1\nmeasure all\n");
    const Result r = invoke(cli::cmd_run, cli::RunOptions{file, 10000, 7, "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["shots"], 10000);
    for (const auto &[key, value] : j["counts"].items()) EXPECT_TRUE(key == "00" || key == "11") << key;
}

TEST_F(CliTest, RunEmptyCircuitIsExact) {
    const auto file = write("empty.qc", "qubits 3\n");
    const Result r = invoke(cli::cmd_run, cli::RunOptions{file, 5, 0, "json"});
    EXPECT_EQ(r.out, "{\"shots\":5,\"counts\":{\"000\":5}}\n");
}

TEST_F(CliTest, RunTextFormat) {
    const auto file = write("x.qc", "qubits 2\nx 1\n");
    const Result r = invoke(cli::cmd_run, cli::RunOptions{file, 4, 0, "text"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("01"), std::string::npos);
    EXPECT_NE(r.out.find("1.000000"), std::string::npos);
}

TEST_F(CliTest, RunMalformedFileExitsOneWithLine) {
    const auto file = write("bad.qc", "qubits 2\nh 0\nfoo 1\n");
    const Result r = invoke(cli::cmd_run, cli::RunOptions{file, 10, 0, "json"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find(":3:"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, StateListing) {
    const auto h = write("h.qc", "qubits 1\nh 0\n");
    const Json j = Json::parse(invoke(cli::cmd_state, cli::StateOptions{h, 1e-12}).out);
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[0]["basis"], "0");
    EXPECT_EQ(j[1]["basis"], "1");
    for (const auto &e : j) {
        EXPECT_NEAR(e["re"].get<double>(), 0.70711, 1e-5);
        EXPECT_EQ(e["im"].get<double>(), 0.0);
        EXPECT_NEAR(e["probability"].get<double>(), 0.5, 1e-12);
    }

    const auto empty = write("e.qc", "qubits 2\n");
    const Json k = Json::parse(invoke(cli::cmd_state, cli::StateOptions{empty, 1e-12}).out);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0]["basis"], "00");
    EXPECT_EQ(k[0]["re"], 1.0);

    const auto rz = write("rz.qc", "qubits 1\nrz 0 pi\n");
    const Json z = Json::parse(invoke(cli::cmd_state, cli::StateOptions{rz, 1e-12}).out);
    ASSERT_EQ(z.size(), 1u);
    EXPECT_EQ(z[0]["basis"], "0");
    EXPECT_NEAR(z[0]["re"].get<double>(), 0.0, 1e-15);
    EXPECT_NEAR(z[0]["im"].get<double>(), -1.0, 1e-15);
}

TEST_F(CliTest, EncodeAmplitudeAndBasis) {
    const Result a = invoke(cli::cmd_encode, cli::EncodeOptions{"amplitude", "1.2,2.7,1.1,0.5", "y", false});
    ASSERT_EQ(a.code, 0) << a.err;
    const Json j = Json::parse(a.out);
    const double want[] = {0.37592, 0.84581, 0.34459, 0.15663};
    ASSERT_EQ(j.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(j[i]["re"].get<double>(), want[i], 1e-5);

    const Json b = Json::parse(invoke(cli::cmd_encode, cli::EncodeOptions{"basis", "110", "y", false}).out);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0]["basis"], "110");
    EXPECT_EQ(b[0]["re"], 1.0);

    const Json s = Json::parse(
        invoke(cli::cmd_encode, cli::EncodeOptions{"superposition", "100,010,001", "y", false}).out);
    EXPECT_EQ(s.size(), 3u);
}

TEST_F(CliTest, EncodeErrorsExitThree) {
    const Result z = invoke(cli::cmd_encode, cli::EncodeOptions{"amplitude", "0,0", "y", false});
    EXPECT_EQ(z.code, 3);
    EXPECT_NE(z.err.find("ZeroVector"), std::string::npos);
    EXPECT_EQ(invoke(cli::cmd_encode, cli::EncodeOptions{"basis", "12", "y", false}).code, 3);
    EXPECT_EQ(invoke(cli::cmd_encode, cli::EncodeOptions{"superposition", "01,01", "y", false}).code, 3);
}

TEST_F(CliTest, EncodeAngleEmitsCircuitAndReadsCsvFiles) {
    const Result c = invoke(cli::cmd_encode, cli::EncodeOptions{"angle", "0.5,1", "x", true});
    EXPECT_EQ(c.out, "qubits 2\nrx 0 0.5\nrx 1 1\n");
    EXPECT_EQ(parse(c.out).ops.size(), 2u);

    const auto csv = write("f.csv", "f0,f1\n3,4\n1,0\n");
    const Json rows = Json::parse(invoke(cli::cmd_encode, cli::EncodeOptions{"amplitude", csv, "y", false}).out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_NEAR(rows[0][0]["re"].get<double>(), 0.6, 1e-15);
}

TEST_F(CliTest, TrainSeparableTask) {
    const auto cfg = write("cfg.json", R"({"ansatz": "qubits 1\nry 0 p0\n",
        "encoding": {"method": "angle", "axis": "y"},
        "learning_rate": 0.1, "max_iterations": 500, "gradient_method": "parameter_shift",
        "shots": 0, "seed": 1, "convergence_tol": 1e-6, "initial_params": [1.0]})");
    const auto data = write("d.csv", "x,label\n0,1\n3.141592653589793,-1\n");
    const auto out = (dir_ / "report.json").string();
    const Result r = invoke(cli::cmd_train, cli::TrainOptions{cfg, data, out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("final loss"), std::string::npos);
    std::ifstream in(out);
    const Json report = Json::parse(in);
    EXPECT_LT(report["final_loss"].get<double>(), 0.05);
    EXPECT_EQ(report["loss_trace"].size(), report["iterations_run"].get<std::size_t>());
}

TEST_F(CliTest, TrainZeroIterations) {
    const auto cfg = write("cfg.json", R"({"ansatz": "qubits 1\nry 0 p0\n", "max_iterations": 0})");
    const auto data = write("d.csv", "0,1\n");
    const auto out = (dir_ / "report.json").string();
    ASSERT_EQ(invoke(cli::cmd_train, cli::TrainOptions{cfg, data, out}).code, 0);
    std::ifstream in(out);
    const Json report = Json::parse(in);
    EXPECT_TRUE(report["loss_trace"].empty());
    EXPECT_FALSE(report["converged"].get<bool>());
}

TEST_F(CliTest, TrainErrorExitCodes) {
    const auto good_cfg = write("cfg.json", R"({"ansatz": "qubits 1\nry 0 p0\n"})");
    const auto out = (dir_ / "r.json").string();

    const auto zero_label = write("d0.csv", "0.1,0\n");
    const Result bad_label = invoke(cli::cmd_train, cli::TrainOptions{good_cfg, zero_label, out});
    EXPECT_EQ(bad_label.code, 5);
    EXPECT_NE(bad_label.err.find("label must be -1 or +1"), std::string::npos);

    const auto mismatch = write("d1.csv", "0.1,0.2,1\n");
    EXPECT_EQ(invoke(cli::cmd_train, cli::TrainOptions{good_cfg, mismatch, out}).code, 5);
    EXPECT_EQ(invoke(cli::cmd_train, cli::TrainOptions{good_cfg, (dir_ / "none.csv").string(), out}).code, 5);

    const auto data = write("d.csv", "0.1,1\n");
    EXPECT_EQ(invoke(cli::cmd_train, cli::TrainOptions{write("a.json", "{not json"), data, out}).code, 4);
    EXPECT_EQ(invoke(cli::cmd_train, cli::TrainOptions{write("b.json", R"({"ansatz":"qubits 1\nry 0 p0\n","bogus":1})"), data, out}).code, 4);
    EXPECT_EQ(invoke(cli::cmd_train, cli::TrainOptions{write("c.json", R"({"learning_rate":0.1})"), data, out}).code, 4);
    EXPECT_EQ(invoke(cli::cmd_train, cli::TrainOptions{write("e.json", R"({"ansatz":"qubits 1\nry 0 p0\n","initial_params":[1,2]})"), data, out}).code, 4);
}

TEST_F(CliTest, BinaryOutputsAreByteIdenticalAndHonourEnvSeed) {
    const auto file = write("c.qc", "qubits 3\nh 0\nry 1 pi/3\ncx 0 2\nmeasure all\n");
    const Result a = spawn("run " + file + " --shots 2000 --seed 11");
    const Result b = spawn("run " + file + " --shots 2000 --seed 11");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);

    unsetenv("QAML_SEED");
    const Result env = spawn("run " + file + " --shots 2000");
    setenv("QAML_SEED", "11", 1);
    const Result via_env = spawn("run " + file + " --shots 2000");
    unsetenv("QAML_SEED");
    EXPECT_EQ(via_env.out, a.out);
    EXPECT_EQ(env.out, spawn("run " + file + " --shots 2000 --seed 0").out);

    setenv("QAML_SEED", "11", 1);
    const Result flag_wins = spawn("run " + file + " --shots 2000 --seed 0");
    unsetenv("QAML_SEED");
    EXPECT_EQ(flag_wins.out, env.out);
}

TEST_F(CliTest, BinaryExitCodes) {
    EXPECT_EQ(spawn("run " + write("bad.qc", "qubits 1\nx 3\n")).code, 1);
    EXPECT_EQ(spawn("encode --method amplitude --input 0,0").code, 3);
    EXPECT_EQ(spawn("state " + write("ok.qc", "qubits 1\n")).code, 0);
}
