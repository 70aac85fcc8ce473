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
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char **argv) {
    CLI::App app{"qaml: state-vector circuit simulation, data encoding and hybrid training"};
    app.require_subcommand(1);

    qaml::cli::RunOptions run_opt;
    auto *run = app.add_subcommand("run", "Simulate a circuit file and print a measurement histogram");
    run->add_option("file", run_opt.file, "Circuit program")->required();
    run->add_option("--shots", run_opt.shots, "Number of shots")->capture_default_str()->check(CLI::PositiveNumber);
    run->add_option("--seed", run_opt.seed, "Sampling seed (QAML_SEED when absent)")
        ->capture_default_str()
        ->envname("QAML_SEED");
    run->add_option("--format", run_opt.format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "text"}));

    qaml::cli::StateOptions state_opt;
    auto *state = app.add_subcommand("state", "Print the exact final state of a circuit file");
    state->add_option("file", state_opt.file, "Circuit program")->required();
    state->add_option("--threshold", state_opt.threshold, "Omit entries with smaller probability")
        ->capture_default_str();

    qaml::cli::EncodeOptions enc_opt;
    auto *encode = app.add_subcommand("encode", "Encode classical data into a quantum state");
    encode->add_option("--method", enc_opt.method, "basis|superposition|angle|amplitude")
        ->required()
        ->check(CLI::IsMember({"basis", "superposition", "angle", "amplitude"}));
    encode->add_option("--input", enc_opt.input, "CSV file or literal input")->required();
    encode->add_option("--axis", enc_opt.axis, "Rotation axis for angle encoding")
        ->capture_default_str()
        ->check(CLI::IsMember({"x", "y", "z", "X", "Y", "Z"}));
    encode->add_flag("--emit-circuit", enc_opt.emit_circuit, "Print the angle-encoding circuit instead");

    qaml::cli::TrainOptions train_opt;
    auto *trainc = app.add_subcommand("train", "Run the hybrid training loop");
    trainc->add_option("--config", train_opt.config, "Training job JSON")->required();
    trainc->add_option("--data", train_opt.data, "Labelled CSV dataset")->required();
    trainc->add_option("--out", train_opt.out, "Report JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    if (*run) return qaml::cli::cmd_run(run_opt, std::cout, std::cerr);
    if (*state) return qaml::cli::cmd_state(state_opt, std::cout, std::cerr);
    if (*encode) return qaml::cli::cmd_encode(enc_opt, std::cout, std::cerr);
    return qaml::cli::cmd_train(train_opt, std::cout, std::cerr);
}
