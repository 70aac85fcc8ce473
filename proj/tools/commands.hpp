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
// Subcommand bodies for the qaml CLI, kept separate from argument parsing
// so tests can drive them in-process.
#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qaml/json_io.hpp"
#include "qaml/qaml.hpp"

namespace qaml::cli {

enum ExitCode : int {
    kOk = 0,
    kParseFailure = 1,
    kSimulationFailure = 2,
    kEncodingFailure = 3,
    kConfigFailure = 4,
    kDatasetFailure = 5,
};

struct RunOptions {
    std::string file;
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    std::string format = "json";
};

struct StateOptions {
    std::string file;
    double threshold = 1e-12;
};

struct EncodeOptions {
    std::string method;
    std::string input;
    std::string axis = "y";
    bool emit_circuit = false;
};

struct TrainOptions {
    std::string config;
    std::string data;
    std::string out;
};

namespace detail {

inline bool read_file(const std::string &path, std::string &text) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    return true;
}

inline bool load_circuit(const std::string &path, Circuit &circuit, std::ostream &err) {
    std::string text;
    if (!read_file(path, text)) {
        err << "error: cannot read " << path << "\n";
        return false;
    }
    try {
        circuit = parse(SourceProgram{text, path});
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return false;
    }
    return true;
}

} // namespace detail

inline int cmd_run(const RunOptions &opt, std::ostream &out, std::ostream &err) {
    Circuit circuit;
    if (!detail::load_circuit(opt.file, circuit, err)) return kParseFailure;
    Histogram hist;
    try {
        hist = sample(circuit, opt.shots, opt.seed);
    } catch (const Error &e) {
        err << "simulation error: " << e.what() << "\n";
        return kSimulationFailure;
    }
    if (opt.format == "text") {
        const std::size_t width = std::max<std::size_t>(circuit.n_qubits, 9);
        out << std::left << std::setw(static_cast<int>(width)) << "bitstring" << "  "
            << std::right << std::setw(10) << "count" << "  " << std::setw(9) << "frequency" << "\n";
        for (const auto &[bits, count] : hist.counts) {
            out << std::left << std::setw(static_cast<int>(width)) << bits << "  " << std::right
                << std::setw(10) << count << "  " << std::fixed << std::setprecision(6)
                << std::setw(9) << static_cast<double>(count) / static_cast<double>(hist.shots)
                << "\n";
        }
    } else {
        out << to_json(hist).dump() << "\n";
    }
    return kOk;
}

inline int cmd_state(const StateOptions &opt, std::ostream &out, std::ostream &err) {
    Circuit circuit;
    if (!detail::load_circuit(opt.file, circuit, err)) return kParseFailure;
    try {
        out << state_listing(execute(circuit), opt.threshold).dump() << "\n";
    } catch (const Error &e) {
        err << "simulation error: " << e.what() << "\n";
        return kSimulationFailure;
    }
    return kOk;
}

/// `--input` is a file path when such a file exists, otherwise literal text.
/// Each non-blank line is one input; a single input prints one state listing,
/// several print an array of listings.
inline int cmd_encode(const EncodeOptions &opt, std::ostream &out, std::ostream &err) {
    std::string text = opt.input;
    if (std::error_code ec; std::filesystem::is_regular_file(opt.input, ec)) {
        if (!detail::read_file(opt.input, text)) {
            err << "error: cannot read " << opt.input << "\n";
            return kEncodingFailure;
        }
    }
    try {
        const auto method = encoding_method_from_string(opt.method);
        if (!method) {
            throw Error(ErrorCode::UnsupportedEncoding, "unknown method \"" + opt.method + "\"");
        }
        const auto axis = axis_from_string(opt.axis);
        if (!axis) {
            throw Error(ErrorCode::UnsupportedEncoding, "axis must be x, y or z");
        }

        std::vector<std::string> lines;
        {
            std::istringstream in(text);
            std::string line;
            while (std::getline(in, line)) {
                if (!qaml::detail::trim(line).empty()) lines.emplace_back(qaml::detail::trim(line));
            }
        }
        if (lines.empty()) {
            throw Error(ErrorCode::EmptyInput, "no input given");
        }

        std::vector<Json> results;
        if (*method == EncodingMethod::Basis || *method == EncodingMethod::Superposition) {
            for (const auto &line : lines) {
                std::vector<std::string> bits;
                for (auto cell : qaml::detail::split_commas(line)) bits.emplace_back(cell);
                if (*method == EncodingMethod::Basis) {
                    if (bits.size() != 1) {
                        throw Error(ErrorCode::InvalidBitstring, "basis encoding takes one bitstring per line");
                    }
                    results.push_back(state_listing(encode_basis(bits.front())));
                } else {
                    results.push_back(state_listing(encode_superposition(bits)));
                }
            }
        } else {
            std::string joined;
            for (const auto &line : lines) joined += line + "\n";
            std::istringstream in(joined);
            const std::vector<FeatureVector> rows = read_feature_csv(in);
            if (rows.empty()) {
                throw Error(ErrorCode::EmptyInput, "no feature rows given");
            }
            for (const auto &row : rows) {
                if (*method == EncodingMethod::Amplitude) {
                    results.push_back(state_listing(encode_amplitude(row)));
                } else {
                    const Circuit c = encode_angle(row, *axis);
                    if (opt.emit_circuit) {
                        out << to_dsl(c);
                        continue;
                    }
                    results.push_back(state_listing(execute(c)));
                }
            }
        }
        if (results.size() == 1) {
            out << results.front().dump() << "\n";
        } else if (!results.empty()) {
            out << Json(results).dump() << "\n";
        }
    } catch (const Error &e) {
        err << "encoding error: " << e.what() << "\n";
        return kEncodingFailure;
    }
    return kOk;
}

/// Reads "features..., label" rows.
inline std::vector<LabeledSample> read_labeled_csv(std::istream &in) {
    std::vector<LabeledSample> data;
    for (auto &row : read_csv_rows(in)) {
        if (row.size() < 2) {
            throw Error(ErrorCode::InvalidDataset, "each row needs at least one feature and a label");
        }
        const double label = row.back();
        if (label != -1.0 && label != 1.0) {
            throw Error(ErrorCode::InvalidDataset, "label must be -1 or +1");
        }
        row.pop_back();
        if (!data.empty() && row.size() != data.front().features.values.size()) {
            throw Error(ErrorCode::InvalidDataset, "rows have differing feature counts");
        }
        data.push_back({FeatureVector{std::move(row)}, label});
    }
    if (data.empty()) {
        throw Error(ErrorCode::EmptyDataset, "dataset has no rows");
    }
    return data;
}

inline int cmd_train(const TrainOptions &opt, std::ostream &out, std::ostream &err) {
    (void)out;
    TrainJob job;
    {
        std::string text;
        if (!detail::read_file(opt.config, text)) {
            err << "config error: cannot read " << opt.config << "\n";
            return kConfigFailure;
        }
        try {
            job = train_job_from_json(Json::parse(text), opt.config);
        } catch (const nlohmann::json::exception &e) {
            err << "config error: " << e.what() << "\n";
            return kConfigFailure;
        } catch (const Error &e) {
            err << "config error: " << e.what() << "\n";
            return kConfigFailure;
        }
    }

    std::vector<LabeledSample> data;
    {
        std::ifstream in(opt.data);
        if (!in) {
            err << "dataset error: cannot read " << opt.data << "\n";
            return kDatasetFailure;
        }
        try {
            data = read_labeled_csv(in);
        } catch (const Error &e) {
            err << "dataset error: " << e.what() << "\n";
            return kDatasetFailure;
        }
    }

    TrainReport report;
    try {
        report = train(job.ansatz, data, job.encoding, job.config);
    } catch (const Error &e) {
        switch (e.code()) {
        case ErrorCode::InvalidConfig:
        case ErrorCode::ParamCountMismatch:
        case ErrorCode::NonFiniteParam:
        case ErrorCode::InvalidTemplate:
        case ErrorCode::UnsupportedEncoding:
            err << "config error: " << e.what() << "\n";
            return kConfigFailure;
        default:
            err << "dataset error: " << e.what() << "\n";
            return kDatasetFailure;
        }
    }

    std::ofstream file(opt.out, std::ios::binary);
    if (!file) {
        err << "config error: cannot write " << opt.out << "\n";
        return kConfigFailure;
    }
    file << to_json(report).dump(2) << "\n";
    err << "final loss " << report.final_loss << " after " << report.iterations_run
        << " iterations" << (report.converged ? " (converged)" : "") << "\n";
    return kOk;
}

} // namespace qaml::cli
