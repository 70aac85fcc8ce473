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
/**
 * @file
 * JSON interchange: histograms, state listings, training configuration and
 * training reports.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "qaml/circuit.hpp"
#include "qaml/encoding.hpp"
#include "qaml/errors.hpp"
#include "qaml/hybrid.hpp"
#include "qaml/parser.hpp"
#include "qaml/qstate.hpp"

namespace qaml {

using Json = nlohmann::ordered_json;

/// {"shots": N, "counts": {"bitstring": count, ...}} with counts sorted by key.
[[nodiscard]] inline Json to_json(const Histogram &hist) {
    Json counts = Json::object();
    for (const auto &[bits, count] : hist.counts) {
        counts[bits] = count;
    }
    return Json{{"shots", hist.shots}, {"counts", std::move(counts)}};
}

[[nodiscard]] inline Histogram histogram_from_json(const Json &j) {
    Histogram hist;
    hist.shots = j.at("shots").get<std::uint64_t>();
    std::uint64_t total = 0;
    for (const auto &[bits, count] : j.at("counts").items()) {
        hist.counts.emplace(bits, count.get<std::uint64_t>());
        total += count.get<std::uint64_t>();
    }
    if (total != hist.shots) {
        throw Error(ErrorCode::InvalidConfig, "histogram counts do not sum to shots");
    }
    return hist;
}

/// Array of {"basis", "re", "im", "probability"} sorted by index, omitting p < threshold.
[[nodiscard]] inline Json state_listing(const StateVector &state, double threshold = 1e-12) {
    Json out = Json::array();
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        const Complex a = state[i];
        const double p = std::norm(a);
        if (p < threshold) continue;
        out.push_back(Json{{"basis", basis_label(i, state.n_qubits())},
                           {"re", a.real()},
                           {"im", a.imag()},
                           {"probability", p}});
    }
    return out;
}

[[nodiscard]] inline Json to_json(const TrainReport &report) {
    Json j{{"loss_trace", report.loss_trace},
           {"final_params", report.final_params},
           {"iterations_run", report.iterations_run},
           {"converged", report.converged},
           {"final_loss", report.final_loss},
           {"circuit_depth", report.circuit_depth}};
    j["final_histogram"] = report.final_histogram ? to_json(*report.final_histogram) : Json(nullptr);
    return j;
}

namespace detail {

inline void reject_unknown_keys(const Json &j, const std::set<std::string> &allowed,
                                const std::string &where) {
    if (!j.is_object()) {
        throw Error(ErrorCode::InvalidConfig, where + " must be a JSON object");
    }
    for (const auto &[key, value] : j.items()) {
        if (!allowed.contains(key)) {
            throw Error(ErrorCode::InvalidConfig, "unknown field \"" + key + "\" in " + where);
        }
    }
}

template <typename T>
T field(const Json &j, const char *name, const char *kind) {
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception &) {
        throw Error(ErrorCode::InvalidConfig,
                    std::string("field \"") + name + "\" must be " + kind);
    }
}

} // namespace detail

/**
 * Reads a TrainConfig. Recognised fields: learning_rate, max_iterations,
 * gradient_method, fd_step, shots, seed, convergence_tol, initial_params,
 * hadamard_layer, amplitude_adjustment. Missing fields keep their defaults.
 */
[[nodiscard]] inline TrainConfig train_config_from_json(const Json &j,
                                                        const std::set<std::string> &extra_keys = {}) {
    std::set<std::string> allowed{"learning_rate", "max_iterations", "gradient_method",
                                  "fd_step",       "shots",          "seed",
                                  "convergence_tol", "initial_params", "hadamard_layer",
                                  "amplitude_adjustment"};
    allowed.insert(extra_keys.begin(), extra_keys.end());
    detail::reject_unknown_keys(j, allowed, "train config");

    TrainConfig c;
    if (j.contains("learning_rate")) c.learning_rate = detail::field<double>(j, "learning_rate", "a number");
    if (j.contains("max_iterations"))
        c.max_iterations = detail::field<std::uint64_t>(j, "max_iterations", "a non-negative integer");
    if (j.contains("gradient_method")) {
        const auto m = detail::field<std::string>(j, "gradient_method", "a string");
        if (m == "parameter_shift") {
            c.gradient_method = GradientMethod::ParameterShift;
        } else if (m == "finite_difference") {
            c.gradient_method = GradientMethod::FiniteDifference;
        } else {
            throw Error(ErrorCode::InvalidConfig,
                        "gradient_method must be parameter_shift or finite_difference");
        }
    }
    if (j.contains("fd_step")) c.fd_step = detail::field<double>(j, "fd_step", "a number");
    if (j.contains("shots")) c.shots = detail::field<std::uint64_t>(j, "shots", "a non-negative integer");
    if (j.contains("seed")) c.seed = detail::field<std::uint64_t>(j, "seed", "a 64-bit unsigned integer");
    if (j.contains("convergence_tol"))
        c.convergence_tol = detail::field<double>(j, "convergence_tol", "a number");
    if (j.contains("initial_params"))
        c.initial_params = detail::field<std::vector<double>>(j, "initial_params", "an array of numbers");
    if (j.contains("hadamard_layer")) c.hadamard_layer = detail::field<bool>(j, "hadamard_layer", "a boolean");
    if (j.contains("amplitude_adjustment"))
        c.amplitude_adjustment = detail::field<bool>(j, "amplitude_adjustment", "a boolean");
    validate(c);
    return c;
}

[[nodiscard]] inline Json to_json(const TrainConfig &c) {
    Json j{{"learning_rate", c.learning_rate},
           {"max_iterations", c.max_iterations},
           {"gradient_method", std::string(to_string(c.gradient_method))}};
    if (c.fd_step) j["fd_step"] = *c.fd_step;
    j["shots"] = c.shots;
    j["seed"] = c.seed;
    j["convergence_tol"] = c.convergence_tol;
    if (c.initial_params) j["initial_params"] = *c.initial_params;
    j["hadamard_layer"] = c.hadamard_layer;
    j["amplitude_adjustment"] = c.amplitude_adjustment;
    return j;
}

/// A complete training job: the TrainConfig fields plus "ansatz" (template DSL text)
/// and "encoding" ({"method": ..., "axis": ...}).
struct TrainJob {
    AnsatzTemplate ansatz;
    EncodingSpec encoding;
    TrainConfig config;
};

[[nodiscard]] inline EncodingSpec encoding_spec_from_json(const Json &j) {
    detail::reject_unknown_keys(j, {"method", "axis"}, "encoding");
    EncodingSpec spec;
    const auto method = encoding_method_from_string(detail::field<std::string>(j, "method", "a string"));
    if (!method) {
        throw Error(ErrorCode::InvalidConfig,
                    "encoding method must be basis, superposition, angle or amplitude");
    }
    spec.method = *method;
    if (j.contains("axis")) {
        if (spec.method != EncodingMethod::Angle) {
            throw Error(ErrorCode::InvalidConfig, "axis applies to angle encoding only");
        }
        const auto axis = axis_from_string(detail::field<std::string>(j, "axis", "a string"));
        if (!axis) {
            throw Error(ErrorCode::InvalidConfig, "axis must be x, y or z");
        }
        spec.axis = axis;
    }
    return spec;
}

[[nodiscard]] inline TrainJob train_job_from_json(const Json &j, const std::string &origin = "<config>") {
    TrainJob job;
    job.config = train_config_from_json(j, {"ansatz", "encoding"});
    if (!j.contains("ansatz")) {
        throw Error(ErrorCode::InvalidConfig, "missing field \"ansatz\"");
    }
    try {
        job.ansatz = parse_template(
            SourceProgram{detail::field<std::string>(j, "ansatz", "a string"), origin + ":ansatz"});
    } catch (const ParseError &e) {
        throw Error(ErrorCode::InvalidConfig, e.what());
    }
    if (j.contains("encoding")) {
        job.encoding = encoding_spec_from_json(j.at("encoding"));
    }
    return job;
}

} // namespace qaml
