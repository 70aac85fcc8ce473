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
 * Circuit representation, execution from |0...0>, and computational-basis
 * measurement.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qaml/errors.hpp"
#include "qaml/gates.hpp"
#include "qaml/qstate.hpp"
#include "qaml/random.hpp"

namespace qaml {

struct CircuitOp {
    GateName gate;
    std::vector<std::size_t> targets;
    std::optional<double> angle;

    friend bool operator==(const CircuitOp &, const CircuitOp &) = default;
};

struct Circuit {
    std::size_t n_qubits = 1;
    std::vector<CircuitOp> ops;
    bool measure_all = false;

    friend bool operator==(const Circuit &, const Circuit &) = default;
};

/// Checks target ranges, distinctness, arity and angle presence for every op.
inline void validate(const Circuit &circuit, std::size_t max_qubits = kDefaultMaxQubits) {
    check_qubit_count(circuit.n_qubits, max_qubits);
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        const CircuitOp &op = circuit.ops[i];
        try {
            if (is_rotation(op.gate) != op.angle.has_value()) {
                throw Error(ErrorCode::ArityMismatch,
                            std::string(to_string(op.gate)) +
                                (op.angle ? " takes no angle" : " requires an angle"));
            }
            if (op.angle && !std::isfinite(*op.angle)) {
                throw Error(ErrorCode::NonFiniteAngle, "rotation angle must be finite");
            }
            validate_targets(circuit.n_qubits, arity(op.gate), op.targets);
        } catch (const Error &e) {
            throw ExecutionError(e, i);
        }
    }
}

/// Number of layers when every op is scheduled as early as its qubits allow.
[[nodiscard]] inline std::size_t depth(const Circuit &circuit) {
    std::vector<std::size_t> frontier(circuit.n_qubits, 0);
    std::size_t result = 0;
    for (const CircuitOp &op : circuit.ops) {
        std::size_t layer = 0;
        for (std::size_t t : op.targets) {
            layer = std::max(layer, frontier.at(t));
        }
        ++layer;
        for (std::size_t t : op.targets) {
            frontier[t] = layer;
        }
        result = std::max(result, layer);
    }
    return result;
}

namespace detail {

/// Folds the ops of a validated circuit into `amps` in place.
inline void run_ops(std::span<Complex> amps, const Circuit &circuit) {
    for (const CircuitOp &op : circuit.ops) {
        detail::apply_in_place(amps, circuit.n_qubits, make_gate(op.gate, op.angle), op.targets);
    }
}

} // namespace detail

/// Applies the ops of `circuit` to `initial` in order.
[[nodiscard]] inline StateVector execute_from(const StateVector &initial, const Circuit &circuit) {
    if (initial.n_qubits() != circuit.n_qubits) {
        throw Error(ErrorCode::QubitMismatch,
                    "state has " + std::to_string(initial.n_qubits()) +
                        " qubits, circuit has " + std::to_string(circuit.n_qubits));
    }
    validate(circuit);
    std::vector<Complex> amps = initial.to_vector();
    detail::run_ops(amps, circuit);
    return StateVector::adopt(circuit.n_qubits, std::move(amps));
}

/// Final state of `circuit` started from |0...0>.
[[nodiscard]] inline StateVector execute(const Circuit &circuit,
                                         std::size_t max_qubits = kDefaultMaxQubits) {
    validate(circuit, max_qubits);
    return execute_from(StateVector(circuit.n_qubits, max_qubits), circuit);
}

struct Histogram {
    std::uint64_t shots = 0;
    std::map<std::string, std::uint64_t> counts;

    friend bool operator==(const Histogram &, const Histogram &) = default;
};

namespace detail {

/// Inverse-CDF draw over a cumulative table; zero-probability entries are never chosen.
[[nodiscard]] inline std::size_t draw_index(std::span<const double> cumulative,
                                            Xoshiro256StarStar &rng) {
    const double u = rng.uniform() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto idx = static_cast<std::size_t>(it - cumulative.begin());
    return std::min(idx, cumulative.size() - 1);
}

[[nodiscard]] inline std::vector<double> cumulative_probabilities(const StateVector &state) {
    std::vector<double> cumulative;
    cumulative.reserve(state.dimension());
    double acc = 0.0;
    for (const auto &a : state.amplitudes()) {
        acc += std::norm(a);
        cumulative.push_back(acc);
    }
    return cumulative;
}

} // namespace detail

struct Measurement {
    std::string bits;
    StateVector collapsed;
};

/// One Born-rule sample of the full register; returns the outcome and the post-measurement state.
[[nodiscard]] inline Measurement measure_once(const StateVector &state, std::uint64_t seed) {
    Xoshiro256StarStar rng(seed);
    const std::vector<double> cumulative = detail::cumulative_probabilities(state);
    const std::size_t index = detail::draw_index(cumulative, rng);

    std::vector<Complex> projected(state.dimension(), Complex{0.0, 0.0});
    projected[index] = state[index];
    return {basis_label(index, state.n_qubits()),
            StateVector::adopt(state.n_qubits(), renormalized(std::move(projected)))};
}

/// `shots` independent samples of one final state, drawn from a single seeded stream.
[[nodiscard]] inline Histogram sample_state(const StateVector &state, std::uint64_t shots,
                                            std::uint64_t seed) {
    if (shots == 0) {
        throw Error(ErrorCode::InvalidConfig, "shots must be at least 1");
    }
    Xoshiro256StarStar rng(seed);
    const std::vector<double> cumulative = detail::cumulative_probabilities(state);
    std::vector<std::uint64_t> tally(state.dimension(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        ++tally[detail::draw_index(cumulative, rng)];
    }
    Histogram hist{shots, {}};
    for (std::size_t i = 0; i < tally.size(); ++i) {
        if (tally[i] != 0) {
            hist.counts.emplace(basis_label(i, state.n_qubits()), tally[i]);
        }
    }
    return hist;
}

[[nodiscard]] inline Histogram sample(const Circuit &circuit, std::uint64_t shots,
                                      std::uint64_t seed) {
    return sample_state(execute(circuit), shots, seed);
}

} // namespace qaml
