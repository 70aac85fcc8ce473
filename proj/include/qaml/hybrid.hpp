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
 * Hybrid quantum-classical training.
 *
 * One quantum pass for a sample is: prepare |0...0>, optionally apply a
 * Hadamard layer, encode the features, apply the parameterized ansatz,
 * optionally apply the inversion-about-the-mean diffusion, then read out
 * <Z> on qubit 0. The classical side computes the mean squared error against
 * labels in {-1, +1} and takes a plain gradient-descent step.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qaml/circuit.hpp"
#include "qaml/encoding.hpp"
#include "qaml/errors.hpp"
#include "qaml/gates.hpp"
#include "qaml/qstate.hpp"
#include "qaml/random.hpp"

namespace qaml {

/// Reference to trainable parameter p_index.
struct ParamSlot {
    std::size_t index;
    friend bool operator==(const ParamSlot &, const ParamSlot &) = default;
};

using AngleExpr = std::variant<double, ParamSlot>;

struct TemplateOp {
    GateName gate;
    std::vector<std::size_t> targets;
    std::optional<AngleExpr> angle;

    friend bool operator==(const TemplateOp &, const TemplateOp &) = default;
};

/// A circuit whose rotation angles may be parameter slots p0 ... p{m-1}.
class AnsatzTemplate {
  public:
    AnsatzTemplate() = default;

    /// Validates the ops. When `n_params` is omitted it is one past the largest slot used.
    AnsatzTemplate(std::size_t n_qubits, std::vector<TemplateOp> ops,
                   std::optional<std::size_t> n_params = std::nullopt)
        : n_qubits_(n_qubits), ops_(std::move(ops)) {
        check_qubit_count(n_qubits_, kDefaultMaxQubits);
        std::size_t highest = 0;
        bool any = false;
        for (std::size_t i = 0; i < ops_.size(); ++i) {
            const TemplateOp &op = ops_[i];
            try {
                if (is_rotation(op.gate) != op.angle.has_value()) {
                    throw Error(ErrorCode::InvalidTemplate,
                                std::string(to_string(op.gate)) +
                                    (op.angle ? " takes no angle" : " requires an angle"));
                }
                validate_targets(n_qubits_, arity(op.gate), op.targets);
            } catch (const Error &e) {
                throw ExecutionError(e, i);
            }
            if (op.angle) {
                if (const auto *slot = std::get_if<ParamSlot>(&*op.angle)) {
                    highest = std::max(highest, slot->index);
                    any = true;
                } else if (!std::isfinite(std::get<double>(*op.angle))) {
                    throw ExecutionError(
                        Error(ErrorCode::NonFiniteAngle, "literal angle must be finite"), i);
                }
            }
        }
        n_params_ = n_params.value_or(any ? highest + 1 : 0);
        std::vector<bool> used(n_params_, false);
        for (const TemplateOp &op : ops_) {
            if (op.angle) {
                if (const auto *slot = std::get_if<ParamSlot>(&*op.angle)) {
                    if (slot->index >= n_params_) {
                        throw Error(ErrorCode::InvalidTemplate,
                                    "slot p" + std::to_string(slot->index) +
                                        " exceeds parameter count " + std::to_string(n_params_));
                    }
                    used[slot->index] = true;
                }
            }
        }
        for (std::size_t j = 0; j < n_params_; ++j) {
            if (!used[j]) {
                throw Error(ErrorCode::InvalidTemplate,
                            "parameter p" + std::to_string(j) + " is never used");
            }
        }
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t n_params() const noexcept { return n_params_; }
    [[nodiscard]] const std::vector<TemplateOp> &ops() const noexcept { return ops_; }

    friend bool operator==(const AnsatzTemplate &, const AnsatzTemplate &) = default;

  private:
    std::size_t n_qubits_ = 1;
    std::vector<TemplateOp> ops_;
    std::size_t n_params_ = 0;
};

namespace detail {

inline void check_params(const AnsatzTemplate &tmpl, std::span<const double> params) {
    if (params.size() != tmpl.n_params()) {
        throw Error(ErrorCode::ParamCountMismatch,
                    "template has " + std::to_string(tmpl.n_params()) + " parameters, got " +
                        std::to_string(params.size()));
    }
    for (std::size_t j = 0; j < params.size(); ++j) {
        if (!std::isfinite(params[j])) {
            throw Error(ErrorCode::NonFiniteParam, "parameter p" + std::to_string(j) +
                                                       " is not finite");
        }
    }
}

/// Bind with an extra angle offset on the op at `shifted_op` (used by the shift rule).
[[nodiscard]] inline Circuit bind_shifted(const AnsatzTemplate &tmpl,
                                          std::span<const double> params,
                                          std::optional<std::size_t> shifted_op, double offset) {
    Circuit circuit{tmpl.n_qubits(), {}, false};
    circuit.ops.reserve(tmpl.ops().size());
    for (std::size_t i = 0; i < tmpl.ops().size(); ++i) {
        const TemplateOp &op = tmpl.ops()[i];
        std::optional<double> angle;
        if (op.angle) {
            if (const auto *slot = std::get_if<ParamSlot>(&*op.angle)) {
                angle = params[slot->index];
            } else {
                angle = std::get<double>(*op.angle);
            }
            if (shifted_op == i) {
                *angle += offset;
            }
        }
        circuit.ops.push_back({op.gate, op.targets, angle});
    }
    return circuit;
}

} // namespace detail

/// Substitutes params[j] for every slot p_j.
[[nodiscard]] inline Circuit bind(const AnsatzTemplate &tmpl, std::span<const double> params) {
    detail::check_params(tmpl, params);
    return detail::bind_shifted(tmpl, params, std::nullopt, 0.0);
}

[[nodiscard]] inline Circuit bind(const AnsatzTemplate &tmpl, std::initializer_list<double> params) {
    return bind(tmpl, std::span<const double>(params.begin(), params.size()));
}

/// One H on every qubit.
[[nodiscard]] inline Circuit hadamard_layer(std::size_t n_qubits) {
    check_qubit_count(n_qubits, kDefaultMaxQubits);
    Circuit circuit{n_qubits, {}, false};
    for (std::size_t q = 0; q < n_qubits; ++q) {
        circuit.ops.push_back({GateName::H, {q}, std::nullopt});
    }
    return circuit;
}

namespace detail {
inline void diffuse_in_place(std::span<Complex> amps) {
    Complex mean{};
    for (const auto &a : amps) {
        mean += a;
    }
    mean /= static_cast<double>(amps.size());
    for (auto &a : amps) {
        a = 2.0 * mean - a;
    }
}
} // namespace detail

/// Inversion about the mean, (2|s><s| - I) with |s> the uniform superposition.
[[nodiscard]] inline StateVector diffusion(const StateVector &state) {
    std::vector<Complex> amps = state.to_vector();
    detail::diffuse_in_place(amps);
    return StateVector::adopt(state.n_qubits(), std::move(amps));
}

/// Flips the sign of the amplitude of basis state `bits` (a marking oracle).
[[nodiscard]] inline StateVector phase_flip(const StateVector &state, std::string_view bits) {
    if (bits.size() != state.n_qubits()) {
        throw Error(ErrorCode::InvalidBitstring, "marked bitstring length differs from qubit count");
    }
    std::vector<Complex> amps = state.to_vector();
    amps[basis_index(bits)] *= -1.0;
    return StateVector::adopt(state.n_qubits(), std::move(amps));
}

namespace detail {
[[nodiscard]] inline double expectation_z(std::span<const Complex> amps, std::size_t n_qubits,
                                          std::size_t qubit) noexcept {
    const std::size_t mask = qubit_mask(n_qubits, qubit);
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        acc += (i & mask) ? -p : p;
    }
    return acc;
}
} // namespace detail

/// <Z> on `qubit`: sum of p_i weighted +1 where the qubit's bit is 0 and -1 where it is 1.
[[nodiscard]] inline double expectation_z(const StateVector &state, std::size_t qubit) {
    if (qubit >= state.n_qubits()) {
        throw Error(ErrorCode::TargetOutOfRange,
                    "qubit " + std::to_string(qubit) + " outside [0, " +
                        std::to_string(state.n_qubits()) + ")");
    }
    return detail::expectation_z(state.amplitudes(), state.n_qubits(), qubit);
}

// ---------------------------------------------------------------------------
// Loss and gradients

enum class GradientMethod { ParameterShift, FiniteDifference };

[[nodiscard]] constexpr std::string_view to_string(GradientMethod m) noexcept {
    return m == GradientMethod::ParameterShift ? "parameter_shift" : "finite_difference";
}

/// A prepared input: the state the ansatz acts on is `prefix` applied to `initial`.
struct PreparedInput {
    StateVector initial;
    Circuit prefix;
};

/**
 * Loss over the readout <Z> of qubit `readout`.
 *
 * Expectation: L = mean_k f_k. MeanSquaredError: L = mean_k (f_k - y_k)^2.
 * f_k is the readout after preparing input k, applying the bound ansatz and,
 * when `amplitude_adjustment` is set, the diffusion operator.
 */
struct Loss {
    enum class Kind { Expectation, MeanSquaredError };

    Kind kind = Kind::Expectation;
    std::vector<PreparedInput> inputs;
    std::vector<double> labels;
    std::size_t readout = 0;
    bool amplitude_adjustment = false;
    std::uint64_t shots = 0; // 0: exact expectation values
    std::uint64_t seed = 0;

    /// <Z_qubit> of the ansatz acting on |0...0>.
    [[nodiscard]] static Loss expectation(std::size_t n_qubits, std::size_t qubit = 0) {
        Loss loss;
        loss.inputs.push_back({StateVector(n_qubits), Circuit{n_qubits, {}, false}});
        loss.readout = qubit;
        return loss;
    }
};

/// Evaluates readouts and losses for one (template, loss) pair, caching the prepared inputs.
class LossEvaluator {
  public:
    LossEvaluator(const AnsatzTemplate &tmpl, const Loss &loss) : tmpl_(tmpl), loss_(loss) {
        if (loss_.inputs.empty()) {
            throw Error(ErrorCode::EmptyDataset, "loss has no inputs");
        }
        if (loss_.kind == Loss::Kind::MeanSquaredError &&
            loss_.labels.size() != loss_.inputs.size()) {
            throw Error(ErrorCode::LengthMismatch, "label count differs from input count");
        }
        if (loss_.readout >= tmpl_.n_qubits()) {
            throw Error(ErrorCode::TargetOutOfRange, "readout qubit outside the register");
        }
        prepared_.reserve(loss_.inputs.size());
        for (const PreparedInput &in : loss_.inputs) {
            if (in.initial.n_qubits() != tmpl_.n_qubits() ||
                in.prefix.n_qubits != tmpl_.n_qubits()) {
                throw Error(ErrorCode::QubitMismatch,
                            "input prepares " + std::to_string(in.initial.n_qubits()) +
                                " qubits, template acts on " + std::to_string(tmpl_.n_qubits()));
            }
            prepared_.push_back(execute_from(in.initial, in.prefix).to_vector());
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return prepared_.size(); }

    /// Final state for input k under `circuit` (a bound ansatz).
    [[nodiscard]] StateVector final_state(std::size_t k, const Circuit &circuit) const {
        std::vector<Complex> amps = prepared_[k];
        detail::run_ops(amps, circuit);
        if (loss_.amplitude_adjustment) {
            detail::diffuse_in_place(amps);
        }
        return StateVector::adopt(tmpl_.n_qubits(), std::move(amps));
    }

    /// Readout f_k for input k under `circuit`.
    [[nodiscard]] double readout(std::size_t k, const Circuit &circuit) {
        work_ = prepared_[k];
        detail::run_ops(work_, circuit);
        if (loss_.amplitude_adjustment) {
            detail::diffuse_in_place(work_);
        }
        if (loss_.shots == 0) {
            return detail::expectation_z(work_, tmpl_.n_qubits(), loss_.readout);
        }
        const Histogram hist = sample_state(StateVector::adopt(tmpl_.n_qubits(), work_),
                                            loss_.shots, derive_seed(loss_.seed, draws_++));
        double acc = 0.0;
        for (const auto &[bits, count] : hist.counts) {
            acc += (bits[loss_.readout] == '0' ? 1.0 : -1.0) * static_cast<double>(count);
        }
        return acc / static_cast<double>(loss_.shots);
    }

    [[nodiscard]] std::vector<double> readouts(const Circuit &circuit) {
        std::vector<double> f(size());
        for (std::size_t k = 0; k < size(); ++k) {
            f[k] = readout(k, circuit);
        }
        return f;
    }

    [[nodiscard]] double loss_from_readouts(std::span<const double> f) const {
        double acc = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            if (loss_.kind == Loss::Kind::Expectation) {
                acc += f[k];
            } else {
                const double r = f[k] - loss_.labels[k];
                acc += r * r;
            }
        }
        return acc / static_cast<double>(f.size());
    }

    /// dL/df_k
    [[nodiscard]] double loss_slope(std::size_t k, double f_k) const {
        const double n = static_cast<double>(size());
        if (loss_.kind == Loss::Kind::Expectation) {
            return 1.0 / n;
        }
        return 2.0 * (f_k - loss_.labels[k]) / n;
    }

    [[nodiscard]] double value(std::span<const double> params) {
        detail::check_params(tmpl_, params);
        return loss_from_readouts(readouts(detail::bind_shifted(tmpl_, params, std::nullopt, 0.0)));
    }

    /**
     * Parameter-shift gradient. Each occurrence of a slot is shifted by
     * +-pi/2 on its own and the per-occurrence derivatives are summed; the
     * loss is differentiated through its readouts by the chain rule.
     */
    [[nodiscard]] std::vector<double> parameter_shift(std::span<const double> params) {
        detail::check_params(tmpl_, params);
        constexpr double shift = std::numbers::pi / 2.0;
        const std::vector<double> base = readouts(detail::bind_shifted(tmpl_, params, std::nullopt, 0.0));
        std::vector<double> grad(tmpl_.n_params(), 0.0);
        for (std::size_t i = 0; i < tmpl_.ops().size(); ++i) {
            const TemplateOp &op = tmpl_.ops()[i];
            if (!op.angle) continue;
            const auto *slot = std::get_if<ParamSlot>(&*op.angle);
            if (slot == nullptr) continue;
            const Circuit plus = detail::bind_shifted(tmpl_, params, i, shift);
            const Circuit minus = detail::bind_shifted(tmpl_, params, i, -shift);
            for (std::size_t k = 0; k < size(); ++k) {
                const double df = (readout(k, plus) - readout(k, minus)) / 2.0;
                grad[slot->index] += loss_slope(k, base[k]) * df;
            }
        }
        return grad;
    }

    /// Central differences of the loss with step `step`.
    [[nodiscard]] std::vector<double> finite_difference(std::span<const double> params,
                                                        double step) {
        detail::check_params(tmpl_, params);
        std::vector<double> shifted(params.begin(), params.end());
        std::vector<double> grad(tmpl_.n_params(), 0.0);
        for (std::size_t j = 0; j < grad.size(); ++j) {
            shifted[j] = params[j] + step;
            const double up = value(shifted);
            shifted[j] = params[j] - step;
            const double down = value(shifted);
            shifted[j] = params[j];
            grad[j] = (up - down) / (2.0 * step);
        }
        return grad;
    }

  private:
    const AnsatzTemplate &tmpl_;
    const Loss &loss_;
    std::vector<std::vector<Complex>> prepared_;
    std::vector<Complex> work_;
    std::uint64_t draws_ = 0;
};

inline constexpr double kDefaultFdStep = 1e-5;

/// dL/dp for every template parameter.
[[nodiscard]] inline std::vector<double> gradient(const AnsatzTemplate &tmpl,
                                                  std::span<const double> params,
                                                  const Loss &loss, GradientMethod method,
                                                  double fd_step = kDefaultFdStep) {
    LossEvaluator eval(tmpl, loss);
    if (method == GradientMethod::ParameterShift) {
        return eval.parameter_shift(params);
    }
    return eval.finite_difference(params, fd_step);
}

[[nodiscard]] inline double evaluate_loss(const AnsatzTemplate &tmpl,
                                          std::span<const double> params, const Loss &loss) {
    LossEvaluator eval(tmpl, loss);
    return eval.value(params);
}

// ---------------------------------------------------------------------------
// Training

struct LabeledSample {
    FeatureVector features;
    double label; // -1 or +1
};

struct TrainConfig {
    double learning_rate = 0.1;
    std::uint64_t max_iterations = 2000;
    GradientMethod gradient_method = GradientMethod::ParameterShift;
    std::optional<double> fd_step; // finite_difference only; kDefaultFdStep when absent
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    double convergence_tol = 1e-6;
    std::optional<std::vector<double>> initial_params;
    bool hadamard_layer = false;
    bool amplitude_adjustment = false;
};

inline void validate(const TrainConfig &config) {
    if (!std::isfinite(config.learning_rate) || config.learning_rate < 0.0) {
        throw Error(ErrorCode::InvalidConfig, "learning_rate must be a finite non-negative number");
    }
    if (config.gradient_method == GradientMethod::ParameterShift && config.fd_step) {
        throw Error(ErrorCode::InvalidConfig, "fd_step is only valid with finite_difference");
    }
    if (config.fd_step && !(std::isfinite(*config.fd_step) && *config.fd_step > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "fd_step must be positive");
    }
    if (!std::isfinite(config.convergence_tol) || config.convergence_tol < 0.0) {
        throw Error(ErrorCode::InvalidConfig, "convergence_tol must be non-negative");
    }
}

struct TrainReport {
    std::vector<double> loss_trace;
    std::vector<double> final_params;
    std::uint64_t iterations_run = 0;
    bool converged = false;
    double final_loss = 0.0;
    std::size_t circuit_depth = 0;
    std::optional<Histogram> final_histogram;
};

/// Prepared input for one sample under `encoding`, checked against `n_qubits`.
[[nodiscard]] inline PreparedInput prepare_input(const FeatureVector &features,
                                                 const EncodingSpec &encoding,
                                                 std::size_t n_qubits, bool hadamard) {
    const std::size_t demand = encoded_qubits(encoding, features.values.size());
    if (demand != n_qubits) {
        throw Error(ErrorCode::QubitMismatch,
                    std::string(to_string(encoding.method)) + " encoding of " +
                        std::to_string(features.values.size()) + " features needs " +
                        std::to_string(demand) + " qubits, template has " +
                        std::to_string(n_qubits));
    }
    switch (encoding.method) {
    case EncodingMethod::Angle: {
        Circuit prefix = hadamard ? hadamard_layer(n_qubits) : Circuit{n_qubits, {}, false};
        const Circuit enc = encode_angle(features, encoding.angle_axis());
        prefix.ops.insert(prefix.ops.end(), enc.ops.begin(), enc.ops.end());
        return {StateVector(n_qubits), std::move(prefix)};
    }
    case EncodingMethod::Amplitude:
    case EncodingMethod::Basis: {
        if (hadamard) {
            throw Error(ErrorCode::InvalidConfig,
                        "hadamard_layer only combines with angle encoding");
        }
        if (encoding.method == EncodingMethod::Amplitude) {
            return {encode_amplitude(features), Circuit{n_qubits, {}, false}};
        }
        std::string bits;
        for (double v : features.values) {
            if (v != 0.0 && v != 1.0) {
                throw Error(ErrorCode::InvalidBitstring, "basis encoding needs 0/1 features");
            }
            bits.push_back(v == 1.0 ? '1' : '0');
        }
        return {encode_basis(bits), Circuit{n_qubits, {}, false}};
    }
    case EncodingMethod::Superposition:
        break;
    }
    throw Error(ErrorCode::UnsupportedEncoding,
                "superposition encoding takes basis strings, not feature vectors");
}

/// Builds the mean-squared-error loss for a labelled dataset.
[[nodiscard]] inline Loss make_training_loss(const AnsatzTemplate &tmpl,
                                             const std::vector<LabeledSample> &data,
                                             const EncodingSpec &encoding,
                                             const TrainConfig &config) {
    if (data.empty()) {
        throw Error(ErrorCode::EmptyDataset, "training data is empty");
    }
    Loss loss;
    loss.kind = Loss::Kind::MeanSquaredError;
    loss.amplitude_adjustment = config.amplitude_adjustment;
    loss.shots = config.shots;
    loss.seed = derive_seed(config.seed, 1);
    for (const LabeledSample &s : data) {
        if (s.label != -1.0 && s.label != 1.0) {
            throw Error(ErrorCode::InvalidDataset, "label must be -1 or +1");
        }
        loss.inputs.push_back(prepare_input(s.features, encoding, tmpl.n_qubits(),
                                            config.hadamard_layer));
        loss.labels.push_back(s.label);
    }
    return loss;
}

/// Starting parameters: the configured ones, or seeded uniform draws in [-pi, pi).
[[nodiscard]] inline std::vector<double> initial_parameters(const AnsatzTemplate &tmpl,
                                                            const TrainConfig &config) {
    if (config.initial_params) {
        detail::check_params(tmpl, *config.initial_params);
        return *config.initial_params;
    }
    Xoshiro256StarStar rng(derive_seed(config.seed, 0));
    std::vector<double> params(tmpl.n_params());
    for (auto &p : params) {
        p = (2.0 * rng.uniform() - 1.0) * std::numbers::pi;
    }
    return params;
}

inline constexpr std::uint64_t kReportShots = 1024;

/**
 * Gradient descent on the mean squared error between <Z_0> and the labels.
 *
 * Each iteration records the loss at the current parameters, stops when the
 * change from the previous iteration is below convergence_tol, and otherwise
 * steps against the gradient.
 */
[[nodiscard]] inline TrainReport train(const AnsatzTemplate &tmpl,
                                       const std::vector<LabeledSample> &data,
                                       const EncodingSpec &encoding, const TrainConfig &config) {
    validate(config);
    const Loss loss = make_training_loss(tmpl, data, encoding, config);
    LossEvaluator eval(tmpl, loss);
    std::vector<double> params = initial_parameters(tmpl, config);
    const double step = config.fd_step.value_or(kDefaultFdStep);

    TrainReport report;
    for (std::uint64_t it = 0; it < config.max_iterations; ++it) {
        const double current = eval.value(params);
        report.loss_trace.push_back(current);
        if (it > 0 && std::abs(current - report.loss_trace[it - 1]) < config.convergence_tol) {
            report.converged = true;
            break;
        }
        const std::vector<double> grad =
            config.gradient_method == GradientMethod::ParameterShift
                ? eval.parameter_shift(params)
                : eval.finite_difference(params, step);
        for (std::size_t j = 0; j < params.size(); ++j) {
            params[j] -= config.learning_rate * grad[j];
        }
    }
    report.iterations_run = report.loss_trace.size();
    report.final_loss = eval.value(params);
    report.final_params = params;

    const Circuit bound = qaml::bind(tmpl, params);
    Circuit full = loss.inputs.front().prefix;
    full.ops.insert(full.ops.end(), bound.ops.begin(), bound.ops.end());
    report.circuit_depth = depth(full);
    report.final_histogram =
        sample_state(eval.final_state(0, bound), config.shots == 0 ? kReportShots : config.shots,
                     derive_seed(config.seed, 2));
    return report;
}

} // namespace qaml
