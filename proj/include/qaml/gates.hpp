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
 * Gate matrices and the strided kernels that apply them to a StateVector.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qaml/dense.hpp"
#include "qaml/errors.hpp"
#include "qaml/qstate.hpp"

namespace qaml {

enum class GateName { H, X, Y, Z, RX, RY, RZ, CX };

[[nodiscard]] constexpr std::string_view to_string(GateName name) noexcept {
    switch (name) {
    case GateName::H: return "H";
    case GateName::X: return "X";
    case GateName::Y: return "Y";
    case GateName::Z: return "Z";
    case GateName::RX: return "RX";
    case GateName::RY: return "RY";
    case GateName::RZ: return "RZ";
    case GateName::CX: return "CX";
    }
    return "?";
}

[[nodiscard]] constexpr bool is_rotation(GateName name) noexcept {
    return name == GateName::RX || name == GateName::RY || name == GateName::RZ;
}

[[nodiscard]] constexpr std::size_t arity(GateName name) noexcept {
    return name == GateName::CX ? 2 : 1;
}

/// Case-insensitive lookup of a gate mnemonic ("h", "RX", "cx", ...).
[[nodiscard]] inline std::optional<GateName> gate_name_from_string(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (GateName g : {GateName::H, GateName::X, GateName::Y, GateName::Z, GateName::RX,
                       GateName::RY, GateName::RZ, GateName::CX}) {
        if (upper == to_string(g)) {
            return g;
        }
    }
    return std::nullopt;
}

/**
 * A named unitary acting on one qubit (2x2) or two qubits (4x4).
 *
 * Entries are row-major. For two-qubit gates the local basis index is
 * 2*b0 + b1 where b0 is the bit of the first target (the control for CX).
 */
class GateMatrix {
  public:
    [[nodiscard]] GateName name() const noexcept { return name_; }
    [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
    [[nodiscard]] std::size_t dim() const noexcept { return std::size_t{1} << arity_; }
    [[nodiscard]] std::span<const Complex> entries() const noexcept {
        return std::span<const Complex>(entries_.data(), dim() * dim());
    }
    [[nodiscard]] std::optional<double> angle() const noexcept { return angle_; }
    [[nodiscard]] Complex operator()(std::size_t r, std::size_t c) const {
        return entries_[r * dim() + c];
    }

    [[nodiscard]] DenseMatrix to_dense() const {
        const auto e = entries();
        return DenseMatrix(dim(), std::vector<Complex>(e.begin(), e.end()));
    }

  private:
    GateMatrix(GateName name, std::initializer_list<Complex> entries, std::optional<double> angle)
        : name_(name), arity_(qaml::arity(name)), angle_(angle) {
        std::copy(entries.begin(), entries.end(), entries_.begin());
    }

    friend GateMatrix gate_h();
    friend GateMatrix gate_x();
    friend GateMatrix gate_y();
    friend GateMatrix gate_z();
    friend GateMatrix gate_rx(double);
    friend GateMatrix gate_ry(double);
    friend GateMatrix gate_rz(double);
    friend GateMatrix gate_cx();

    GateName name_;
    std::size_t arity_;
    std::array<Complex, 16> entries_{};
    std::optional<double> angle_;
};

namespace detail {
inline void check_angle(double theta) {
    if (!std::isfinite(theta)) {
        throw Error(ErrorCode::NonFiniteAngle, "rotation angle must be finite");
    }
}
} // namespace detail

inline GateMatrix gate_h() {
    const double s = 1.0 / std::numbers::sqrt2;
    return GateMatrix(GateName::H, {s, s, s, -s}, std::nullopt);
}

inline GateMatrix gate_x() {
    return GateMatrix(GateName::X, {0.0, 1.0, 1.0, 0.0}, std::nullopt);
}

inline GateMatrix gate_y() {
    const Complex i{0.0, 1.0};
    return GateMatrix(GateName::Y, {0.0, -i, i, 0.0}, std::nullopt);
}

inline GateMatrix gate_z() {
    return GateMatrix(GateName::Z, {1.0, 0.0, 0.0, -1.0}, std::nullopt);
}

/// exp(-i theta X / 2)
inline GateMatrix gate_rx(double theta) {
    detail::check_angle(theta);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return GateMatrix(GateName::RX, {c, Complex{0.0, -s}, Complex{0.0, -s}, c}, theta);
}

/// exp(-i theta Y / 2)
inline GateMatrix gate_ry(double theta) {
    detail::check_angle(theta);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return GateMatrix(GateName::RY, {c, -s, s, c}, theta);
}

/// exp(-i theta Z / 2) = diag(e^{-i theta/2}, e^{i theta/2})
inline GateMatrix gate_rz(double theta) {
    detail::check_angle(theta);
    return GateMatrix(GateName::RZ,
                      {std::polar(1.0, -theta / 2.0), 0.0, 0.0, std::polar(1.0, theta / 2.0)},
                      theta);
}

/// |c, t> -> |c, t xor c>
inline GateMatrix gate_cx() {
    return GateMatrix(GateName::CX,
                      {1.0, 0.0, 0.0, 0.0,
                       0.0, 1.0, 0.0, 0.0,
                       0.0, 0.0, 0.0, 1.0,
                       0.0, 0.0, 1.0, 0.0},
                      std::nullopt);
}

/// Builds a gate by name; `angle` is required for rotations and rejected otherwise.
[[nodiscard]] inline GateMatrix make_gate(GateName name, std::optional<double> angle = {}) {
    if (is_rotation(name) != angle.has_value()) {
        throw Error(ErrorCode::ArityMismatch,
                    std::string(to_string(name)) +
                        (angle ? " takes no angle" : " requires an angle"));
    }
    switch (name) {
    case GateName::H: return gate_h();
    case GateName::X: return gate_x();
    case GateName::Y: return gate_y();
    case GateName::Z: return gate_z();
    case GateName::RX: return gate_rx(*angle);
    case GateName::RY: return gate_ry(*angle);
    case GateName::RZ: return gate_rz(*angle);
    case GateName::CX: return gate_cx();
    }
    throw Error(ErrorCode::UnknownGate, "unhandled gate");
}

/// max |(U^dagger U - I)_{rc}|
[[nodiscard]] inline double unitarity_error(const GateMatrix &gate) {
    const DenseMatrix u = gate.to_dense();
    return max_abs_diff(u.adjoint() * u, DenseMatrix::identity(u.dim()));
}

[[nodiscard]] inline bool is_unitary(const GateMatrix &gate, double tol = 1e-12) {
    return unitarity_error(gate) <= tol;
}

inline void validate_targets(std::size_t n_qubits, std::size_t gate_arity,
                             std::span<const std::size_t> targets) {
    if (targets.size() != gate_arity) {
        throw Error(ErrorCode::ArityMismatch,
                    "gate acts on " + std::to_string(gate_arity) + " qubit(s), got " +
                        std::to_string(targets.size()) + " target(s)");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= n_qubits) {
            throw Error(ErrorCode::TargetOutOfRange,
                        "qubit " + std::to_string(targets[i]) + " outside [0, " +
                            std::to_string(n_qubits) + ")");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw Error(ErrorCode::DuplicateTarget,
                            "qubit " + std::to_string(targets[i]) + " repeated");
            }
        }
    }
}

namespace detail {

/// Spreads the bits of `k` around a zero inserted at `mask`.
[[nodiscard]] constexpr std::size_t insert_zero_bit(std::size_t k, std::size_t mask) noexcept {
    return ((k & ~(mask - 1)) << 1) | (k & (mask - 1));
}

inline void apply_one_qubit(std::span<Complex> amps, std::size_t n_qubits,
                            const GateMatrix &gate, std::size_t target) {
    const std::size_t stride = qubit_mask(n_qubits, target);
    const std::size_t dim = amps.size();
    const Complex m00 = gate(0, 0), m01 = gate(0, 1);
    const Complex m10 = gate(1, 0), m11 = gate(1, 1);

    if (m01 == Complex{} && m10 == Complex{}) {
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t i = base; i < base + stride; ++i) {
                amps[i] *= m00;
                amps[i + stride] *= m11;
            }
        }
        return;
    }
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a0 = amps[i];
            const Complex a1 = amps[i + stride];
            amps[i] = m00 * a0 + m01 * a1;
            amps[i + stride] = m10 * a0 + m11 * a1;
        }
    }
}

inline void apply_two_qubit(std::span<Complex> amps, std::size_t n_qubits,
                            const GateMatrix &gate, std::size_t t0, std::size_t t1) {
    const std::size_t mask0 = qubit_mask(n_qubits, t0);
    const std::size_t mask1 = qubit_mask(n_qubits, t1);
    const std::size_t lo = std::min(mask0, mask1);
    const std::size_t hi = std::max(mask0, mask1);
    const std::size_t quarter = amps.size() / 4;

    if (gate.name() == GateName::CX) {
        for (std::size_t k = 0; k < quarter; ++k) {
            const std::size_t base = insert_zero_bit(insert_zero_bit(k, lo), hi);
            std::swap(amps[base | mask0], amps[base | mask0 | mask1]);
        }
        return;
    }
    for (std::size_t k = 0; k < quarter; ++k) {
        const std::size_t base = insert_zero_bit(insert_zero_bit(k, lo), hi);
        const std::array<std::size_t, 4> idx{base, base | mask1, base | mask0,
                                             base | mask0 | mask1};
        std::array<Complex, 4> in{};
        for (std::size_t j = 0; j < 4; ++j) {
            in[j] = amps[idx[j]];
        }
        for (std::size_t r = 0; r < 4; ++r) {
            Complex acc{};
            for (std::size_t c = 0; c < 4; ++c) {
                acc += gate(r, c) * in[c];
            }
            amps[idx[r]] = acc;
        }
    }
}

/// In-place application on a raw 2^n buffer; targets must already be validated.
inline void apply_in_place(std::span<Complex> amps, std::size_t n_qubits,
                           const GateMatrix &gate, std::span<const std::size_t> targets) {
    if (gate.arity() == 1) {
        apply_one_qubit(amps, n_qubits, gate, targets[0]);
    } else {
        apply_two_qubit(amps, n_qubits, gate, targets[0], targets[1]);
    }
}

} // namespace detail

/// (I x ... x U x ... x I) |state>, without materialising the full operator.
[[nodiscard]] inline StateVector apply_gate(const StateVector &state, const GateMatrix &gate,
                                            std::span<const std::size_t> targets) {
    validate_targets(state.n_qubits(), gate.arity(), targets);
    std::vector<Complex> amps = state.to_vector();
    detail::apply_in_place(amps, state.n_qubits(), gate, targets);
    return StateVector::adopt(state.n_qubits(), std::move(amps));
}

[[nodiscard]] inline StateVector apply_gate(const StateVector &state, const GateMatrix &gate,
                                            std::initializer_list<std::size_t> targets) {
    return apply_gate(state, gate, std::span<const std::size_t>(targets.begin(), targets.size()));
}

inline constexpr std::size_t kMaxOracleQubits = 8;

/**
 * Explicit 2^n x 2^n operator of `gate` on `targets`.
 *
 * Entry (r, c) is the gate entry addressed by the target bits of r and c
 * when all non-target bits of r and c agree, and zero otherwise.
 */
[[nodiscard]] inline DenseMatrix dense_unitary(const GateMatrix &gate,
                                               std::span<const std::size_t> targets,
                                               std::size_t n_qubits) {
    if (n_qubits > kMaxOracleQubits) {
        throw Error(ErrorCode::OracleSizeExceeded,
                    std::to_string(n_qubits) + " qubits exceeds the dense oracle limit of " +
                        std::to_string(kMaxOracleQubits));
    }
    check_qubit_count(n_qubits, kMaxOracleQubits);
    validate_targets(n_qubits, gate.arity(), targets);

    std::size_t target_bits = 0;
    for (std::size_t t : targets) {
        target_bits |= qubit_mask(n_qubits, t);
    }
    auto local = [&](std::size_t index) {
        std::size_t sub = 0;
        for (std::size_t t : targets) {
            sub = (sub << 1) | ((index & qubit_mask(n_qubits, t)) ? 1u : 0u);
        }
        return sub;
    };

    const std::size_t dim = std::size_t{1} << n_qubits;
    DenseMatrix out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~target_bits) == (c & ~target_bits)) {
                out(r, c) = gate(local(r), local(c));
            }
        }
    }
    return out;
}

[[nodiscard]] inline DenseMatrix dense_unitary(const GateMatrix &gate,
                                               std::initializer_list<std::size_t> targets,
                                               std::size_t n_qubits) {
    return dense_unitary(gate, std::span<const std::size_t>(targets.begin(), targets.size()),
                         n_qubits);
}

} // namespace qaml
