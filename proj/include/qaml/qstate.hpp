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
 * The n-qubit state vector and basis-state preparation.
 *
 * Index convention: the basis label x1 x2 ... xn (qubit 0 first) is read as
 * a binary number with x1 the most significant bit. Qubit q therefore lives
 * at bit position (n - 1 - q) of the amplitude index.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qaml/errors.hpp"

namespace qaml {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultMaxQubits = 24;
inline constexpr double kNormTolerance = 1e-9;

[[nodiscard]] inline bool is_finite(Complex z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Sum of squared magnitudes of an arbitrary (possibly unnormalized) sequence.
[[nodiscard]] inline double norm_squared(std::span<const Complex> amplitudes) noexcept {
    double acc = 0.0;
    for (const auto &a : amplitudes) {
        acc += std::norm(a);
    }
    return acc;
}

/// Bit position of qubit `qubit` inside an amplitude index of an n-qubit register.
[[nodiscard]] constexpr std::size_t qubit_mask(std::size_t n_qubits,
                                               std::size_t qubit) noexcept {
    return std::size_t{1} << (n_qubits - 1 - qubit);
}

/// Basis label of `index`, qubit 0 first.
[[nodiscard]] inline std::string basis_label(std::size_t index, std::size_t n_qubits) {
    std::string bits(n_qubits, '0');
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if (index & qubit_mask(n_qubits, q)) {
            bits[q] = '1';
        }
    }
    return bits;
}

/// Inverse of basis_label. Throws InvalidBitstring on non-binary characters.
[[nodiscard]] inline std::size_t basis_index(std::string_view bits) {
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error(ErrorCode::InvalidBitstring,
                        "non-binary character '" + std::string(1, c) + "' in \"" +
                            std::string(bits) + "\"");
        }
        index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    return index;
}

inline void check_qubit_count(std::size_t n_qubits, std::size_t max_qubits) {
    if (n_qubits == 0) {
        throw Error(ErrorCode::InvalidState, "qubit count must be positive");
    }
    if (n_qubits > max_qubits) {
        throw Error(ErrorCode::QubitCountExceeded,
                    std::to_string(n_qubits) + " qubits requested, ceiling is " +
                        std::to_string(max_qubits));
    }
}

/**
 * Immutable n-qubit register of 2^n complex amplitudes.
 *
 * Every public constructor checks length, finiteness and unit norm
 * (within kNormTolerance).
 */
class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n_qubits, std::size_t max_qubits = kDefaultMaxQubits)
        : n_qubits_(n_qubits) {
        check_qubit_count(n_qubits, max_qubits);
        amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
        amplitudes_[0] = 1.0;
    }

    /// Validating constructor from raw amplitudes.
    [[nodiscard]] static StateVector
    from_amplitudes(std::vector<Complex> amplitudes,
                    std::size_t max_qubits = kDefaultMaxQubits) {
        const std::size_t dim = amplitudes.size();
        if (dim < 2 || (dim & (dim - 1)) != 0) {
            throw Error(ErrorCode::InvalidState,
                        "amplitude count " + std::to_string(dim) +
                            " is not a power of two >= 2");
        }
        std::size_t n = 0;
        while ((std::size_t{1} << n) < dim) {
            ++n;
        }
        check_qubit_count(n, max_qubits);
        for (const auto &a : amplitudes) {
            if (!is_finite(a)) {
                throw Error(ErrorCode::InvalidState, "non-finite amplitude");
            }
        }
        const double norm = norm_squared(amplitudes);
        if (std::abs(norm - 1.0) >= kNormTolerance) {
            throw Error(ErrorCode::InvalidState,
                        "squared norm " + std::to_string(norm) + " differs from 1");
        }
        return StateVector(n, std::move(amplitudes));
    }

    /// Unchecked construction for kernels that preserve the invariants by
    /// construction (unitary evolution of a valid state).
    [[nodiscard]] static StateVector adopt(std::size_t n_qubits,
                                           std::vector<Complex> amplitudes) {
        return StateVector(n_qubits, std::move(amplitudes));
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amplitudes_[i]; }

    /// Copy of the amplitude buffer, for kernels that evolve it in place.
    [[nodiscard]] std::vector<Complex> to_vector() const { return amplitudes_; }

    friend bool operator==(const StateVector &, const StateVector &) = default;

  private:
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
        : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

    std::size_t n_qubits_;
    std::vector<Complex> amplitudes_;
};

[[nodiscard]] inline double norm_squared(const StateVector &state) noexcept {
    return norm_squared(state.amplitudes());
}

/// |bits> on n_qubits qubits; bits[0] is qubit 0 (most significant).
[[nodiscard]] inline StateVector make_basis_state(std::size_t n_qubits, std::string_view bits,
                                                  std::size_t max_qubits = kDefaultMaxQubits) {
    if (bits.size() != n_qubits) {
        throw Error(ErrorCode::InvalidBitstring,
                    "bitstring \"" + std::string(bits) + "\" has length " +
                        std::to_string(bits.size()) + ", expected " +
                        std::to_string(n_qubits));
    }
    check_qubit_count(n_qubits, max_qubits);
    const std::size_t index = basis_index(bits);
    std::vector<Complex> amplitudes(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amplitudes[index] = 1.0;
    return StateVector::adopt(n_qubits, std::move(amplitudes));
}

/// Born-rule probabilities |a_i|^2, indexed like the amplitudes.
[[nodiscard]] inline std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> probs;
    probs.reserve(state.dimension());
    for (const auto &a : state.amplitudes()) {
        probs.push_back(std::norm(a));
    }
    return probs;
}

/// Rescales to unit norm; used only after measurement collapse.
[[nodiscard]] inline std::vector<Complex> renormalized(std::vector<Complex> amplitudes) {
    const double norm = std::sqrt(norm_squared(amplitudes));
    for (auto &a : amplitudes) {
        a /= norm;
    }
    return amplitudes;
}

} // namespace qaml
