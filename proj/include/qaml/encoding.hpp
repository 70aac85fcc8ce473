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
 * Classical-to-quantum data encodings: basis, superposition, angle and
 * amplitude.
 */
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qaml/circuit.hpp"
#include "qaml/errors.hpp"
#include "qaml/qstate.hpp"

namespace qaml {

struct FeatureVector {
    std::vector<double> values;
};

enum class EncodingMethod { Basis, Superposition, Angle, Amplitude };
enum class Axis { X, Y, Z };

struct EncodingSpec {
    EncodingMethod method = EncodingMethod::Angle;
    std::optional<Axis> axis; // angle only; Y when absent

    [[nodiscard]] Axis angle_axis() const noexcept { return axis.value_or(Axis::Y); }
};

[[nodiscard]] inline std::optional<EncodingMethod> encoding_method_from_string(std::string_view s) {
    if (s == "basis") return EncodingMethod::Basis;
    if (s == "superposition") return EncodingMethod::Superposition;
    if (s == "angle") return EncodingMethod::Angle;
    if (s == "amplitude") return EncodingMethod::Amplitude;
    return std::nullopt;
}

[[nodiscard]] constexpr std::string_view to_string(EncodingMethod m) noexcept {
    switch (m) {
    case EncodingMethod::Basis: return "basis";
    case EncodingMethod::Superposition: return "superposition";
    case EncodingMethod::Angle: return "angle";
    case EncodingMethod::Amplitude: return "amplitude";
    }
    return "?";
}

[[nodiscard]] inline std::optional<Axis> axis_from_string(std::string_view s) {
    if (s == "x" || s == "X") return Axis::X;
    if (s == "y" || s == "Y") return Axis::Y;
    if (s == "z" || s == "Z") return Axis::Z;
    return std::nullopt;
}

[[nodiscard]] constexpr std::string_view to_string(Axis a) noexcept {
    switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
    }
    return "?";
}

[[nodiscard]] constexpr GateName rotation_for(Axis axis) noexcept {
    switch (axis) {
    case Axis::X: return GateName::RX;
    case Axis::Y: return GateName::RY;
    case Axis::Z: return GateName::RZ;
    }
    return GateName::RY;
}

/// Each bit maps directly to |0> or |1>: "110" -> |110>.
[[nodiscard]] inline StateVector encode_basis(std::string_view bits) {
    if (bits.empty()) {
        throw Error(ErrorCode::InvalidBitstring, "empty bitstring");
    }
    return make_basis_state(bits.size(), bits);
}

/// Uniform real superposition sqrt(1/k) over the k given basis states.
[[nodiscard]] inline StateVector encode_superposition(const std::vector<std::string> &bitstrings) {
    if (bitstrings.empty()) {
        throw Error(ErrorCode::EmptyInput, "no basis states given");
    }
    const std::size_t n = bitstrings.front().size();
    if (n == 0) {
        throw Error(ErrorCode::InvalidBitstring, "empty bitstring");
    }
    check_qubit_count(n, kDefaultMaxQubits);
    std::set<std::size_t> seen;
    std::vector<std::size_t> indices;
    for (const auto &bits : bitstrings) {
        if (bits.size() != n) {
            throw Error(ErrorCode::LengthMismatch,
                        "\"" + bits + "\" has length " + std::to_string(bits.size()) +
                            ", expected " + std::to_string(n));
        }
        const std::size_t idx = basis_index(bits);
        if (!seen.insert(idx).second) {
            throw Error(ErrorCode::DuplicateBasisState, "\"" + bits + "\" listed twice");
        }
        indices.push_back(idx);
    }
    const double amp = std::sqrt(1.0 / static_cast<double>(indices.size()));
    std::vector<Complex> amps(std::size_t{1} << n, Complex{0.0, 0.0});
    for (std::size_t idx : indices) {
        amps[idx] = amp;
    }
    return StateVector::adopt(n, std::move(amps));
}

/// One qubit per feature; feature j becomes the angle (radians) of an axis rotation on qubit j.
[[nodiscard]] inline Circuit encode_angle(const FeatureVector &features, Axis axis = Axis::Y) {
    if (features.values.empty()) {
        throw Error(ErrorCode::EmptyInput, "no features given");
    }
    check_qubit_count(features.values.size(), kDefaultMaxQubits);
    Circuit circuit{features.values.size(), {}, false};
    circuit.ops.reserve(features.values.size());
    for (std::size_t j = 0; j < features.values.size(); ++j) {
        const double theta = features.values[j];
        if (!std::isfinite(theta)) {
            throw Error(ErrorCode::NonFiniteFeature,
                        "feature " + std::to_string(j) + " is not finite");
        }
        circuit.ops.push_back({rotation_for(axis), {j}, theta});
    }
    return circuit;
}

/// Qubits needed to amplitude-encode `n_values` values: max(ceil(log2 n), 1).
[[nodiscard]] constexpr std::size_t amplitude_qubits(std::size_t n_values) noexcept {
    std::size_t m = 1;
    while ((std::size_t{1} << m) < n_values) {
        ++m;
    }
    return m;
}

/**
 * Amplitudes x_i / ||x||_2, zero-padded to the next power of two.
 *
 * The normalization factor is the L2 norm sqrt(sum x_i^2); it is returned
 * alongside the state by encode_amplitude_with_norm for callers that report it.
 */
struct AmplitudeEncoding {
    StateVector state;
    double norm;
};

[[nodiscard]] inline AmplitudeEncoding encode_amplitude_with_norm(const FeatureVector &features) {
    const auto &x = features.values;
    if (x.empty()) {
        throw Error(ErrorCode::EmptyInput, "no features given");
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!std::isfinite(x[j])) {
            throw Error(ErrorCode::NonFiniteFeature,
                        "feature " + std::to_string(j) + " is not finite");
        }
    }
    const std::size_t n = amplitude_qubits(x.size());
    check_qubit_count(n, kDefaultMaxQubits);

    // Scale by the largest magnitude first so tiny or huge inputs do not
    // underflow or overflow in the sum of squares.
    double scale = 0.0;
    for (double v : x) {
        scale = std::max(scale, std::abs(v));
    }
    if (scale == 0.0) {
        throw Error(ErrorCode::ZeroVector, "cannot amplitude-encode an all-zero vector");
    }
    double sum = 0.0;
    for (double v : x) {
        sum += (v / scale) * (v / scale);
    }
    const double scaled_norm = std::sqrt(sum);

    std::vector<Complex> amps(std::size_t{1} << n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < x.size(); ++i) {
        amps[i] = (x[i] / scale) / scaled_norm;
    }
    return {StateVector::adopt(n, std::move(amps)), scale * scaled_norm};
}

[[nodiscard]] inline StateVector encode_amplitude(const FeatureVector &features) {
    return encode_amplitude_with_norm(features).state;
}

/// Qubits the given encoding uses for a feature vector of length `n_features`.
[[nodiscard]] inline std::size_t encoded_qubits(const EncodingSpec &spec, std::size_t n_features) {
    switch (spec.method) {
    case EncodingMethod::Basis:
    case EncodingMethod::Angle:
        return n_features;
    case EncodingMethod::Amplitude:
        return amplitude_qubits(n_features);
    case EncodingMethod::Superposition:
        break;
    }
    throw Error(ErrorCode::UnsupportedEncoding,
                "superposition encoding takes basis strings, not feature vectors");
}

// ---------------------------------------------------------------------------
// CSV ingestion

namespace detail {

[[nodiscard]] inline std::string_view trim(std::string_view s) noexcept {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

[[nodiscard]] inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

} // namespace detail

/// Parses a whole-cell decimal literal ("1.5", "-2", "3e-4", leading '+' allowed).
[[nodiscard]] inline std::optional<double> parse_decimal(std::string_view text) {
    text = detail::trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

/**
 * Reads comma-separated numeric rows. The first row is skipped as a header
 * when its first cell is not numeric; blank lines are ignored. Throws
 * InvalidDataset (with a 1-based line number) on any malformed cell.
 */
[[nodiscard]] inline std::vector<std::vector<double>> read_csv_rows(std::istream &in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_commas(line);
        if (first) {
            first = false;
            if (!parse_decimal(cells.front())) continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto v = parse_decimal(cells[c]);
            if (!v) {
                throw Error(ErrorCode::InvalidDataset,
                            "line " + std::to_string(line_no) + ", column " +
                                std::to_string(c + 1) + ": \"" + std::string(cells[c]) +
                                "\" is not a decimal number");
            }
            row.push_back(*v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

[[nodiscard]] inline std::vector<FeatureVector> read_feature_csv(std::istream &in) {
    std::vector<FeatureVector> out;
    for (auto &row : read_csv_rows(in)) {
        out.push_back({std::move(row)});
    }
    return out;
}

} // namespace qaml
