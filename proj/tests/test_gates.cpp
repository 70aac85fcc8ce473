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

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qaml/gates.hpp"

using namespace qaml;
using qaml::oracle::C;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<GateMatrix> all_fixed_gates() {
    return {gate_h(), gate_x(), gate_y(), gate_z(), gate_cx()};
}

StateVector one_qubit(C alpha, C beta) { return StateVector::from_amplitudes({alpha, beta}); }

void expect_amplitudes(const StateVector &s, const std::vector<C> &want, double tol) {
    ASSERT_EQ(s.dimension(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        EXPECT_NEAR(std::abs(s[i] - want[i]), 0.0, tol) << "amplitude " << i;
    }
}

} // namespace

TEST(Gates, MatricesMatchReferenceDefinitions) {
    for (GateName g : {GateName::H, GateName::X, GateName::Y, GateName::Z}) {
        EXPECT_EQ(max_abs_diff(make_gate(g).to_dense(), oracle::reference_matrix(g)), 0.0)
            << to_string(g);
    }
    EXPECT_EQ(max_abs_diff(gate_cx().to_dense(), oracle::reference_matrix(GateName::CX)), 0.0);
}

TEST(Gates, PauliAndHadamardActionOnGeneralQubit) {
    const C alpha{0.6, 0.0}, beta{0.0, 0.8};
    const StateVector psi = one_qubit(alpha, beta);
    const double r = 1.0 / std::sqrt(2.0);
    const C i{0, 1};
    expect_amplitudes(apply_gate(psi, gate_h(), {0}), {(alpha + beta) * r, (alpha - beta) * r}, 1e-15);
    expect_amplitudes(apply_gate(psi, gate_x(), {0}), {beta, alpha}, 0);
    expect_amplitudes(apply_gate(psi, gate_y(), {0}), {-i * beta, i * alpha}, 0);
    expect_amplitudes(apply_gate(psi, gate_z(), {0}), {alpha, -beta}, 0);
}

TEST(Gates, RotationSpecialValues) {
    EXPECT_LT(max_abs_diff(gate_rx(0).to_dense(), DenseMatrix::identity(2)), 1e-15);
    // Rx(pi) = [[0, -i], [-i, 0]] = -i X
    const C i{0, 1};
    EXPECT_LT(max_abs_diff(gate_rx(kPi).to_dense(), oracle::mat2(0, -i, -i, 0)), 1e-15);
    const StateVector out = apply_gate(StateVector(1), gate_rz(kPi), {0});
    EXPECT_NEAR(std::abs(out[0] - C(0, -1)), 0.0, 1e-15);
    EXPECT_EQ(out[1], C(0, 0));
}

TEST(Gates, RotationsRejectNonFiniteAngles) {
    for (double bad : {NAN, INFINITY, -INFINITY}) {
        try {
            (void)gate_ry(bad);
            FAIL();
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::NonFiniteAngle);
        }
    }
}

TEST(Gates, UnitarityOverAngleGrid) {
    for (const auto &g : all_fixed_gates()) EXPECT_LE(unitarity_error(g), 1e-12) << to_string(g.name());
    for (int k = 0; k < 100; ++k) {
        const double theta = -2 * kPi + 4 * kPi * k / 99.0;
        for (const auto &g : {gate_rx(theta), gate_ry(theta), gate_rz(theta)}) {
            EXPECT_LE(unitarity_error(g), 1e-12);
        }
    }
}

TEST(Gates, InvolutionsAndConjugations) {
    const DenseMatrix I = DenseMatrix::identity(2);
    for (const auto &g : {gate_h(), gate_x(), gate_y(), gate_z()}) {
        EXPECT_LE(max_abs_diff(g.to_dense() * g.to_dense(), I), 1e-12);
    }
    const DenseMatrix H = gate_h().to_dense(), X = gate_x().to_dense(), Z = gate_z().to_dense();
    EXPECT_LE(max_abs_diff(H * X * H, Z), 1e-12);
    EXPECT_LE(max_abs_diff(H * Z * H, X), 1e-12);
}

TEST(Gates, RzAdditivityIsExact) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2 * kPi, 2 * kPi);
    for (int t = 0; t < 200; ++t) {
        const double a = u(rng), b = u(rng);
        EXPECT_LE(max_abs_diff(gate_rz(a).to_dense() * gate_rz(b).to_dense(), gate_rz(a + b).to_dense()),
                  1e-12);
    }
}

TEST(Gates, CxBasisMappings) {
    const char *in[] = {"00", "01", "10", "11"};
    const char *out[] = {"00", "01", "11", "10"};
    for (int k = 0; k < 4; ++k) {
        EXPECT_EQ(apply_gate(make_basis_state(2, in[k]), gate_cx(), {0, 1}), make_basis_state(2, out[k]));
    }
    const double r = 1.0 / std::sqrt(2.0);
    const StateVector plus = StateVector::from_amplitudes({r, 0, r, 0});
    expect_amplitudes(apply_gate(plus, gate_cx(), {0, 1}), {r, 0, 0, r}, 0);
    // Reversed roles: control 1, target 0.
    EXPECT_EQ(apply_gate(make_basis_state(2, "01"), gate_cx(), {1, 0}), make_basis_state(2, "11"));
}

TEST(Gates, ApplyXAtThirdQubit) {
    EXPECT_EQ(apply_gate(make_basis_state(3, "110"), gate_x(), {2}), make_basis_state(3, "111"));
}

TEST(Gates, ApplyIdentityRotationLeavesStateUnchanged) {
    std::mt19937_64 rng(3);
    const StateVector s = StateVector::from_amplitudes(oracle::random_state(rng, 3));
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_LE(max_abs_diff(apply_gate(s, gate_rx(0), {k}).amplitudes(), s.amplitudes()), 1e-12);
    }
}

TEST(Gates, ApplyValidatesTargets) {
    const StateVector s(2);
    auto code_of = [&](auto &&fn) {
        try {
            fn();
        } catch (const Error &e) {
            return e.code();
        }
        return ErrorCode::InvalidState;
    };
    EXPECT_EQ(code_of([&] { (void)apply_gate(s, gate_x(), {2}); }), ErrorCode::TargetOutOfRange);
    EXPECT_EQ(code_of([&] { (void)apply_gate(s, gate_cx(), {1, 1}); }), ErrorCode::DuplicateTarget);
    EXPECT_EQ(code_of([&] { (void)apply_gate(s, gate_cx(), {0}); }), ErrorCode::ArityMismatch);
    EXPECT_EQ(code_of([&] { (void)apply_gate(s, gate_h(), {0, 1}); }), ErrorCode::ArityMismatch);
}

TEST(Gates, DenseUnitaryMatchesKroneckerExpansion) {
    EXPECT_EQ(max_abs_diff(dense_unitary(gate_h(), {0}, 1), gate_h().to_dense()), 0.0);
    EXPECT_EQ(max_abs_diff(dense_unitary(gate_x(), {1}, 2),
                           oracle::kron(DenseMatrix::identity(2), oracle::reference_matrix(GateName::X))),
              0.0);
    EXPECT_EQ(max_abs_diff(dense_unitary(gate_cx(), {0, 1}, 2), gate_cx().to_dense()), 0.0);

    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::size_t t = 0; t < n; ++t) {
            EXPECT_LE(max_abs_diff(dense_unitary(gate_ry(0.3), {t}, n),
                                   oracle::embed_one(oracle::reference_matrix(GateName::RY, 0.3), t, n)),
                      1e-15);
            for (std::size_t c = 0; c < n; ++c) {
                if (c == t) continue;
                EXPECT_EQ(max_abs_diff(dense_unitary(gate_cx(), {c, t}, n), oracle::embed_cx(c, t, n)), 0.0);
            }
        }
    }
}

TEST(Gates, DenseUnitaryRejectsLargeRegisters) {
    try {
        (void)dense_unitary(gate_h(), {0}, 9);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::OracleSizeExceeded);
    }
}

TEST(Gates, StridedKernelAgreesWithDenseOracle) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const StateVector s = StateVector::from_amplitudes(oracle::random_state(rng, n));
        const CircuitOp op = oracle::random_op(rng, n);
        const GateMatrix g = make_gate(op.gate, op.angle);
        const StateVector out = apply_gate(s, g, op.targets);
        const auto want = dense_unitary(g, op.targets, n).apply(s.amplitudes());
        ASSERT_LE(max_abs_diff(out.amplitudes(), want), 1e-10) << "trial " << trial;
        ASSERT_LT(std::abs(norm_squared(out) - norm_squared(s)), 1e-12);
    }
}
