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
#include <random>

#include "oracles.hpp"
#include "qaml/circuit.hpp"
#include "qaml/encoding.hpp"
#include "qaml/json_io.hpp"

using namespace qaml;

namespace {
Circuit bell() { return Circuit{2, {{GateName::H, {0}, {}}, {GateName::CX, {0, 1}, {}}}, true}; }
Circuit single_h() { return Circuit{1, {{GateName::H, {0}, {}}}, true}; }
} // namespace

TEST(Circuit, ExecuteExamples) {
    const double r = 1.0 / std::sqrt(2.0);
    const StateVector h = execute(single_h());
    EXPECT_NEAR(h[0].real(), r, 1e-15);
    EXPECT_NEAR(h[1].real(), r, 1e-15);

    const auto bell_oracle = oracle::oracle_execute(bell());
    EXPECT_LE(max_abs_diff(execute(bell()).amplitudes(), bell_oracle), 1e-15);
    EXPECT_NEAR(bell_oracle[0].real(), r, 1e-15);
    EXPECT_NEAR(bell_oracle[3].real(), r, 1e-15);

    EXPECT_EQ(execute(Circuit{3, {}, false}), make_basis_state(3, "000"));
}

TEST(Circuit, ExecuteReportsOffendingOp) {
    Circuit c{2, {{GateName::H, {0}, {}}, {GateName::X, {4}, {}}}, false};
    try {
        (void)execute(c);
        FAIL();
    } catch (const ExecutionError &e) {
        EXPECT_EQ(e.op_index(), 1u);
        EXPECT_EQ(e.code(), ErrorCode::TargetOutOfRange);
    }
    Circuit missing_angle{1, {{GateName::RY, {0}, {}}}, false};
    EXPECT_THROW((void)execute(missing_angle), ExecutionError);
}

TEST(Circuit, ExecuteMatchesOracleOnRandomCorpus) {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 300; ++t) {
        const Circuit c = oracle::random_circuit(rng, 1 + t % 5, 20);
        const StateVector s = execute(c);
        ASSERT_LE(max_abs_diff(s.amplitudes(), oracle::oracle_execute(c)), 1e-10);
        ASSERT_LT(std::abs(norm_squared(s) - 1.0), 1e-9);
    }
}

TEST(Circuit, Depth) {
    EXPECT_EQ(depth(Circuit{3, {}, false}), 0u);
    EXPECT_EQ(depth(bell()), 2u);
    Circuit layer{3, {{GateName::H, {0}, {}}, {GateName::H, {1}, {}}, {GateName::H, {2}, {}}}, false};
    EXPECT_EQ(depth(layer), 1u);
}

TEST(Measurement, DeterministicStateAlwaysGivesItsLabel) {
    const StateVector s = make_basis_state(3, "110");
    for (std::uint64_t seed : {0ull, 1ull, 42ull, ~0ull}) {
        const Measurement m = measure_once(s, seed);
        EXPECT_EQ(m.bits, "110");
        EXPECT_EQ(m.collapsed, s);
    }
}

TEST(Measurement, CollapseIsIdempotent) {
    std::mt19937_64 rng(8);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const StateVector s = StateVector::from_amplitudes(oracle::random_state(rng, 3));
        const Measurement first = measure_once(s, seed);
        EXPECT_NEAR(norm_squared(first.collapsed), 1.0, 1e-12);
        for (std::uint64_t again = 0; again < 5; ++again) {
            EXPECT_EQ(measure_once(first.collapsed, seed * 31 + again).bits, first.bits);
        }
    }
}

TEST(Measurement, SameSeedSameOutcome) {
    const StateVector s = execute(single_h());
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        EXPECT_EQ(measure_once(s, seed).bits, measure_once(s, seed).bits);
    }
}

TEST(Measurement, BornRuleFrequenciesForHadamard) {
    const StateVector s = execute(single_h());
    std::uint64_t zeros = 0;
    constexpr std::uint64_t kShots = 100000;
    for (std::uint64_t seed = 0; seed < kShots; ++seed) {
        if (measure_once(s, derive_seed(12345, seed)).bits == "0") ++zeros;
    }
    const double f = static_cast<double>(zeros) / kShots;
    EXPECT_GE(f, 0.49);
    EXPECT_LE(f, 0.51);
}

TEST(Sampling, HistogramInvariants) {
    const Histogram h = sample(bell(), 10000, 7);
    EXPECT_EQ(h.shots, 10000u);
    std::uint64_t total = 0;
    for (const auto &[bits, count] : h.counts) {
        EXPECT_TRUE(bits == "00" || bits == "11") << bits;
        total += count;
    }
    EXPECT_EQ(total, h.shots);

    const Histogram zero = sample(Circuit{3, {}, false}, 17, 1);
    EXPECT_EQ(zero.counts, (std::map<std::string, std::uint64_t>{{"000", 17}}));

    const Histogram hh = sample(single_h(), 100000, 3);
    ASSERT_EQ(hh.counts.size(), 2u);
    for (const auto &[bits, count] : hh.counts) {
        EXPECT_GE(count, 49000u);
        EXPECT_LE(count, 51000u);
    }
    EXPECT_THROW((void)sample(single_h(), 0, 1), Error);
}

TEST(Sampling, AmplitudeEncodedFrequency) {
    const StateVector s = encode_amplitude({{1.2, 2.7, 1.1, 0.5}});
    const Histogram h = sample_state(s, 100000, 2025);
    const double f = static_cast<double>(h.counts.at("01")) / 100000.0;
    EXPECT_NEAR(f, 0.7154, 0.006);
}

TEST(Sampling, DeterministicAcrossCalls) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        const Circuit c = oracle::random_circuit(rng, 3, 10);
        EXPECT_EQ(sample(c, 500, t), sample(c, 500, t));
    }
}

TEST(Sampling, FrozenStreamForSeedZero) {
    // Pins the generator: any change to xoshiro256**/SplitMix64 seeding or the
    // 53-bit conversion breaks cross-platform reproducibility.
    Xoshiro256StarStar rng(0);
    EXPECT_EQ(rng(), 0x99EC5F36CB75F2B4ULL);
    EXPECT_EQ(rng(), 0xBF6E1F784956452AULL);
}

TEST(Sampling, ChiSquareOnRandomTwoQubitCircuits) {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 25; ++t) {
        const Circuit c = oracle::random_circuit(rng, 2, 12);
        const auto probs = probabilities(execute(c));
        const Histogram h = sample(c, 100000, 1000 + t);
        std::vector<std::uint64_t> counts(4, 0);
        for (const auto &[bits, n] : h.counts) counts[basis_index(bits)] = n;
        const auto chi = oracle::chi_square(probs, counts, h.shots);
        EXPECT_FALSE(chi.impossible_outcome);
        if (chi.dof > 0) {
            EXPECT_LT(chi.statistic, oracle::chi_square_critical_1e4(chi.dof)) << "circuit " << t;
        }
    }
}

TEST(Sampling, HistogramJsonIsSortedAndCompact) {
    Histogram h{5, {{"11", 2}, {"00", 3}}};
    EXPECT_EQ(to_json(h).dump(), R"({"shots":5,"counts":{"00":3,"11":2}})");
    EXPECT_EQ(histogram_from_json(to_json(h)), h);
}
