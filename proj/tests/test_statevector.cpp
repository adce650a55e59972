// Copyright 2026 The GPA Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gpa/errors.hpp"
#include "gpa/gates.hpp"
#include "gpa/statevector.hpp"
#include "support/generators.hpp"

namespace gpa::sim {
namespace {

using testing::Gen;

constexpr double kInvSqrt2 = 0.70710678118654752440;

Statevector bell() {
    return Statevector::from_amplitudes({kInvSqrt2, 0.0, 0.0, kInvSqrt2});
}

UnitaryMatrix pauli_x() { return UnitaryMatrix(2, {0.0, 1.0, 1.0, 0.0}); }

UnitaryMatrix hadamard() {
    return UnitaryMatrix(2, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
}

TEST(ZeroState, TwoQubits) {
    const Statevector s = new_zero_state(2);
    ASSERT_EQ(s.size(), 4U);
    EXPECT_EQ(s[0], Complex(1.0));
    EXPECT_EQ(s[1], Complex(0.0));
    EXPECT_EQ(s[2], Complex(0.0));
    EXPECT_EQ(s[3], Complex(0.0));
}

TEST(ZeroState, OneQubit) {
    const Statevector s = new_zero_state(1);
    ASSERT_EQ(s.size(), 2U);
    EXPECT_EQ(s[0], Complex(1.0));
    EXPECT_EQ(s[1], Complex(0.0));
}

TEST(ZeroState, CapacityBoundary) {
    EXPECT_THROW((void)new_zero_state(25), CapacityError);
    EXPECT_THROW((void)new_zero_state(0), CapacityError);
    EXPECT_NO_THROW((void)new_zero_state(kMaxQubits));
}

TEST(ApplyGate, XOnQubitZeroIsLittleEndian) {
    const std::vector<int> t{0};
    const Statevector s = apply_gate(new_zero_state(2), pauli_x(), t);
    EXPECT_EQ(s[1], Complex(1.0));
    EXPECT_EQ(s[0], Complex(0.0));
}

TEST(ApplyGate, InactiveControlLeavesState) {
    const std::vector<int> t{1};
    const std::vector<int> c{0};
    const Statevector s = apply_gate(new_zero_state(2), pauli_x(), t, c);
    EXPECT_EQ(s[0], Complex(1.0));
    EXPECT_EQ(s[2], Complex(0.0));
}

TEST(ApplyGate, Hadamard) {
    const std::vector<int> t{0};
    const Statevector s = apply_gate(new_zero_state(1), hadamard(), t);
    EXPECT_NEAR(std::abs(s[0] - kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - kInvSqrt2), 0.0, 1e-15);
}

TEST(ApplyGate, RejectsBadOperands) {
    Statevector s(3);
    const std::vector<int> same{1};
    EXPECT_THROW(s.apply(pauli_x(), same, same), ArgumentError);
    const std::vector<int> out{3};
    EXPECT_THROW(s.apply(pauli_x(), out), ArgumentError);
    const std::vector<int> two{0, 1};
    EXPECT_THROW(s.apply(pauli_x(), two), ArgumentError);
    const std::vector<int> dup{0, 0};
    EXPECT_THROW(s.apply(UnitaryMatrix::identity(4), dup), ArgumentError);
}

TEST(UnitaryMatrixTest, RejectsNonUnitary) {
    EXPECT_THROW(UnitaryMatrix(2, {1.0, 1.0, 0.0, 1.0}), ArgumentError);
    EXPECT_THROW(UnitaryMatrix(3, std::vector<Complex>(9, 0.0)), ArgumentError);
}

TEST(Expectation, CollectiveZ) {
    const std::vector<double> zc{2.0, 0.0, 0.0, -2.0};
    const std::vector<double> zc2{4.0, 0.0, 0.0, 4.0};
    EXPECT_DOUBLE_EQ(expectation_diag(new_zero_state(2), zc), 2.0);
    EXPECT_NEAR(expectation_diag(bell(), zc), 0.0, 1e-15);
    EXPECT_NEAR(expectation_diag(bell(), zc2), 4.0, 1e-14);
    const std::vector<double> short_diag{1.0, 2.0};
    EXPECT_THROW((void)expectation_diag(bell(), short_diag), ArgumentError);
}

TEST(Sampling, DeterministicOutcome) {
    const std::vector<int> q{0};
    const ShotHistogram h = sample_measure(new_zero_state(1), q, 777, 3);
    EXPECT_EQ(h.count("0"), 777U);
    EXPECT_EQ(h.total_shots, 777U);
    EXPECT_EQ(h.width, 1);
}

TEST(Sampling, PlusStateFrequency) {
    const Statevector plus = Statevector::from_amplitudes({kInvSqrt2, kInvSqrt2});
    const std::vector<int> q{0};
    const ShotHistogram h = sample_measure(plus, q, 100000, 42);
    EXPECT_NEAR(static_cast<double>(h.count("1")) / 1e5, 0.5, 0.01);
}

TEST(Sampling, BellHasOnlyCorrelatedOutcomes) {
    const std::vector<int> q{0, 1};
    const ShotHistogram h = sample_measure(bell(), q, 5000, 9);
    EXPECT_EQ(h.count("00") + h.count("11"), 5000U);
    EXPECT_EQ(h.count("01"), 0U);
    EXPECT_EQ(h.count("10"), 0U);
}

TEST(Sampling, Errors) {
    const std::vector<int> none;
    EXPECT_THROW((void)sample_measure(bell(), none, 10, 1), ArgumentError);
    const std::vector<int> q{0};
    EXPECT_THROW((void)sample_measure(bell(), q, 0, 1), ArgumentError);
    EXPECT_THROW((void)collapse_measure(bell(), none, 1), ArgumentError);
}

TEST(Sampling, SameSeedSameHistogram) {
    Gen gen(11);
    const Statevector s = testing::random_state(4, gen);
    const std::vector<int> q{0, 1, 2, 3};
    EXPECT_EQ(sample_measure(s, q, 2000, 5).counts, sample_measure(s, q, 2000, 5).counts);
}

TEST(Sampling, BitstringPutsLastQubitLeftmost) {
    const Statevector s = Statevector::basis(3, 0b001);
    const std::vector<int> q{2, 0};
    const ShotHistogram h = sample_measure(s, q, 10, 0);
    EXPECT_EQ(h.count("10"), 10U);
}

TEST(Collapse, Eigenstate) {
    const std::vector<int> q{0};
    const CollapseResult r = collapse_measure(Statevector::basis(1, 1), q, 4);
    EXPECT_EQ(r.outcome, "1");
    EXPECT_EQ(r.state[1], Complex(1.0));
}

TEST(Collapse, BellProjectsOntoOutcome) {
    const std::vector<int> q{0, 1};
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        const CollapseResult r = collapse_measure(bell(), q, seed);
        ASSERT_TRUE(r.outcome == "00" || r.outcome == "11");
        const std::size_t idx = r.outcome == "00" ? 0 : 3;
        EXPECT_NEAR(std::abs(r.state[idx]), 1.0, 1e-12);
        EXPECT_NEAR(r.state.norm(), 1.0, 1e-12);
    }
}

TEST(Collapse, Repeatable) {
    const Statevector plus = Statevector::from_amplitudes({kInvSqrt2, kInvSqrt2});
    const std::vector<int> q{0};
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        const CollapseResult first = collapse_measure(plus, q, seed);
        const CollapseResult second = collapse_measure(first.state, q, seed * 31 + 7);
        EXPECT_EQ(first.outcome, second.outcome);
    }
}

TEST(Marginalize, KeepsCountsAndWidth) {
    ShotHistogram h;
    h.width = 3;
    h.total_shots = 6;
    h.counts = {{"001", 2}, {"110", 4}};
    const std::vector<int> pos{0, 2};
    const ShotHistogram m = marginalize(h, pos);
    EXPECT_EQ(m.width, 2);
    EXPECT_EQ(m.count("01"), 2U);
    EXPECT_EQ(m.count("10"), 4U);
    EXPECT_EQ(m.total_shots, 6U);
}

// --- properties -----------------------------------------------------------

TEST(StatevectorProperty, NormPreservedOverRandomGates) {
    Gen gen(1001);
    Statevector s = testing::random_state(4, gen);
    for (int i = 0; i < 1000; ++i) {
        const int arity = gen.integer(1, 2);
        const int n_controls = gen.integer(0, 4 - arity);
        std::vector<int> qubits = gen.distinct_qubits(4, arity + n_controls);
        const std::vector<int> targets(qubits.begin(), qubits.begin() + arity);
        const std::vector<int> controls(qubits.begin() + arity, qubits.end());
        s.apply(testing::random_unitary(std::size_t{1} << arity, gen), targets, controls);
        ASSERT_LE(std::abs(s.norm() - 1.0), 1e-12) << "gate " << i;
    }
}

TEST(StatevectorProperty, Reversibility) {
    Gen gen(1002);
    for (int trial = 0; trial < 200; ++trial) {
        const Statevector start = testing::random_state(4, gen);
        const int arity = gen.integer(1, 3);
        const int n_controls = gen.integer(0, 4 - arity);
        std::vector<int> qubits = gen.distinct_qubits(4, arity + n_controls);
        const std::vector<int> targets(qubits.begin(), qubits.begin() + arity);
        const std::vector<int> controls(qubits.begin() + arity, qubits.end());
        const UnitaryMatrix u = testing::random_unitary(std::size_t{1} << arity, gen);
        Statevector s = start;
        s.apply(u, targets, controls);
        s.apply(u.adjoint(), targets, controls);
        ASSERT_LE(testing::max_abs_diff(s.amplitudes(), start.amplitudes()), 1e-12);
    }
}

TEST(StatevectorProperty, InactiveControlsAreIdentityOnBasisStates) {
    Gen gen(1003);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 4;
        const int n_controls = gen.integer(1, 3);
        std::vector<int> qubits = gen.distinct_qubits(n, n_controls + 1);
        const std::vector<int> targets{qubits[0]};
        const std::vector<int> controls(qubits.begin() + 1, qubits.end());
        const UnitaryMatrix u = testing::random_unitary(2, gen);
        for (std::uint64_t i = 0; i < 16; ++i) {
            bool all_on = true;
            for (int c : controls) {
                all_on = all_on && ((i >> c) & 1U) == 1U;
            }
            if (all_on) {
                continue;
            }
            Statevector s = Statevector::basis(n, i);
            s.apply(u, targets, controls);
            for (std::uint64_t j = 0; j < 16; ++j) {
                ASSERT_EQ(s[j], Complex(j == i ? 1.0 : 0.0));
            }
        }
    }
}

TEST(StatevectorProperty, EndiannessExhaustive) {
    for (int n = 1; n <= 4; ++n) {
        for (int j = 0; j < n; ++j) {
            const std::vector<int> t{j};
            for (std::uint64_t i = 0; i < (1U << n); ++i) {
                const Statevector s = apply_gate(Statevector::basis(n, i), pauli_x(), t);
                ASSERT_EQ(s[i ^ (1U << j)], Complex(1.0));
            }
        }
    }
}

TEST(StatevectorProperty, SamplingTotalVariation) {
    Gen gen(1004);
    const std::vector<int> q{0, 1, 2, 3};
    for (int state_idx = 0; state_idx < 3; ++state_idx) {
        const Statevector s = testing::random_state(4, gen);
        const std::vector<double> exact = marginal_probabilities(s, q);
        std::vector<double> tvs;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const ShotHistogram h = sample_measure(s, q, 100000, seed);
            tvs.push_back(testing::total_variation(testing::frequencies(h), exact));
        }
        EXPECT_LE(testing::median_of(tvs), 0.01);
    }
}

TEST(StatevectorProperty, HistogramInvariants) {
    Gen gen(1005);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = gen.integer(1, 5);
        const Statevector s = testing::random_state(n, gen);
        const int k = gen.integer(1, n);
        const std::vector<int> q = gen.distinct_qubits(n, k);
        const std::uint64_t shots = static_cast<std::uint64_t>(gen.integer(1, 3000));
        const ShotHistogram h = sample_measure(s, q, shots, gen.bits());
        std::uint64_t sum = 0;
        for (const auto &[key, count] : h.counts) {
            ASSERT_EQ(static_cast<int>(key.size()), k);
            sum += count;
        }
        ASSERT_EQ(sum, shots);
    }
}

TEST(StatevectorProperty, BitstringRoundTrip) {
    Gen gen(1006);
    for (int i = 0; i < 500; ++i) {
        const int width = gen.integer(1, 20);
        const std::uint64_t v = gen.bits() & ((std::uint64_t{1} << width) - 1);
        ASSERT_EQ(from_bitstring(to_bitstring(v, width)), v);
    }
}

} // namespace
} // namespace gpa::sim
