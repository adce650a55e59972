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
#include "support/generators.hpp"

namespace gpa::gates {
namespace {

using sim::Statevector;
using sim::UnitaryMatrix;
using testing::Gen;

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

UnitaryMatrix pauli_x() { return UnitaryMatrix(2, {0.0, 1.0, 1.0, 0.0}); }

double unitarity_defect(const UnitaryMatrix &u) {
    return (u * u.adjoint()).max_abs_diff(UnitaryMatrix::identity(u.dim()));
}

/// Basis index reached from `input` (asserts the output is a basis state).
std::uint64_t run_basis(const Circuit &c, std::uint64_t input) {
    const Statevector s = simulate(c, Statevector::basis(c.num_qubits(), input));
    for (std::uint64_t i = 0; i < s.size(); ++i) {
        if (std::abs(s[i]) > 0.5) {
            EXPECT_NEAR(std::abs(s[i]), 1.0, 1e-9);
            return i;
        }
    }
    ADD_FAILURE() << "no dominant basis state";
    return 0;
}

TEST(Rotation, ZeroIsIdentity) {
    EXPECT_LE(rotation(Axis::x, 0.0).max_abs_diff(UnitaryMatrix::identity(2)), 0.0);
}

TEST(Rotation, GroupLaw) {
    Gen gen(2001);
    for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
        for (int i = 0; i < 50; ++i) {
            const double a = gen.uniform(-7.0, 7.0);
            const double b = gen.uniform(-7.0, 7.0);
            EXPECT_LE((rotation(axis, a) * rotation(axis, b))
                          .max_abs_diff(rotation(axis, a + b)),
                      1e-12);
        }
    }
}

TEST(Rotation, ZByPi) {
    const UnitaryMatrix r = rotation(Axis::z, kPi);
    EXPECT_NEAR(std::abs(r(0, 0) + kI), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r(1, 1) - kI), 0.0, 1e-15);
    EXPECT_EQ(r(0, 1), Complex(0.0));
}

TEST(Rotation, NonFiniteAngle) {
    EXPECT_THROW((void)rotation(Axis::y, std::nan("")), ArgumentError);
    EXPECT_THROW((void)rx(INFINITY, 0), ArgumentError);
}

TEST(Squeeze, ZeroIsIdentity) {
    EXPECT_LE(squeeze_matrix(0.0).max_abs_diff(UnitaryMatrix::identity(4)), 0.0);
}

TEST(Squeeze, ZeroEigenvalueStatesUntouched) {
    Circuit c(2);
    c.add(squeeze(0.731, 0, 1));
    for (std::uint64_t in : {1U, 2U}) {
        const Statevector s = simulate(c, Statevector::basis(2, in));
        EXPECT_EQ(s[in], Complex(1.0));
    }
}

TEST(Squeeze, QuarterPiOnZeroZero) {
    Circuit c(2);
    c.add(squeeze(kPi / 4, 0, 1));
    const Statevector s = simulate(c);
    EXPECT_NEAR(std::abs(s[0] + 1.0), 0.0, 1e-15);
}

TEST(Squeeze, DuplicateQubits) {
    EXPECT_THROW((void)squeeze(0.1, 1, 1), ArgumentError);
    Circuit c(3);
    EXPECT_THROW(c.add(squeeze(0.1, 2, 2)), ArgumentError);
}

TEST(VGate, SquaresToX) {
    EXPECT_LE((v_gate() * v_gate()).max_abs_diff(pauli_x()), 1e-12);
}

TEST(VGate, InversePair) {
    EXPECT_LE((v_gate() * v_inv_gate()).max_abs_diff(UnitaryMatrix::identity(2)), 1e-12);
    EXPECT_LE(v_inv_gate().max_abs_diff(v_gate().adjoint()), 0.0);
}

TEST(VGate, Entries) {
    const Complex f = (1.0 + kI) / 2.0;
    const UnitaryMatrix v = v_gate();
    EXPECT_NEAR(std::abs(v(0, 0) - f), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v(0, 1) - f * -kI), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v(1, 0) - f * -kI), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v(1, 1) - f), 0.0, 1e-15);
}

TEST(Qft, ZeroStateToUniform) {
    for (int n = 1; n <= kMaxQftQubits; ++n) {
        const Statevector s = simulate(qft(n));
        const double expect = std::pow(2.0, -n / 2.0);
        for (std::uint64_t i = 0; i < s.size(); ++i) {
            ASSERT_NEAR(std::abs(s[i] - expect), 0.0, 1e-9) << n;
        }
    }
}

TEST(Qft, InverseOnAllBasisStatesN3) {
    Circuit c = qft(3);
    c.append(qft_inv(3));
    for (std::uint64_t i = 0; i < 8; ++i) {
        const Statevector s = simulate(c, Statevector::basis(3, i));
        EXPECT_NEAR(std::abs(s[i] - 1.0), 0.0, 1e-9);
    }
}

TEST(Qft, TwoQubitsIsDft) {
    const UnitaryMatrix u = circuit_unitary(qft(2));
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t k = 0; k < 4; ++k) {
            const Complex w = std::pow(kI, static_cast<double>((j * k) % 4)) / 2.0;
            EXPECT_NEAR(std::abs(u(j, k) - w), 0.0, 1e-12);
        }
    }
}

TEST(Qft, MatchesDft) {
    for (int n = 1; n <= 6; ++n) {
        const UnitaryMatrix u = circuit_unitary(qft(n));
        const std::size_t dim = u.dim();
        for (std::size_t j = 0; j < dim; ++j) {
            for (std::size_t k = 0; k < dim; ++k) {
                const double ang = 2.0 * kPi * static_cast<double>(j * k % dim) /
                                   static_cast<double>(dim);
                const Complex w = std::polar(1.0 / std::sqrt(static_cast<double>(dim)), ang);
                ASSERT_NEAR(std::abs(u(j, k) - w), 0.0, 1e-9);
            }
        }
    }
}

TEST(Qft, CapacityBoundary) {
    EXPECT_THROW((void)qft(0), CapacityError);
    EXPECT_THROW((void)qft(9), CapacityError);
    EXPECT_THROW((void)qft_inv(9), CapacityError);
}

TEST(Adder, InverseOfZeroLeavesS) {
    for (int n = 1; n <= kMaxAdderBits; ++n) {
        const Circuit inv = cdkm_adder_inv(n);
        for (std::uint64_t s = 0; s < (1U << (n + 1)); ++s) {
            EXPECT_EQ(run_basis(inv, s << n), s << n);
        }
    }
}

TEST(Adder, TwoBitExample) {
    const Circuit inv = cdkm_adder_inv(2);
    const std::uint64_t in = 1U | (3U << 2);
    EXPECT_EQ(run_basis(inv, in), 1U | (2U << 2));
}

TEST(Adder, InversePairN2) {
    Circuit c = cdkm_adder(2);
    c.append(cdkm_adder_inv(2));
    for (std::uint64_t i = 0; i < 32; ++i) {
        EXPECT_EQ(run_basis(c, i), i);
    }
}

TEST(Adder, CapacityBoundary) {
    EXPECT_THROW((void)cdkm_adder(0), CapacityError);
    EXPECT_THROW((void)cdkm_adder(4), CapacityError);
    EXPECT_THROW((void)cdkm_adder_inv(4), CapacityError);
}

TEST(Adder, ClassicalAdditionExhaustive) {
    for (int n = 1; n <= kMaxAdderBits; ++n) {
        const Circuit add = cdkm_adder(n);
        const std::uint64_t mod = 1U << (n + 1);
        for (std::uint64_t a = 0; a < (1U << n); ++a) {
            for (std::uint64_t b = 0; b < mod; ++b) {
                const std::uint64_t out = run_basis(add, a | (b << n));
                ASSERT_EQ(out & ((1U << n) - 1), a);
                ASSERT_EQ((out >> n) & (mod - 1), (a + b) % mod) << n << ' ' << a << ' ' << b;
                ASSERT_EQ(out >> (2 * n + 1), 0U) << "helper not restored";
            }
        }
    }
}

TEST(HalfSubtractor, TruthTable) {
    // minuend 0, subtrahend 1, borrow 2.
    const Circuit c = half_subtractor(0, 1, 2);
    struct Row {
        int m, s, diff, borrow;
    };
    for (const Row r : {Row{0, 0, 0, 0}, Row{0, 1, 1, 1}, Row{1, 0, 1, 0}, Row{1, 1, 0, 0}}) {
        const std::uint64_t out = run_basis(c, static_cast<std::uint64_t>(r.m | (r.s << 1)));
        EXPECT_EQ(static_cast<int>(out & 1U), r.m);
        EXPECT_EQ(static_cast<int>((out >> 1) & 1U), r.diff);
        EXPECT_EQ(static_cast<int>((out >> 2) & 1U), r.borrow);
    }
}

TEST(HalfSubtractor, GateCensus) {
    const auto census = half_subtractor(0, 1, 2).census();
    EXPECT_EQ(census.at(GateKind::CNOT), 1U);
    EXPECT_EQ(census.at(GateKind::CV), 2U);
    EXPECT_EQ(census.at(GateKind::CVinv), 1U);
}

TEST(HalfSubtractor, DuplicateQubits) {
    EXPECT_THROW((void)half_subtractor(0, 0, 2), ArgumentError);
    EXPECT_THROW((void)half_subtractor(1, 2, 2), ArgumentError);
}

TEST(Toffoli, TruthTable) {
    Circuit c(3);
    c.add(toffoli(0, 1, 2));
    for (std::uint64_t i = 0; i < 8; ++i) {
        const std::uint64_t expect = (i & 3U) == 3U ? i ^ 4U : i;
        EXPECT_EQ(run_basis(c, i), expect);
    }
}

TEST(GateSpecTest, AngleIffParametric) {
    GateSpec h_with_angle = h(0);
    h_with_angle.angle = 0.3;
    EXPECT_THROW(validate(h_with_angle), ArgumentError);
    GateSpec rx_without = rx(0.3, 0);
    rx_without.angle.reset();
    EXPECT_THROW(validate(rx_without), ArgumentError);
    GateSpec toffoli_short = toffoli(0, 1, 2);
    toffoli_short.controls.pop_back();
    EXPECT_THROW(validate(toffoli_short), ArgumentError);
}

TEST(GateSpecTest, NamesRoundTrip) {
    for (GateKind k : {GateKind::H, GateKind::X, GateKind::CNOT, GateKind::Toffoli,
                       GateKind::Rx, GateKind::Ry, GateKind::Rz, GateKind::Squeeze,
                       GateKind::V, GateKind::Vinv, GateKind::CV, GateKind::CVinv,
                       GateKind::QFT, GateKind::QFTinv, GateKind::AdderInv,
                       GateKind::Measure}) {
        EXPECT_EQ(kind_from_name(name(k)), k);
    }
}

TEST(CircuitTest, RejectsOutOfRangeQubit) {
    Circuit c(2);
    EXPECT_THROW(c.add(h(2)), ArgumentError);
    EXPECT_THROW(c.add(cnot(0, 0)), ArgumentError);
}

TEST(CircuitTest, AdjointUndoes) {
    Gen gen(2002);
    Circuit c(3);
    for (int i = 0; i < 30; ++i) {
        const std::vector<int> q = gen.distinct_qubits(3, 3);
        switch (gen.integer(0, 5)) {
        case 0:
            c.add(rx(gen.uniform(-3, 3), q[0]));
            break;
        case 1:
            c.add(ry(gen.uniform(-3, 3), q[0]));
            break;
        case 2:
            c.add(squeeze(gen.uniform(-3, 3), q[0], q[1]));
            break;
        case 3:
            c.add(cv(q[0], q[1]));
            break;
        case 4:
            c.add(toffoli(q[0], q[1], q[2]));
            break;
        default:
            c.add(h(q[0]));
        }
    }
    Circuit round = c;
    round.append(c.adjoint());
    EXPECT_LE(circuit_unitary(round).max_abs_diff(UnitaryMatrix::identity(8)), 1e-9);
}

// --- properties -----------------------------------------------------------

TEST(GatesProperty, EveryGateSpecIsUnitary) {
    Gen gen(2003);
    for (int i = 0; i < 200; ++i) {
        const double a = gen.uniform(-10.0, 10.0);
        for (const GateSpec &g :
             {h(0), x(0), z(0), cnot(0, 1), toffoli(0, 1, 2), rx(a, 0), ry(a, 0), rz(a, 0),
              phase(a, 0), squeeze(a, 0, 1), cv(0, 1), cv_inv(0, 1), swap(0, 1)}) {
            ASSERT_LE(unitarity_defect(unitary(g)), 1e-12) << name(g.kind);
        }
    }
    EXPECT_LE(unitarity_defect(v_gate()), 1e-12);
    EXPECT_LE(unitarity_defect(v_inv_gate()), 1e-12);
}

TEST(GatesProperty, SqueezeCommutesWithRz) {
    Gen gen(2004);
    for (int i = 0; i < 100; ++i) {
        const double theta = gen.uniform(-4.0, 4.0);
        const double alpha = gen.uniform(-4.0, 4.0);
        const int q = gen.integer(0, 1);
        Circuit ab(2);
        ab.add(squeeze(theta, 0, 1));
        ab.add(rz(alpha, q));
        Circuit ba(2);
        ba.add(rz(alpha, q));
        ba.add(squeeze(theta, 0, 1));
        ASSERT_LE(circuit_unitary(ab).max_abs_diff(circuit_unitary(ba)), 1e-12);
    }
}

TEST(GatesProperty, QftTimesAdjointIsIdentity) {
    for (int n = 1; n <= 6; ++n) {
        const UnitaryMatrix u = circuit_unitary(qft(n));
        EXPECT_LE((u * u.adjoint()).max_abs_diff(UnitaryMatrix::identity(u.dim())), 1e-9);
        EXPECT_LE(circuit_unitary(qft_inv(n)).max_abs_diff(u.adjoint()), 1e-9);
    }
}

TEST(GatesProperty, ControlledMatchesBlockDiagonal) {
    Gen gen(2005);
    for (int i = 0; i < 20; ++i) {
        Circuit c(3);
        c.add(ry(gen.uniform(-3, 3), 0));
        c.add(cnot(0, 1));
        c.add(squeeze(gen.uniform(-3, 3), 1, 2));
        const UnitaryMatrix u = circuit_unitary(c);
        const Circuit wide = c.remapped(std::vector<int>{0, 1, 2}, 4).controlled(3);
        const UnitaryMatrix cu = circuit_unitary(wide);
        for (std::size_t r = 0; r < 16; ++r) {
            for (std::size_t col = 0; col < 16; ++col) {
                Complex expect = 0.0;
                if ((r >> 3) != (col >> 3)) {
                    expect = 0.0;
                } else if ((r >> 3) == 0) {
                    expect = r == col ? 1.0 : 0.0;
                } else {
                    expect = u(r & 7U, col & 7U);
                }
                ASSERT_NEAR(std::abs(cu(r, col) - expect), 0.0, 1e-12);
            }
        }
    }
}

} // namespace
} // namespace gpa::gates
