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
/**
 * @file
 * Gate library: named gates, their unitaries, and the composite sub-circuits
 * (QFT, CDKM ripple-carry adder, CV-based half subtractor) used by the sensor
 * and phase-estimation circuits.
 *
 * Rotations follow the half-angle convention R_P(theta) = exp(-i theta P / 2),
 * so angles from the experiment descriptions are passed through verbatim.
 */
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gpa/statevector.hpp"

namespace gpa::gates {

using sim::Complex;

enum class GateKind {
    H,
    X,
    Z,
    CNOT,
    Toffoli,
    Rx,
    Ry,
    Rz,
    Phase,
    Squeeze,
    V,
    Vinv,
    CV,
    CVinv,
    Swap,
    QFT,
    QFTinv,
    Adder,
    AdderInv,
    Measure,
    Unitary,
    Diagonal,
};

enum class Axis { x, y, z };

[[nodiscard]] std::string_view name(GateKind kind);
[[nodiscard]] std::optional<GateKind> kind_from_name(std::string_view name);
[[nodiscard]] bool is_parametric(GateKind kind);
/// QFT, QFTinv, Adder and AdderInv expand into primitive gates.
[[nodiscard]] bool is_composite(GateKind kind);

/// One operation of a circuit.
///
/// `targets` lists the qubits the gate's matrix acts on (local bit i =
/// targets[i]); `controls` are extra qubits that must all be |1>. For composite
/// kinds `targets` holds the whole register in layout order: n qubits for
/// QFT/QFTinv, and `a[0..n), b[0..n), carry, helper` for the adders.
struct GateSpec {
    GateKind kind = GateKind::H;
    std::optional<double> angle;
    std::vector<int> targets;
    std::vector<int> controls;
    /// Payload for GateKind::Unitary.
    std::shared_ptr<const sim::UnitaryMatrix> matrix;
    /// Payload for GateKind::Diagonal (length 2^targets.size()).
    std::shared_ptr<const std::vector<Complex>> phases;
    /// Free-form tag carried into diagnostics (e.g. "S0", "oracle").
    std::string label;
};

/// Throws ArgumentError when the spec violates the kind's arity, its angle
/// requirement, or its payload requirement.
void validate(const GateSpec &spec);

/// Matrix of a primitive gate over its targets only (controls excluded).
[[nodiscard]] sim::UnitaryMatrix unitary(const GateSpec &spec);

/// Whether the spec's matrix is diagonal (enables the diagonal fast path).
[[nodiscard]] bool is_diagonal(const GateSpec &spec);

[[nodiscard]] GateSpec adjoint(const GateSpec &spec);

/// Ordered gate sequence over a fixed-width register.
class Circuit {
  public:
    explicit Circuit(int num_qubits);

    [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] const std::vector<GateSpec> &ops() const noexcept {
        return ops_;
    }
    [[nodiscard]] bool empty() const noexcept { return ops_.empty(); }

    /// Validates the spec and its qubit indices against this register.
    Circuit &add(GateSpec spec);

    /// Appends `other`, mapping its qubit q to `qubit_map[q]` (identity if the
    /// map is empty).
    Circuit &append(const Circuit &other, std::span<const int> qubit_map = {});

    /// Reverse order, each gate replaced by its adjoint. Measurements are
    /// dropped.
    [[nodiscard]] Circuit adjoint() const;

    /// Adds `control` to every operation (composites are expanded first).
    [[nodiscard]] Circuit controlled(int control) const;

    /// Same circuit with composites replaced by their primitive gates.
    [[nodiscard]] Circuit expanded() const;

    [[nodiscard]] Circuit remapped(std::span<const int> qubit_map,
                                   int num_qubits) const;

    /// Qubits with a Measure op, in first-appearance order.
    [[nodiscard]] std::vector<int> measured_qubits() const;

    /// Number of primitive unitary gates after expansion.
    [[nodiscard]] std::size_t gate_count() const;

    /// Gate kind -> count over the ops as written (composites not expanded).
    [[nodiscard]] std::map<GateKind, std::size_t> census() const;

  private:
    int num_qubits_;
    std::vector<GateSpec> ops_;
};

/// Applies every unitary op of `circuit` to `state` in place.
void run(const Circuit &circuit, sim::Statevector &state);

/// Raw-buffer variant used for block-structured registers.
void run(const Circuit &circuit, std::span<Complex> amplitudes);

/// Runs `circuit` on |0...0>.
[[nodiscard]] sim::Statevector simulate(const Circuit &circuit);
[[nodiscard]] sim::Statevector simulate(const Circuit &circuit,
                                        sim::Statevector initial);

/// Full unitary of a circuit (column by column); intended for <= 12 qubits.
[[nodiscard]] sim::UnitaryMatrix circuit_unitary(const Circuit &circuit);

// --- named gates -----------------------------------------------------------

[[nodiscard]] sim::UnitaryMatrix rotation(Axis axis, double theta);

/// Two-qubit one-axis-twisting gate exp(-i theta Z_c^2) where Z_c = Z_0 + Z_1,
/// i.e. diag(e^{-4i theta}, 1, 1, e^{-4i theta}).
[[nodiscard]] sim::UnitaryMatrix squeeze_matrix(double theta);
[[nodiscard]] GateSpec squeeze(double theta, int q0, int q1);

/// V = (1+i)/2 [[1, -i], [-i, 1]], the square root of NOT.
[[nodiscard]] sim::UnitaryMatrix v_gate();
/// V^dagger = (1-i)/2 [[1, i], [i, 1]].
[[nodiscard]] sim::UnitaryMatrix v_inv_gate();

// Convenience constructors.
[[nodiscard]] GateSpec h(int q);
[[nodiscard]] GateSpec x(int q);
[[nodiscard]] GateSpec z(int q);
[[nodiscard]] GateSpec cnot(int control, int target);
[[nodiscard]] GateSpec toffoli(int c0, int c1, int target);
[[nodiscard]] GateSpec rx(double theta, int q);
[[nodiscard]] GateSpec ry(double theta, int q);
[[nodiscard]] GateSpec rz(double theta, int q);
[[nodiscard]] GateSpec phase(double lambda, int target,
                             std::vector<int> controls = {});
[[nodiscard]] GateSpec cv(int control, int target);
[[nodiscard]] GateSpec cv_inv(int control, int target);
[[nodiscard]] GateSpec swap(int a, int b);
[[nodiscard]] GateSpec measure(int q);
[[nodiscard]] GateSpec custom(sim::UnitaryMatrix matrix, std::vector<int> targets,
                              std::string label = {});
[[nodiscard]] GateSpec diagonal(std::vector<Complex> phases,
                                std::vector<int> targets, std::string label = {});

// --- composite sub-circuits ------------------------------------------------

inline constexpr int kMaxQftQubits = 8;
inline constexpr int kMaxAdderBits = 3;

/// QFT|x> = 2^{-n/2} sum_k e^{2 pi i x k / 2^n} |k> (little-endian), built
/// from H, controlled phases and a final swap network. Throws CapacityError
/// unless 1 <= n <= 8.
[[nodiscard]] Circuit qft(int n);
[[nodiscard]] Circuit qft_inv(int n);

/// Cuccaro-Draper-Kutin-Moulton ripple-carry adder built from MAJ/UMA blocks.
/// Layout: a = [0, n), b = [n, 2n), carry = 2n, helper = 2n + 1 (must be |0>).
/// Maps |a>|b>|c> to |a>|(b + 2^n c + a) mod 2^{n+1}> with the high bit in
/// the carry qubit. Throws CapacityError unless 1 <= n_bits <= 3.
[[nodiscard]] Circuit cdkm_adder(int n_bits);
/// Exact inverse: |a>|s> -> |a>|(s - a) mod 2^{n+1}>, the carry qubit holding
/// the borrow (sign) bit.
[[nodiscard]] Circuit cdkm_adder_inv(int n_bits);

/// Half subtractor on (minuend, subtrahend, borrow) from one CNOT, two CV and
/// one CV^dagger: the subtrahend qubit ends holding minuend XOR subtrahend and
/// the borrow qubit (initially |0>) holds NOT(minuend) AND subtrahend.
/// The circuit width is max(index) + 1.
[[nodiscard]] Circuit half_subtractor(int minuend, int subtrahend, int borrow);

} // namespace gpa::gates
