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
 * Policy evaluation by phase estimation.
 *
 * A policy's normalized return phi is loaded into an ancilla amplitude,
 * A|0> = |env> (sqrt(1 - phi)|0> + sqrt(phi)|1>), and phase estimation is run
 * on Q = A S0' A^dagger Z_anc whose eigenphases are +-theta/pi with
 * sin^2(theta) = phi. A counting readout x therefore decodes to
 * sin^2(pi x / 2^t).
 *
 * Register layout of a policy's estimation circuit: counting qubits [0, t),
 * environment qubits [t, t + e), return ancilla t + e.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gpa/gates.hpp"
#include "gpa/qfi.hpp"
#include "gpa/statevector.hpp"

namespace gpa::qpe {

struct ReturnBounds {
    double g_lo = 0.0;
    double g_hi = 1.0;

    /// Throws ArgumentError unless both are finite and g_hi > g_lo.
    void validate() const;
};

/// (x - g_lo) / (g_hi - g_lo); throws ArgumentError outside the bounds.
[[nodiscard]] double normalize_return(double x, const ReturnBounds &bounds);
/// Inverse map; `phi` must lie in [0, 1].
[[nodiscard]] double denormalize_return(double phi, const ReturnBounds &bounds);

struct Policy {
    int id = 0;
    std::vector<qfi::Action> actions;
    gates::Circuit circuit{1};
    int horizon = 0;
    /// Normalized QFI of the state the circuit prepares from |0...0>.
    double return_value = 0.0;
    std::size_t gate_count = 0;
    std::string label;
};

struct PolicySpaceConfig {
    std::vector<qfi::Action> alphabet{qfi::Action::rx, qfi::Action::ry,
                                      qfi::Action::rz, qfi::Action::squeeze,
                                      qfi::Action::cnot};
    int horizon = 4;
    std::size_t cap = 64;
    qfi::ActionAngles angles;

    void validate() const;
};

inline constexpr std::size_t kMaxPolicies = 64;

/// Two-qubit policy built from collective actions; scores its return.
[[nodiscard]] Policy make_policy(int id, std::vector<qfi::Action> actions,
                                 const qfi::ActionAngles &angles, int horizon);

/// Policy with an externally supplied circuit and return.
[[nodiscard]] Policy make_policy(int id, gates::Circuit circuit,
                                 double return_value, std::string label);

/// Every action sequence of length 1..horizon, shorter first, then
/// lexicographic in alphabet order, truncated to `cap` entries.
[[nodiscard]] std::vector<Policy> enumerate_policies(const PolicySpaceConfig &config);

/// Multiplexed Ry on the ancilla (qubit w) controlled by the policy register
/// [0, w): |x>|0> -> |x>(sqrt(1 - phi_x)|0> + sqrt(phi_x)|1>). Register values
/// past the policy list are left untouched.
[[nodiscard]] gates::Circuit build_phi_oracle(std::span<const Policy> policies,
                                              const ReturnBounds &bounds);
/// Single-ancilla form for one normalized return.
[[nodiscard]] gates::Circuit build_phi_oracle(double phi);

/// A: the policy circuit on [0, env_qubits) and the phi rotation on the
/// ancilla at index env_qubits.
[[nodiscard]] gates::Circuit return_preparation(const Policy &policy, double phi,
                                                int env_qubits);

/// Q = A S0' A^dagger Z_anc with S0' = 2|0><0| - I.
[[nodiscard]] gates::Circuit grover_operator(const Policy &policy, double phi,
                                             int env_qubits);

inline constexpr int kMaxCountingQubits = 6;

/// Generic phase estimation: `eigen_prep` then H on the counting qubits,
/// controlled target^(2^j) from counting qubit j, inverse QFT and a Measure
/// on each counting qubit. Target qubits follow the counting register.
[[nodiscard]] gates::Circuit build_qpe_circuit(int t, const gates::Circuit &target,
                                               const gates::Circuit &eigen_prep);
/// Phase-gate target with angle `ctrl_angle` prepared in its |1> eigenstate.
[[nodiscard]] gates::Circuit build_qpe_circuit(int t, double ctrl_angle);

/// Full estimation circuit of one policy. `env_qubits` < 0 means the policy
/// circuit's own width.
[[nodiscard]] gates::Circuit policy_qpe_circuit(const Policy &policy, int t,
                                                const ReturnBounds &bounds,
                                                int env_qubits = -1);

/// sin^2(pi x / 2^t).
[[nodiscard]] double decode_readout(std::uint64_t x, int t);

/// Exact counting-register distribution of policy_qpe_circuit.
[[nodiscard]] std::vector<double> readout_distribution(const Policy &policy, int t,
                                                       const ReturnBounds &bounds);

/// Most likely readout class. x and 2^t - x decode identically and are
/// pooled; ties go to the smaller representative.
[[nodiscard]] std::uint64_t modal_readout(std::span<const double> weights, int t);

struct ValueEstimate {
    /// Representative in [0, 2^(t-1)] of the modal readout class.
    std::uint64_t readout_x = 0;
    int t = 0;
    /// sin^2(pi readout_x / 2^t), in [0, 1].
    double value = 0.0;
    /// Histogram average of sin^2(pi x / 2^t).
    double mean_value = 0.0;
    /// `value` mapped back through the inverse return normalization.
    double return_estimate = 0.0;
    sim::ShotHistogram histogram;
};

[[nodiscard]] ValueEstimate estimate_value(const Policy &policy, int t,
                                           std::uint64_t shots, std::uint64_t seed,
                                           const ReturnBounds &bounds);

/// Zero-noise decoded value: modal readout of the exact distribution.
[[nodiscard]] double exact_value(const Policy &policy, int t,
                                 const ReturnBounds &bounds);

struct MaePoint {
    std::uint64_t shots = 0;
    /// Median over seeds of |estimate - exact|.
    double mae = 0.0;
    /// Per-seed absolute errors in seed order.
    std::vector<double> errors;
};

/// Each seed is reused at every shot count, so per-seed errors are paired.
[[nodiscard]] std::vector<MaePoint> mae_curve(const Policy &policy, int t,
                                              std::span<const std::uint64_t> shots_grid,
                                              std::span<const std::uint64_t> seeds,
                                              const ReturnBounds &bounds);

[[nodiscard]] double median(std::vector<double> values);

} // namespace gpa::qpe
