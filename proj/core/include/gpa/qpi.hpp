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
 * Policy improvement by Grover search over the evaluated policy space.
 *
 * The search register places every policy's phase-estimation register in the
 * low qubits [0, E) and the policy index in the high qubits [E, E + w), so the
 * amplitudes of policy p form the contiguous block [p 2^E, (p + 1) 2^E). The
 * counting qubits of each block are its low t bits.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gpa/gates.hpp"
#include "gpa/qpe.hpp"
#include "gpa/statevector.hpp"

namespace gpa::qpi {

struct SearchSpace {
    std::vector<qpe::Policy> policies;
    int t = 0;
    qpe::ReturnBounds bounds;
    /// Qubits per block: counting, environment and return ancilla.
    int eval_qubits = 0;
    int env_qubits = 0;
    int policy_qubits = 0;
    /// Value estimate per policy id, in return units.
    std::vector<double> values;
    /// A|0...0>.
    sim::Statevector prepared{1};

    [[nodiscard]] int num_qubits() const { return eval_qubits + policy_qubits; }
    [[nodiscard]] std::size_t block_size() const {
        return std::size_t{1} << eval_qubits;
    }

    // Cached pieces of A.
    gates::Circuit policy_prep{1};
    std::vector<gates::Circuit> blocks;
    std::vector<gates::Circuit> blocks_adjoint;
};

/// Builds A = (prod_p OPE_p) (H_P (x) id). `values` holds the per-policy
/// estimates; when empty the zero-noise decoded values are used. Throws
/// ArgumentError unless 2 <= |P| <= 64.
[[nodiscard]] SearchSpace prepare_search_space(std::vector<qpe::Policy> policies,
                                               int t, const qpe::ReturnBounds &bounds,
                                               std::vector<double> values = {});

/// Applies A (or A^dagger) to a raw buffer of the search register.
void apply_preparation(const SearchSpace &space, std::span<sim::Complex> amplitudes,
                       bool adjoint = false);

/// Policy-register marginal, indexed by policy id.
[[nodiscard]] std::vector<double> policy_marginals(const SearchSpace &space,
                                                   const sim::Statevector &state);

struct ThresholdOracle {
    double v_ref = 0.0;
    int t = 0;
    /// flips[x] is true iff readout x is marked.
    std::vector<bool> flips;

    [[nodiscard]] std::vector<sim::Complex> phases() const;
    [[nodiscard]] std::size_t marked_count() const;
};

/// Tolerance for the strict comparison in the threshold test.
inline constexpr double kThresholdTol = 1e-12;

/// Marks x iff phi^{-1}(sin^2(pi x / 2^t)) - v_ref > kThresholdTol.
[[nodiscard]] ThresholdOracle build_threshold_oracle(double v_ref, int t,
                                                     const qpe::ReturnBounds &bounds);

void apply_oracle(const ThresholdOracle &oracle, std::span<sim::Complex> amplitudes);

/// Probability that the counting register of `state` reads a marked value.
[[nodiscard]] double good_probability(const ThresholdOracle &oracle,
                                      const sim::Statevector &state);

/// L rounds of oracle then reflection 2|Psi><Psi| - I about the prepared
/// state, starting from `state` (the prepared state when omitted).
[[nodiscard]] sim::Statevector grover_iterate(const SearchSpace &space,
                                              const ThresholdOracle &oracle, int L);
[[nodiscard]] sim::Statevector grover_iterate(const SearchSpace &space,
                                              const ThresholdOracle &oracle, int L,
                                              sim::Statevector state);

/// Same rounds written literally as -A S0 A^dagger O, with S0 = I - 2|0><0|.
[[nodiscard]] sim::Statevector grover_iterate_explicit(const SearchSpace &space,
                                                       const ThresholdOracle &oracle,
                                                       int L);

struct RotationPlan {
    double k = 0.0;
    double r = 0.0;
    double v_next = 0.0;
    double theta = 0.0;
    int L = 0;
};

/// Default angle for the rotation cap when no Grover angle is known.
inline constexpr double kDefaultCapAngle = 0.05;

/// L = min(int(k (r + v_next)), int(pi / (4 theta) - 1/2)). Throws
/// ArgumentError unless theta is in (0, pi/2] and k, r, v_next >= 0.
[[nodiscard]] int rotation_count(double k, double r, double v_next, double theta);
[[nodiscard]] RotationPlan make_plan(double k, double r, double v_next,
                                     double theta);
/// Plan that ignores the formula and runs exactly `L` rotations.
[[nodiscard]] RotationPlan fixed_plan(int L);

struct Improvement {
    int policy_id = 0;
    /// Exact good probability after each rotation (length plan.L).
    std::vector<double> good_trace;
    /// Policy marginals after each rotation (length plan.L).
    std::vector<std::vector<double>> policy_trace;
    /// Policy marginals of the measured state.
    std::vector<double> final_marginals;
};

/// Runs plan.L Grover rounds with the oracle at `v_current` and measures the
/// policy register with `seed`.
[[nodiscard]] Improvement improve_policy(const SearchSpace &space,
                                         double v_current, const RotationPlan &plan,
                                         std::uint64_t seed);

} // namespace gpa::qpi
