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
 * Agents: the Grover policy agent (evaluate every policy by phase estimation,
 * then improve by threshold-oracle Grover search) and the gate-by-gate
 * amplitude-amplification baseline it is compared against.
 */
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gpa/gates.hpp"
#include "gpa/qfi.hpp"
#include "gpa/qpe.hpp"
#include "gpa/qpi.hpp"

namespace gpa::agents {

struct EpisodeResult {
    int policy_id = 0;
    std::string label;
    qfi::QfiValue final_qfi;
    std::size_t gate_count = 0;
    /// QFI after each Grover rotation.
    std::vector<double> trace;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
};

enum class RotationMode {
    /// L from qpi::rotation_count with the current Grover angle.
    formula,
    /// Every round runs exactly `rotations` Grover iterations.
    fixed,
};

struct GpaOptions {
    int t = 4;
    /// Shots per policy evaluation.
    std::uint64_t shots = 4096;
    double k = 25.0;
    RotationMode mode = RotationMode::formula;
    int rotations = 50;
    int max_rounds = 16;
    int max_failures = 3;
    qpe::ReturnBounds bounds;
    std::uint64_t seed = 0;
};

struct RoundLog {
    double v_ref = 0.0;
    double good_probability = 0.0;
    int rotations = 0;
    int measured = 0;
    bool adopted = false;
};

struct GpaRun {
    EpisodeResult result;
    /// Value estimate per policy, in return units.
    std::vector<double> values;
    std::vector<RoundLog> rounds;
};

/// Evaluates every policy, then climbs with Grover rounds: each round marks
/// readouts above the current value, amplifies, measures a policy and adopts
/// it when its estimate is strictly higher. Stops when nothing is marked,
/// after `max_failures` consecutive non-improving rounds, or after
/// `max_rounds`. Among policies whose estimate equals the final one the
/// fewest gates wins, then the lowest id. Deterministic given the seed.
[[nodiscard]] GpaRun gpa_run(const std::vector<qpe::Policy> &policies,
                             const GpaOptions &options);

struct ParallelResult {
    std::array<EpisodeResult, 2> episodes;
    /// Index of the selected episode.
    int winner = 0;
    /// Per-rotation Rz angle and counts-method QFI of both episodes.
    std::vector<qfi::SweepPoint> sweep;
    GpaRun selection;
};

/// Both simplified episodes share one six-qubit register. Rotation r runs the
/// circuit at the r-th angle of qfi::rz_schedule and samples every read-out
/// qubit jointly (`sweep_shots` = 0 uses the exact distribution). The winner
/// is chosen by gpa_run over the two episodes scored by their final QFI;
/// equal estimates go to the lower index.
[[nodiscard]] ParallelResult gpa_run_parallel_episodes(const qfi::QscConfig &config,
                                                       int rotations,
                                                       std::uint64_t sweep_shots,
                                                       const GpaOptions &options);

struct GaqaAction {
    std::string name;
    /// Acts on the three-qubit block (sensing qubits 0 and 1, spare qubit 2).
    gates::Circuit circuit{3};
};

/// Rx(pi/2) on qubit 0, Ry(pi/2) on qubit 1, Rz(0.05) on both, CNOT 0 -> 2.
[[nodiscard]] std::vector<GaqaAction> default_gaqa_actions(
    double rx_angle = 1.5707963267948966, double ry_angle = 1.5707963267948966,
    double rz_angle = 0.05);

struct GaqaOptions {
    std::vector<GaqaAction> actions = default_gaqa_actions();
    int max_actions = 10;
    int episodes = 2;
    double k = 25.0;
    /// Weight of the QFI reward inside the rotation-count drive.
    double reward_weight = 1.0;
    /// Step size of the value update V_j += a (r + V_{j+1} - V_j).
    double td_rate = 0.5;
    int rotations = 40;
    int interrogations = 16;
    double rz_max = qfi::kSimplifiedRzMax;
    std::uint64_t seed = 0;
};

inline constexpr int kMaxGaqaActions = 10;
inline constexpr double kQfiTarget = 1.0 - 1e-6;

struct GaqaRun {
    std::vector<EpisodeResult> episodes;
    /// QFI after each rotation across all episodes (length = rotations).
    std::vector<double> trace;
    std::vector<std::vector<std::string>> histories;
};

/// Normalized QFI of the sensing pair after U^dagger Rz(phase)^(x)2 U |000>.
[[nodiscard]] double readout_qfi(const gates::Circuit &preparation, double phase);

/// Episodes run one after another. Each step collapses that step's action
/// preference register to pick a gate, scores the read-out QFI, updates the
/// step values, and amplifies the chosen action when the reward improved.
[[nodiscard]] GaqaRun gaqa_run(const GaqaOptions &options);

struct CompareResult {
    /// Median over seeds at each rotation.
    std::vector<double> gpa;
    std::vector<double> gaqa;
    std::vector<std::vector<double>> gpa_runs;
    std::vector<std::vector<double>> gaqa_runs;
};

[[nodiscard]] CompareResult compare_agents(const qfi::QscConfig &config,
                                           int rotations,
                                           std::span<const std::uint64_t> seeds,
                                           std::uint64_t sweep_shots,
                                           const GpaOptions &gpa_options,
                                           GaqaOptions gaqa_options);

} // namespace gpa::agents
