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
 * Quantum Fisher information of sensor states with respect to the collective
 * Z generator, computed two ways: analytically from the amplitudes, and from
 * the shot counts of the subtraction read-out circuits.
 *
 * Normalization: normalized = raw / (4 n) = Var(Z_c) / n^2, which maps the
 * two-qubit NOON state to 1 and any product state to at most 1/2.
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gpa/gates.hpp"
#include "gpa/statevector.hpp"

namespace gpa::qfi {

enum class Method { analytic, counts };

struct QfiValue {
    double raw = 0.0;
    double normalized = 0.0;
    int n_qubits = 0;
    Method method = Method::analytic;
};

[[nodiscard]] std::string_view method_name(Method method);

/// Eigenvalues of Z_0 + ... + Z_{n-1} indexed by basis state.
[[nodiscard]] std::vector<double> collective_z(int n_qubits);

/// Analytic QFI over every qubit of `state`.
[[nodiscard]] QfiValue qfi_analytic(const sim::Statevector &state);
/// Analytic QFI of the reduced populations on `sensing` (the generator only
/// touches those qubits, so only their marginal matters).
[[nodiscard]] QfiValue qfi_analytic(const sim::Statevector &state,
                                    std::span<const int> sensing);
/// Raw-amplitude overload; throws ArgumentError unless the norm is 1 within
/// kCircuitTol.
[[nodiscard]] QfiValue qfi_analytic(std::span<const sim::Complex> amplitudes);

// --- collective actions ----------------------------------------------------

enum class Action { rx, ry, rz, squeeze, cnot };

[[nodiscard]] std::string_view action_token(Action action);
/// Accepts "rx", "ry", "rz", "s" and "cnot".
[[nodiscard]] std::optional<Action> parse_action(std::string_view token);
[[nodiscard]] std::vector<Action> parse_actions(std::string_view csv);
[[nodiscard]] std::string join_actions(std::span<const Action> actions);

struct ActionAngles {
    double rx = 1.5707963267948966;
    double ry = 1.5707963267948966;
    double rz = 0.05;
    double squeeze = 0.39269908169872414;
};

/// Appends one action on the sensing pair: rotations hit both qubits, S acts
/// on the pair and CNOT uses q0 as control.
void append_action(gates::Circuit &circuit, Action action,
                   const ActionAngles &angles, int q0, int q1);

/// Number of primitive gates one action contributes.
[[nodiscard]] int action_gate_count(Action action);

// --- sensor circuits -------------------------------------------------------

enum class Variant { full, simplified };

[[nodiscard]] std::string_view variant_name(Variant variant);
[[nodiscard]] std::optional<Variant> parse_variant(std::string_view text);

struct EpisodeLayout {
    int minuend = 0;
    int subtrahend = 1;
    int borrow = 2;
    double angle = 1.5707963267948966;
};

inline constexpr double kSimplifiedRzMax = 0.1;

struct QscConfig {
    Variant variant = Variant::simplified;
    double rx_angle = 1.5707963267948966;
    double ry_angle = 1.5707963267948966;
    double rz_angle = 0.05;
    std::optional<double> squeeze_angle;
    /// Full variant: collective actions applied to each copy of the pair.
    std::vector<Action> preparation{Action::rx, Action::ry, Action::squeeze,
                                    Action::rx};
    /// Full variant: append Rz(rz_angle) on every sensing qubit after the
    /// preparation.
    bool rz_in_preparation = true;
    /// Simplified variant: Rz(rz_angle) is accumulated this many times between
    /// the preparation and its inverse.
    int interrogations = 16;
    std::array<EpisodeLayout, 2> episodes{
        EpisodeLayout{0, 1, 2, 1.5707963267948966},
        EpisodeLayout{3, 4, 5, 0.7853981633974483}};

    [[nodiscard]] static QscConfig simplified_default();
    [[nodiscard]] static QscConfig full_default();

    /// Throws ArgumentError on invalid angles, layouts or variant mismatch.
    void validate() const;

    [[nodiscard]] ActionAngles action_angles() const;
};

/// How to decode a histogram into signed differences d = diff - 2^w sign.
struct MeasurementLayout {
    enum class Mode {
        /// One read-out of two single-qubit sensors (w = 1): QFI = Var(d).
        pair,
        /// Two copies of a two-qubit probe subtracted as integers (w = 2):
        /// QFI = 2 Var(d) / (2^w - 1)^2.
        copy,
    };
    std::vector<int> diff_qubits;
    int sign_qubit = 0;
    Mode mode = Mode::pair;

    /// diff qubits (least significant first), then the sign qubit.
    [[nodiscard]] std::vector<int> measured() const;
    [[nodiscard]] int width() const {
        return static_cast<int>(diff_qubits.size()) + 1;
    }
};

/// Six-qubit sensor circuit with Measure ops on every read-out qubit.
[[nodiscard]] gates::Circuit build_qsc(const QscConfig &config);
/// Same circuit at an explicit Rz angle.
[[nodiscard]] gates::Circuit build_qsc(const QscConfig &config, double rz_angle);

/// Preparation of one probe pair (full variant) on qubits {0, 1}.
[[nodiscard]] gates::Circuit probe_preparation(const QscConfig &config);

/// One simplified episode on its own three qubits (m = 0, s = 1, b = 2),
/// without measurements.
[[nodiscard]] gates::Circuit simplified_episode(double angle, double rz_angle,
                                                int interrogations);

/// One layout per episode (simplified) or a single layout (full).
[[nodiscard]] std::vector<MeasurementLayout> measurement_layouts(
    const QscConfig &config);

[[nodiscard]] QfiValue qfi_from_counts(const sim::ShotHistogram &histogram,
                                       const MeasurementLayout &layout);
/// Infinite-shot limit of qfi_from_counts.
[[nodiscard]] QfiValue qfi_from_distribution(std::span<const double> probabilities,
                                             const MeasurementLayout &layout);

/// Counts-method QFI of every episode at one Rz angle. All read-out qubits
/// are sampled jointly; shots = 0 uses the exact distribution.
[[nodiscard]] std::vector<QfiValue> episode_qfi(const QscConfig &config,
                                                double rz_angle,
                                                std::uint64_t shots,
                                                std::uint64_t seed);

struct SweepPoint {
    double rz_angle = 0.0;
    std::vector<QfiValue> values;
};

/// Grid must be non-decreasing and, for the simplified variant, inside
/// [0, 0.1]. Point i is sampled with derive_seed(seed, i).
[[nodiscard]] std::vector<SweepPoint> qfi_sweep(const QscConfig &config,
                                                std::span<const double> rz_grid,
                                                std::uint64_t shots,
                                                std::uint64_t seed);

/// Linear schedule over a rotation budget: rotation 1 at 0, the last at
/// `rz_max`.
[[nodiscard]] std::vector<double> rz_schedule(int rotations,
                                              double rz_max = kSimplifiedRzMax);

} // namespace gpa::qfi
