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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gpa/errors.hpp"
#include "gpa/qfi.hpp"
#include "gpa/rng.hpp"

namespace gpa::qfi {

namespace {

QfiValue from_variance(double variance, int n, Method method) {
    QfiValue out;
    out.n_qubits = n;
    out.method = method;
    out.normalized = variance / (static_cast<double>(n) * n);
    out.raw = 4.0 * variance / n;
    return out;
}

QfiValue analytic_from_probabilities(std::span<const double> probabilities,
                                     int n) {
    const std::vector<double> z = collective_z(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        mean += probabilities[i] * z[i];
    }
    double variance = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        const double dz = z[i] - mean;
        variance += probabilities[i] * dz * dz;
    }
    return from_variance(variance, n, Method::analytic);
}

void check_finite(double value, const char *what) {
    if (!std::isfinite(value)) {
        throw ArgumentError(std::string(what) + " must be finite");
    }
}

} // namespace

std::string_view method_name(Method method) {
    return method == Method::analytic ? "analytic" : "counts";
}

std::vector<double> collective_z(int n_qubits) {
    if (n_qubits < 1 || n_qubits > sim::kMaxQubits) {
        throw CapacityError("collective Z needs 1 to 24 qubits");
    }
    std::vector<double> z(std::size_t{1} << n_qubits);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const int ones = std::popcount(i);
        z[i] = static_cast<double>(n_qubits - 2 * ones);
    }
    return z;
}

QfiValue qfi_analytic(const sim::Statevector &state) {
    std::vector<double> probabilities(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        probabilities[i] = std::norm(state[i]);
    }
    return analytic_from_probabilities(probabilities, state.num_qubits());
}

QfiValue qfi_analytic(const sim::Statevector &state,
                      std::span<const int> sensing) {
    if (sensing.empty()) {
        throw ArgumentError("sensing qubit list is empty");
    }
    const std::vector<double> marginal =
        sim::marginal_probabilities(state, sensing);
    return analytic_from_probabilities(marginal,
                                       static_cast<int>(sensing.size()));
}

QfiValue qfi_analytic(std::span<const sim::Complex> amplitudes) {
    std::vector<sim::Complex> copy(amplitudes.begin(), amplitudes.end());
    return qfi_analytic(sim::Statevector::from_amplitudes(std::move(copy)));
}

// --- actions ---------------------------------------------------------------

std::string_view action_token(Action action) {
    switch (action) {
    case Action::rx:
        return "rx";
    case Action::ry:
        return "ry";
    case Action::rz:
        return "rz";
    case Action::squeeze:
        return "s";
    case Action::cnot:
        return "cnot";
    }
    return "?";
}

std::optional<Action> parse_action(std::string_view token) {
    for (Action a : {Action::rx, Action::ry, Action::rz, Action::squeeze,
                     Action::cnot}) {
        if (action_token(a) == token) {
            return a;
        }
    }
    return std::nullopt;
}

std::vector<Action> parse_actions(std::string_view csv) {
    std::vector<Action> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t end = csv.find(',', start);
        if (end == std::string_view::npos) {
            end = csv.size();
        }
        std::string_view token = csv.substr(start, end - start);
        while (!token.empty() && token.front() == ' ') {
            token.remove_prefix(1);
        }
        while (!token.empty() && token.back() == ' ') {
            token.remove_suffix(1);
        }
        if (token.empty() && csv.empty()) {
            break;
        }
        const auto action = parse_action(token);
        if (!action) {
            throw ArgumentError("unknown action '" + std::string(token) +
                                "' (expected rx, ry, rz, s or cnot)");
        }
        out.push_back(*action);
        start = end + 1;
    }
    return out;
}

std::string join_actions(std::span<const Action> actions) {
    std::string out;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += action_token(actions[i]);
    }
    return out;
}

void append_action(gates::Circuit &circuit, Action action,
                   const ActionAngles &angles, int q0, int q1) {
    switch (action) {
    case Action::rx:
        circuit.add(gates::rx(angles.rx, q0));
        circuit.add(gates::rx(angles.rx, q1));
        break;
    case Action::ry:
        circuit.add(gates::ry(angles.ry, q0));
        circuit.add(gates::ry(angles.ry, q1));
        break;
    case Action::rz:
        circuit.add(gates::rz(angles.rz, q0));
        circuit.add(gates::rz(angles.rz, q1));
        break;
    case Action::squeeze:
        circuit.add(gates::squeeze(angles.squeeze, q0, q1));
        break;
    case Action::cnot:
        circuit.add(gates::cnot(q0, q1));
        break;
    }
}

int action_gate_count(Action action) {
    return (action == Action::squeeze || action == Action::cnot) ? 1 : 2;
}

// --- configuration ---------------------------------------------------------

std::string_view variant_name(Variant variant) {
    return variant == Variant::full ? "full" : "simplified";
}

std::optional<Variant> parse_variant(std::string_view text) {
    if (text == "full") {
        return Variant::full;
    }
    if (text == "simplified") {
        return Variant::simplified;
    }
    return std::nullopt;
}

QscConfig QscConfig::simplified_default() { return QscConfig{}; }

QscConfig QscConfig::full_default() {
    QscConfig config;
    config.variant = Variant::full;
    config.squeeze_angle = std::numbers::pi / 8.0;
    return config;
}

ActionAngles QscConfig::action_angles() const {
    ActionAngles angles;
    angles.rx = rx_angle;
    angles.ry = ry_angle;
    angles.rz = rz_angle;
    angles.squeeze = squeeze_angle.value_or(0.0);
    return angles;
}

void QscConfig::validate() const {
    check_finite(rx_angle, "rx_angle");
    check_finite(ry_angle, "ry_angle");
    check_finite(rz_angle, "rz_angle");
    if (squeeze_angle) {
        check_finite(*squeeze_angle, "squeeze_angle");
    }
    if (variant == Variant::simplified) {
        if (squeeze_angle) {
            throw ArgumentError("the simplified variant has no squeezing gate");
        }
        if (rz_angle < 0.0 || rz_angle > kSimplifiedRzMax) {
            throw ArgumentError("rz_angle must be in the range 0 to 0.1");
        }
        if (interrogations < 1 || interrogations > 1024) {
            throw ArgumentError("interrogations must be in [1, 1024]");
        }
        std::vector<int> used;
        for (const EpisodeLayout &e : episodes) {
            check_finite(e.angle, "episode angle");
            used.insert(used.end(), {e.minuend, e.subtrahend, e.borrow});
        }
        std::sort(used.begin(), used.end());
        if (used.front() < 0 || used.back() > 5 ||
            std::adjacent_find(used.begin(), used.end()) != used.end()) {
            throw ArgumentError(
                "episode layouts must use six distinct qubits in [0, 6)");
        }
    } else if (preparation.empty()) {
        throw ArgumentError("the full variant needs a preparation sequence");
    }
}

// --- circuits --------------------------------------------------------------

gates::Circuit probe_preparation(const QscConfig &config) {
    gates::Circuit c(2);
    const ActionAngles angles = config.action_angles();
    for (Action a : config.preparation) {
        if (a == Action::squeeze && !config.squeeze_angle) {
            continue;
        }
        append_action(c, a, angles, 0, 1);
    }
    if (config.rz_in_preparation) {
        append_action(c, Action::rz, angles, 0, 1);
    }
    return c;
}

gates::Circuit simplified_episode(double angle, double rz_angle,
                                  int interrogations) {
    check_finite(angle, "episode angle");
    check_finite(rz_angle, "rz_angle");
    const int m = 0;
    const int s = 1;
    const int b = 2;
    const double accumulated = rz_angle * interrogations;
    gates::Circuit c(3);
    c.add(gates::rx(angle, m));
    c.add(gates::ry(angle, s));
    c.add(gates::rz(accumulated, m));
    c.add(gates::rz(accumulated, s));
    c.add(gates::ry(-angle, s));
    c.add(gates::rx(-angle, m));
    c.append(gates::half_subtractor(m, s, b));
    return c;
}

gates::Circuit build_qsc(const QscConfig &config) {
    return build_qsc(config, config.rz_angle);
}

gates::Circuit build_qsc(const QscConfig &config, double rz_angle) {
    QscConfig at = config;
    at.rz_angle = rz_angle;
    at.validate();
    gates::Circuit c(6);
    if (config.variant == Variant::full) {
        const gates::Circuit probe = probe_preparation(at);
        const std::array<int, 2> copy_a{0, 1};
        const std::array<int, 2> copy_b{2, 3};
        c.append(probe, copy_a);
        c.append(probe, copy_b);
        gates::GateSpec sub;
        sub.kind = gates::GateKind::AdderInv;
        sub.targets = {0, 1, 2, 3, 4, 5};
        c.add(std::move(sub));
    } else {
        for (const EpisodeLayout &e : config.episodes) {
            const std::array<int, 3> map{e.minuend, e.subtrahend, e.borrow};
            c.append(simplified_episode(e.angle, rz_angle, config.interrogations),
                     map);
        }
    }
    for (const MeasurementLayout &layout : measurement_layouts(config)) {
        for (int q : layout.measured()) {
            c.add(gates::measure(q));
        }
    }
    return c;
}

std::vector<int> MeasurementLayout::measured() const {
    std::vector<int> out = diff_qubits;
    out.push_back(sign_qubit);
    return out;
}

std::vector<MeasurementLayout> measurement_layouts(const QscConfig &config) {
    if (config.variant == Variant::full) {
        return {MeasurementLayout{{2, 3}, 4, MeasurementLayout::Mode::copy}};
    }
    std::vector<MeasurementLayout> out;
    for (const EpisodeLayout &e : config.episodes) {
        out.push_back(
            MeasurementLayout{{e.subtrahend}, e.borrow, MeasurementLayout::Mode::pair});
    }
    return out;
}

QfiValue qfi_from_distribution(std::span<const double> probabilities,
                               const MeasurementLayout &layout) {
    const int w = static_cast<int>(layout.diff_qubits.size());
    if (w < 1 || probabilities.size() != (std::size_t{1} << (w + 1))) {
        throw ArgumentError("distribution width does not match the layout");
    }
    const std::uint64_t diff_mask = (std::uint64_t{1} << w) - 1;
    auto decode = [&](std::uint64_t outcome) {
        const auto diff = static_cast<double>(outcome & diff_mask);
        const auto sign = static_cast<double>(outcome >> w);
        return diff - std::ldexp(sign, w);
    };
    double total = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        total += probabilities[i];
        mean += probabilities[i] * decode(i);
    }
    if (!(total > 0.0)) {
        throw ArgumentError("distribution has no mass");
    }
    mean /= total;
    double variance = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        const double dd = decode(i) - mean;
        variance += probabilities[i] * dd * dd;
    }
    variance /= total;
    const double span = std::ldexp(1.0, w) - 1.0;
    const double scale =
        (layout.mode == MeasurementLayout::Mode::copy ? 2.0 : 1.0) /
        (span * span);
    // Rescale so the result reads as Var(Z_c) / n^2 with n = 2 sensing qubits.
    QfiValue out = from_variance(4.0 * scale * variance, 2, Method::counts);
    return out;
}

QfiValue qfi_from_counts(const sim::ShotHistogram &histogram,
                         const MeasurementLayout &layout) {
    if (histogram.width != layout.width()) {
        throw ArgumentError("histogram width " + std::to_string(histogram.width) +
                            " does not match layout width " +
                            std::to_string(layout.width()));
    }
    if (histogram.total_shots == 0) {
        throw ArgumentError("histogram is empty");
    }
    const std::vector<std::uint64_t> dense = histogram.dense();
    std::vector<double> frequencies(dense.size());
    for (std::size_t i = 0; i < dense.size(); ++i) {
        frequencies[i] = static_cast<double>(dense[i]) /
                         static_cast<double>(histogram.total_shots);
    }
    return qfi_from_distribution(frequencies, layout);
}

std::vector<QfiValue> episode_qfi(const QscConfig &config, double rz_angle,
                                  std::uint64_t shots, std::uint64_t seed) {
    const gates::Circuit circuit = build_qsc(config, rz_angle);
    const sim::Statevector state = gates::simulate(circuit);
    const std::vector<MeasurementLayout> layouts = measurement_layouts(config);

    std::vector<QfiValue> out;
    if (shots == 0) {
        for (const MeasurementLayout &layout : layouts) {
            const std::vector<int> qubits = layout.measured();
            out.push_back(qfi_from_distribution(
                sim::marginal_probabilities(state, qubits), layout));
        }
        return out;
    }
    std::vector<int> joint;
    for (const MeasurementLayout &layout : layouts) {
        const std::vector<int> q = layout.measured();
        joint.insert(joint.end(), q.begin(), q.end());
    }
    const sim::ShotHistogram hist = sim::sample_measure(state, joint, shots, seed);
    int offset = 0;
    for (const MeasurementLayout &layout : layouts) {
        std::vector<int> positions(static_cast<std::size_t>(layout.width()));
        std::iota(positions.begin(), positions.end(), offset);
        offset += layout.width();
        out.push_back(qfi_from_counts(sim::marginalize(hist, positions), layout));
    }
    return out;
}

std::vector<SweepPoint> qfi_sweep(const QscConfig &config,
                                  std::span<const double> rz_grid,
                                  std::uint64_t shots, std::uint64_t seed) {
    if (rz_grid.empty()) {
        throw ArgumentError("rz grid is empty");
    }
    if (!std::is_sorted(rz_grid.begin(), rz_grid.end())) {
        throw ArgumentError("rz grid must be non-decreasing");
    }
    std::vector<SweepPoint> out;
    out.reserve(rz_grid.size());
    for (std::size_t i = 0; i < rz_grid.size(); ++i) {
        out.push_back(SweepPoint{
            rz_grid[i], episode_qfi(config, rz_grid[i], shots, derive_seed(seed, i))});
    }
    return out;
}

std::vector<double> rz_schedule(int rotations, double rz_max) {
    if (rotations < 1) {
        throw ArgumentError("rotation budget must be at least 1");
    }
    check_finite(rz_max, "rz_max");
    std::vector<double> out(static_cast<std::size_t>(rotations), 0.0);
    for (int r = 1; r < rotations; ++r) {
        out[static_cast<std::size_t>(r)] =
            rz_max * static_cast<double>(r) / static_cast<double>(rotations - 1);
    }
    return out;
}

} // namespace gpa::qfi
