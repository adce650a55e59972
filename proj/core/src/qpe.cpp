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
#include <cmath>
#include <numbers>
#include <numeric>

#include "gpa/errors.hpp"
#include "gpa/qpe.hpp"

namespace gpa::qpe {

namespace {

constexpr int kMaxTargetQubits = 10;

int register_width(std::size_t count) {
    int w = 1;
    while ((std::size_t{1} << w) < count) {
        ++w;
    }
    return w;
}

double clamp_unit(double value) {
    if (value < 0.0 && value > -sim::kAlgebraicTol) {
        return 0.0;
    }
    if (value > 1.0 && value < 1.0 + sim::kAlgebraicTol) {
        return 1.0;
    }
    return value;
}

std::vector<int> iota_vector(int first, int count) {
    std::vector<int> out(static_cast<std::size_t>(count));
    std::iota(out.begin(), out.end(), first);
    return out;
}

void check_counting(int t) {
    if (t < 1 || t > kMaxCountingQubits) {
        throw CapacityError("counting register must have 1 to 6 qubits, got " +
                            std::to_string(t));
    }
}

} // namespace

void ReturnBounds::validate() const {
    if (!std::isfinite(g_lo) || !std::isfinite(g_hi)) {
        throw ArgumentError("return bounds must be finite");
    }
    if (!(g_hi > g_lo)) {
        throw ArgumentError("return bounds need g_hi > g_lo");
    }
}

double normalize_return(double x, const ReturnBounds &bounds) {
    bounds.validate();
    const double width = bounds.g_hi - bounds.g_lo;
    const double phi = clamp_unit((x - bounds.g_lo) / width);
    if (!std::isfinite(x) || phi < 0.0 || phi > 1.0) {
        throw ArgumentError("return " + std::to_string(x) + " lies outside [" +
                            std::to_string(bounds.g_lo) + ", " +
                            std::to_string(bounds.g_hi) + "]");
    }
    return phi;
}

double denormalize_return(double phi, const ReturnBounds &bounds) {
    bounds.validate();
    phi = clamp_unit(phi);
    if (!(phi >= 0.0 && phi <= 1.0)) {
        throw ArgumentError("normalized return must lie in [0, 1]");
    }
    return bounds.g_lo + phi * (bounds.g_hi - bounds.g_lo);
}

void PolicySpaceConfig::validate() const {
    if (alphabet.empty()) {
        throw ArgumentError("policy alphabet is empty");
    }
    if (horizon < 1 || horizon > 8) {
        throw ArgumentError("policy horizon must be in [1, 8]");
    }
    if (cap < 1 || cap > kMaxPolicies) {
        throw CapacityError("policy cap must be in [1, 64]");
    }
}

Policy make_policy(int id, std::vector<qfi::Action> actions,
                   const qfi::ActionAngles &angles, int horizon) {
    if (actions.empty()) {
        throw ArgumentError("a policy needs at least one action");
    }
    if (static_cast<int>(actions.size()) > horizon) {
        throw ArgumentError("policy is longer than its horizon");
    }
    Policy p;
    p.id = id;
    p.horizon = horizon;
    p.circuit = gates::Circuit(2);
    for (qfi::Action a : actions) {
        qfi::append_action(p.circuit, a, angles, 0, 1);
    }
    p.actions = std::move(actions);
    p.gate_count = p.circuit.gate_count();
    p.return_value =
        clamp_unit(qfi::qfi_analytic(gates::simulate(p.circuit)).normalized);
    p.label = qfi::join_actions(p.actions);
    return p;
}

Policy make_policy(int id, gates::Circuit circuit, double return_value,
                   std::string label) {
    Policy p;
    p.id = id;
    p.circuit = std::move(circuit);
    p.horizon = static_cast<int>(p.circuit.ops().size());
    p.gate_count = p.circuit.gate_count();
    p.return_value = return_value;
    p.label = std::move(label);
    return p;
}

std::vector<Policy> enumerate_policies(const PolicySpaceConfig &config) {
    config.validate();
    std::vector<Policy> out;
    const std::size_t k = config.alphabet.size();
    for (int length = 1; length <= config.horizon && out.size() < config.cap;
         ++length) {
        std::vector<std::size_t> digits(static_cast<std::size_t>(length), 0);
        while (out.size() < config.cap) {
            std::vector<qfi::Action> actions;
            actions.reserve(digits.size());
            for (std::size_t d : digits) {
                actions.push_back(config.alphabet[d]);
            }
            out.push_back(make_policy(static_cast<int>(out.size()),
                                      std::move(actions), config.angles,
                                      config.horizon));
            // Odometer increment, most significant digit first.
            int pos = length - 1;
            while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == k) {
                digits[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) {
                break;
            }
        }
    }
    return out;
}

gates::Circuit build_phi_oracle(std::span<const Policy> policies,
                                const ReturnBounds &bounds) {
    if (policies.empty()) {
        throw ArgumentError("no policies to encode");
    }
    if (policies.size() > kMaxPolicies) {
        throw CapacityError("at most 64 policies can be encoded");
    }
    const int w = register_width(policies.size());
    const std::size_t half = std::size_t{1} << w;
    const std::size_t dim = half * 2;
    std::vector<sim::Complex> m(dim * dim);
    for (std::size_t x = 0; x < half; ++x) {
        double c = 1.0;
        double s = 0.0;
        if (x < policies.size()) {
            const double phi = normalize_return(policies[x].return_value, bounds);
            c = std::sqrt(1.0 - phi);
            s = std::sqrt(phi);
        }
        m[x * dim + x] = c;
        m[x * dim + x + half] = -s;
        m[(x + half) * dim + x] = s;
        m[(x + half) * dim + x + half] = c;
    }
    gates::Circuit circuit(w + 1);
    circuit.add(gates::custom(sim::UnitaryMatrix(dim, std::move(m)),
                              iota_vector(0, w + 1), "phi"));
    return circuit;
}

gates::Circuit build_phi_oracle(double phi) {
    phi = clamp_unit(phi);
    if (!(phi >= 0.0 && phi <= 1.0)) {
        throw ArgumentError("normalized return must lie in [0, 1]");
    }
    gates::Circuit circuit(1);
    circuit.add(gates::ry(2.0 * std::asin(std::sqrt(phi)), 0));
    return circuit;
}

gates::Circuit return_preparation(const Policy &policy, double phi,
                                  int env_qubits) {
    if (env_qubits < policy.circuit.num_qubits()) {
        throw ArgumentError("environment register is narrower than the policy");
    }
    gates::Circuit a(env_qubits + 1);
    a.append(policy.circuit);
    const std::array<int, 1> anc{env_qubits};
    a.append(build_phi_oracle(phi), anc);
    return a;
}

gates::Circuit grover_operator(const Policy &policy, double phi, int env_qubits) {
    const gates::Circuit a = return_preparation(policy, phi, env_qubits);
    const int width = env_qubits + 1;
    std::vector<sim::Complex> s0(std::size_t{1} << width, sim::Complex{-1.0});
    s0[0] = 1.0;

    gates::Circuit q(width);
    q.add(gates::z(env_qubits));
    q.append(a.adjoint());
    q.add(gates::diagonal(std::move(s0), iota_vector(0, width), "S0"));
    q.append(a);
    return q;
}

gates::Circuit build_qpe_circuit(int t, const gates::Circuit &target,
                                 const gates::Circuit &eigen_prep) {
    check_counting(t);
    const int m = target.num_qubits();
    if (m > kMaxTargetQubits) {
        throw CapacityError("phase-estimation target is limited to 10 qubits");
    }
    if (eigen_prep.num_qubits() > m) {
        throw ArgumentError("eigenstate preparation is wider than the target");
    }
    const std::vector<int> env = iota_vector(t, m);
    gates::Circuit c(t + m);
    c.append(eigen_prep,
             std::span<const int>(env.data(),
                                  static_cast<std::size_t>(eigen_prep.num_qubits())));
    for (int j = 0; j < t; ++j) {
        c.add(gates::h(j));
    }
    sim::UnitaryMatrix power = gates::circuit_unitary(target);
    for (int j = 0; j < t; ++j) {
        gates::GateSpec cu = gates::custom(power, env, "U^" + std::to_string(1 << j));
        cu.controls = {j};
        c.add(std::move(cu));
        if (j + 1 < t) {
            power = power * power;
        }
    }
    gates::GateSpec iqft;
    iqft.kind = gates::GateKind::QFTinv;
    iqft.targets = iota_vector(0, t);
    c.add(std::move(iqft));
    for (int j = 0; j < t; ++j) {
        c.add(gates::measure(j));
    }
    return c;
}

gates::Circuit build_qpe_circuit(int t, double ctrl_angle) {
    gates::Circuit target(1);
    target.add(gates::phase(ctrl_angle, 0));
    gates::Circuit prep(1);
    prep.add(gates::x(0));
    return build_qpe_circuit(t, target, prep);
}

gates::Circuit policy_qpe_circuit(const Policy &policy, int t,
                                  const ReturnBounds &bounds, int env_qubits) {
    if (env_qubits < 0) {
        env_qubits = policy.circuit.num_qubits();
    }
    const double phi = normalize_return(policy.return_value, bounds);
    return build_qpe_circuit(t, grover_operator(policy, phi, env_qubits),
                             return_preparation(policy, phi, env_qubits));
}

double decode_readout(std::uint64_t x, int t) {
    check_counting(t);
    if (x >= (std::uint64_t{1} << t)) {
        throw ArgumentError("readout exceeds the counting register");
    }
    const double s = std::sin(std::numbers::pi * static_cast<double>(x) /
                              std::ldexp(1.0, t));
    return s * s;
}

std::vector<double> readout_distribution(const Policy &policy, int t,
                                         const ReturnBounds &bounds) {
    const sim::Statevector state =
        gates::simulate(policy_qpe_circuit(policy, t, bounds));
    const std::vector<int> counting = iota_vector(0, t);
    return sim::marginal_probabilities(state, counting);
}

std::uint64_t modal_readout(std::span<const double> weights, int t) {
    check_counting(t);
    const std::uint64_t n = std::uint64_t{1} << t;
    if (weights.size() != n) {
        throw ArgumentError("readout weights do not match the counting register");
    }
    std::uint64_t best = 0;
    double best_weight = -1.0;
    for (std::uint64_t x = 0; x <= n / 2; ++x) {
        double w = weights[x];
        if (x != 0 && x != n - x) {
            w += weights[n - x];
        }
        if (w > best_weight) {
            best_weight = w;
            best = x;
        }
    }
    return best;
}

ValueEstimate estimate_value(const Policy &policy, int t, std::uint64_t shots,
                             std::uint64_t seed, const ReturnBounds &bounds) {
    check_counting(t);
    if (shots == 0) {
        throw ArgumentError("shots must be at least 1");
    }
    const sim::Statevector state =
        gates::simulate(policy_qpe_circuit(policy, t, bounds));
    const std::vector<int> counting = iota_vector(0, t);

    ValueEstimate out;
    out.t = t;
    out.histogram = sim::sample_measure(state, counting, shots, seed);
    const std::vector<std::uint64_t> dense = out.histogram.dense();
    std::vector<double> weights(dense.begin(), dense.end());
    out.readout_x = modal_readout(weights, t);
    out.value = decode_readout(out.readout_x, t);
    double mean = 0.0;
    for (std::uint64_t x = 0; x < dense.size(); ++x) {
        mean += static_cast<double>(dense[x]) * decode_readout(x, t);
    }
    out.mean_value = mean / static_cast<double>(shots);
    out.return_estimate = denormalize_return(out.value, bounds);
    return out;
}

double exact_value(const Policy &policy, int t, const ReturnBounds &bounds) {
    const std::vector<double> p = readout_distribution(policy, t, bounds);
    return decode_readout(modal_readout(p, t), t);
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw ArgumentError("median of an empty list");
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<MaePoint> mae_curve(const Policy &policy, int t,
                                std::span<const std::uint64_t> shots_grid,
                                std::span<const std::uint64_t> seeds,
                                const ReturnBounds &bounds) {
    if (shots_grid.empty()) {
        throw ArgumentError("shots grid is empty");
    }
    if (seeds.empty()) {
        throw ArgumentError("seed list is empty");
    }
    for (std::size_t i = 0; i < shots_grid.size(); ++i) {
        if (shots_grid[i] == 0 || (i > 0 && shots_grid[i] <= shots_grid[i - 1])) {
            throw ArgumentError("shots grid must be positive and increasing");
        }
    }
    check_counting(t);
    const double exact = exact_value(policy, t, bounds);
    const sim::Statevector state =
        gates::simulate(policy_qpe_circuit(policy, t, bounds));
    const std::vector<int> counting = iota_vector(0, t);
    const std::vector<double> p = sim::marginal_probabilities(state, counting);

    std::vector<MaePoint> out;
    for (std::uint64_t shots : shots_grid) {
        MaePoint point;
        point.shots = shots;
        for (std::uint64_t seed : seeds) {
            const sim::ShotHistogram h = sim::sample_distribution(p, t, shots, seed);
            const std::vector<std::uint64_t> dense = h.dense();
            const std::vector<double> w(dense.begin(), dense.end());
            point.errors.push_back(
                std::abs(decode_readout(modal_readout(w, t), t) - exact));
        }
        point.mae = median(point.errors);
        out.push_back(std::move(point));
    }
    return out;
}

} // namespace gpa::qpe
