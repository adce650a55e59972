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
#include "gpa/qpi.hpp"

namespace gpa::qpi {

namespace {

int register_width(std::size_t count) {
    int w = 1;
    while ((std::size_t{1} << w) < count) {
        ++w;
    }
    return w;
}

std::vector<int> iota_vector(int first, int count) {
    std::vector<int> out(static_cast<std::size_t>(count));
    std::iota(out.begin(), out.end(), first);
    return out;
}

/// Real orthogonal reflection taking |0> to the uniform state over the first
/// `count` basis states of a `dim`-dimensional register.
sim::UnitaryMatrix householder_uniform(std::size_t count, std::size_t dim) {
    std::vector<double> u(dim, 0.0);
    const double amp = 1.0 / std::sqrt(static_cast<double>(count));
    for (std::size_t i = 0; i < count; ++i) {
        u[i] = -amp;
    }
    u[0] += 1.0;
    const double uu = std::inner_product(u.begin(), u.end(), u.begin(), 0.0);
    std::vector<sim::Complex> m(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            m[r * dim + c] = (r == c ? 1.0 : 0.0) - 2.0 * u[r] * u[c] / uu;
        }
    }
    return {dim, std::move(m)};
}

void reflect_about(const sim::Statevector &psi, std::span<sim::Complex> amplitudes) {
    sim::Complex overlap{};
    const auto ref = psi.amplitudes();
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        overlap += std::conj(ref[i]) * amplitudes[i];
    }
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        amplitudes[i] = 2.0 * overlap * ref[i] - amplitudes[i];
    }
}

void check_oracle(const SearchSpace &space, const ThresholdOracle &oracle) {
    if (oracle.t != space.t) {
        throw ArgumentError("oracle and search space disagree on t");
    }
}

} // namespace

SearchSpace prepare_search_space(std::vector<qpe::Policy> policies, int t,
                                 const qpe::ReturnBounds &bounds,
                                 std::vector<double> values) {
    if (policies.size() < 2) {
        throw ArgumentError("a search space needs at least two policies");
    }
    if (policies.size() > qpe::kMaxPolicies) {
        throw CapacityError("a search space holds at most 64 policies");
    }
    if (t < 1 || t > qpe::kMaxCountingQubits) {
        throw CapacityError("counting register must have 1 to 6 qubits");
    }
    bounds.validate();
    if (!values.empty() && values.size() != policies.size()) {
        throw ArgumentError("one value estimate per policy is required");
    }

    SearchSpace space;
    space.t = t;
    space.bounds = bounds;
    for (const qpe::Policy &p : policies) {
        space.env_qubits = std::max(space.env_qubits, p.circuit.num_qubits());
    }
    space.eval_qubits = t + space.env_qubits + 1;
    space.policy_qubits = register_width(policies.size());
    const int n = space.num_qubits();
    if (n > sim::kMaxQubits) {
        throw CapacityError("search register needs " + std::to_string(n) +
                            " qubits");
    }

    for (std::size_t i = 0; i < policies.size(); ++i) {
        policies[i].id = static_cast<int>(i);
        const gates::Circuit adj =
            qpe::policy_qpe_circuit(policies[i], t, bounds, space.env_qubits)
                .adjoint()
                .expanded();
        space.blocks.push_back(adj.adjoint());
        space.blocks_adjoint.push_back(adj);
        if (values.empty()) {
            space.values.push_back(qpe::denormalize_return(
                qpe::exact_value(policies[i], t, bounds), bounds));
        }
    }
    if (!values.empty()) {
        space.values = std::move(values);
    }

    const std::vector<int> reg = iota_vector(space.eval_qubits, space.policy_qubits);
    space.policy_prep = gates::Circuit(n);
    if (std::has_single_bit(policies.size())) {
        for (int q : reg) {
            space.policy_prep.add(gates::h(q));
        }
    } else {
        space.policy_prep.add(gates::custom(
            householder_uniform(policies.size(), std::size_t{1} << space.policy_qubits),
            reg, "uniform"));
    }
    space.policies = std::move(policies);

    sim::Statevector state(n);
    apply_preparation(space, state.mutable_amplitudes());
    space.prepared = std::move(state);
    return space;
}

void apply_preparation(const SearchSpace &space, std::span<sim::Complex> amplitudes,
                       bool adjoint) {
    if (amplitudes.size() != (std::size_t{1} << space.num_qubits())) {
        throw ArgumentError("buffer does not match the search register");
    }
    const std::size_t block = space.block_size();
    auto run_blocks = [&](const std::vector<gates::Circuit> &circuits) {
        for (std::size_t p = 0; p < circuits.size(); ++p) {
            gates::run(circuits[p], amplitudes.subspan(p * block, block));
        }
    };
    if (!adjoint) {
        gates::run(space.policy_prep, amplitudes);
        run_blocks(space.blocks);
    } else {
        run_blocks(space.blocks_adjoint);
        gates::run(space.policy_prep.adjoint(), amplitudes);
    }
}

std::vector<double> policy_marginals(const SearchSpace &space,
                                     const sim::Statevector &state) {
    if (state.num_qubits() != space.num_qubits()) {
        throw ArgumentError("state does not match the search register");
    }
    const std::size_t block = space.block_size();
    std::vector<double> out(space.policies.size(), 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t p = 0; p < out.size(); ++p) {
        for (std::size_t i = 0; i < block; ++i) {
            out[p] += std::norm(amps[p * block + i]);
        }
    }
    return out;
}

std::vector<sim::Complex> ThresholdOracle::phases() const {
    std::vector<sim::Complex> out(flips.size(), sim::Complex{1.0});
    for (std::size_t x = 0; x < flips.size(); ++x) {
        if (flips[x]) {
            out[x] = -1.0;
        }
    }
    return out;
}

std::size_t ThresholdOracle::marked_count() const {
    return static_cast<std::size_t>(std::count(flips.begin(), flips.end(), true));
}

ThresholdOracle build_threshold_oracle(double v_ref, int t,
                                       const qpe::ReturnBounds &bounds) {
    bounds.validate();
    if (!std::isfinite(v_ref) || v_ref < bounds.g_lo || v_ref > bounds.g_hi) {
        throw ArgumentError("reference value lies outside the return bounds");
    }
    ThresholdOracle oracle;
    oracle.v_ref = v_ref;
    oracle.t = t;
    const std::uint64_t n = std::uint64_t{1} << t;
    oracle.flips.resize(n);
    for (std::uint64_t x = 0; x < n; ++x) {
        const double value =
            qpe::denormalize_return(qpe::decode_readout(x, t), bounds);
        oracle.flips[x] = value - v_ref > kThresholdTol;
    }
    return oracle;
}

void apply_oracle(const ThresholdOracle &oracle, std::span<sim::Complex> amplitudes) {
    const std::size_t mask = oracle.flips.size() - 1;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        if (oracle.flips[i & mask]) {
            amplitudes[i] = -amplitudes[i];
        }
    }
}

double good_probability(const ThresholdOracle &oracle,
                        const sim::Statevector &state) {
    const std::size_t mask = oracle.flips.size() - 1;
    if (state.size() < oracle.flips.size()) {
        throw ArgumentError("state is narrower than the counting register");
    }
    double p = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (oracle.flips[i & mask]) {
            p += std::norm(amps[i]);
        }
    }
    return p;
}

sim::Statevector grover_iterate(const SearchSpace &space,
                                const ThresholdOracle &oracle, int L) {
    return grover_iterate(space, oracle, L, space.prepared);
}

sim::Statevector grover_iterate(const SearchSpace &space,
                                const ThresholdOracle &oracle, int L,
                                sim::Statevector state) {
    check_oracle(space, oracle);
    if (L < 0) {
        throw ArgumentError("rotation count must be non-negative");
    }
    if (state.num_qubits() != space.num_qubits()) {
        throw ArgumentError("state does not match the search register");
    }
    auto amps = state.mutable_amplitudes();
    for (int round = 0; round < L; ++round) {
        apply_oracle(oracle, amps);
        reflect_about(space.prepared, amps);
    }
    return state;
}

sim::Statevector grover_iterate_explicit(const SearchSpace &space,
                                         const ThresholdOracle &oracle, int L) {
    check_oracle(space, oracle);
    if (L < 0) {
        throw ArgumentError("rotation count must be non-negative");
    }
    sim::Statevector state = space.prepared;
    auto amps = state.mutable_amplitudes();
    for (int round = 0; round < L; ++round) {
        apply_oracle(oracle, amps);
        apply_preparation(space, amps, true);
        amps[0] = -amps[0];
        apply_preparation(space, amps, false);
        for (sim::Complex &a : amps) {
            a = -a;
        }
    }
    return state;
}

int rotation_count(double k, double r, double v_next, double theta) {
    if (!std::isfinite(theta) || theta <= 0.0 ||
        theta > std::numbers::pi / 2.0 + sim::kAlgebraicTol) {
        throw ArgumentError("Grover angle must lie in (0, pi/2]");
    }
    if (!std::isfinite(k) || !std::isfinite(r) || !std::isfinite(v_next) ||
        k < 0.0 || r < 0.0 || v_next < 0.0) {
        throw ArgumentError("k, r and v_next must be finite and non-negative");
    }
    const double drive = k * (r + v_next);
    const double cap = std::numbers::pi / (4.0 * theta) - 0.5;
    const auto L_drive = static_cast<long long>(std::min(drive, 1e9));
    const auto L_cap = static_cast<long long>(std::min(cap, 1e9));
    return static_cast<int>(std::max(0LL, std::min(L_drive, L_cap)));
}

RotationPlan make_plan(double k, double r, double v_next, double theta) {
    return RotationPlan{k, r, v_next, theta, rotation_count(k, r, v_next, theta)};
}

RotationPlan fixed_plan(int L) {
    if (L < 0) {
        throw ArgumentError("rotation count must be non-negative");
    }
    RotationPlan plan;
    plan.L = L;
    return plan;
}

Improvement improve_policy(const SearchSpace &space, double v_current,
                           const RotationPlan &plan, std::uint64_t seed) {
    if (plan.L < 0) {
        throw ArgumentError("rotation count must be non-negative");
    }
    const ThresholdOracle oracle = build_threshold_oracle(v_current, space.t,
                                                          space.bounds);
    Improvement out;
    sim::Statevector state = space.prepared;
    for (int round = 0; round < plan.L; ++round) {
        state = grover_iterate(space, oracle, 1, std::move(state));
        out.good_trace.push_back(good_probability(oracle, state));
        out.policy_trace.push_back(policy_marginals(space, state));
    }
    out.final_marginals = policy_marginals(space, state);
    const std::vector<int> reg = iota_vector(space.eval_qubits, space.policy_qubits);
    const sim::CollapseResult measured = sim::collapse_measure(state, reg, seed);
    out.policy_id = static_cast<int>(sim::from_bitstring(measured.outcome));
    if (out.policy_id >= static_cast<int>(space.policies.size())) {
        throw InvariantError("measured an unused policy index");
    }
    return out;
}

} // namespace gpa::qpi
