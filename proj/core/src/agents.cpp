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
#include <chrono>
#include <cmath>
#include <numeric>

#include "gpa/agents.hpp"
#include "gpa/errors.hpp"
#include "gpa/rng.hpp"

namespace gpa::agents {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double expected_return(const std::vector<qpe::Policy> &policies,
                       std::span<const double> marginals) {
    double out = 0.0;
    for (std::size_t i = 0; i < policies.size(); ++i) {
        out += marginals[i] * policies[i].return_value;
    }
    return out;
}

qfi::QfiValue policy_qfi(const qpe::Policy &policy) {
    if (!policy.actions.empty()) {
        return qfi::qfi_analytic(gates::simulate(policy.circuit));
    }
    qfi::QfiValue v;
    v.n_qubits = 2;
    v.method = qfi::Method::counts;
    v.normalized = policy.return_value;
    v.raw = 8.0 * policy.return_value;
    return v;
}

int register_width(std::size_t count) {
    int w = 1;
    while ((std::size_t{1} << w) < count) {
        ++w;
    }
    return w;
}

} // namespace

GpaRun gpa_run(const std::vector<qpe::Policy> &policies, const GpaOptions &options) {
    const auto start = Clock::now();
    if (policies.empty()) {
        throw ArgumentError("policy space is empty");
    }
    if (options.max_rounds < 1 || options.max_failures < 1) {
        throw ArgumentError("max_rounds and max_failures must be positive");
    }
    if (options.mode == RotationMode::fixed && options.rotations < 0) {
        throw ArgumentError("fixed rotation count must be non-negative");
    }
    options.bounds.validate();

    GpaRun run;
    for (std::size_t i = 0; i < policies.size(); ++i) {
        const qpe::ValueEstimate e =
            qpe::estimate_value(policies[i], options.t, options.shots,
                                derive_seed(options.seed, i), options.bounds);
        run.values.push_back(e.return_estimate);
    }

    std::size_t current = 0;
    if (policies.size() > 1) {
        const qpi::SearchSpace space =
            qpi::prepare_search_space(policies, options.t, options.bounds, run.values);
        int failures = 0;
        for (int round = 0; round < options.max_rounds; ++round) {
            const double v_cur = run.values[current];
            const qpi::ThresholdOracle oracle =
                qpi::build_threshold_oracle(v_cur, options.t, options.bounds);
            RoundLog log;
            log.v_ref = v_cur;
            log.good_probability = qpi::good_probability(oracle, space.prepared);
            if (log.good_probability < qpi::kThresholdTol) {
                break;
            }
            qpi::RotationPlan plan;
            if (options.mode == RotationMode::fixed) {
                plan = qpi::fixed_plan(options.rotations);
            } else {
                const double theta =
                    std::asin(std::sqrt(std::min(1.0, log.good_probability)));
                const double r =
                    qpe::normalize_return(policies[current].return_value, options.bounds);
                const double v = qpe::normalize_return(v_cur, options.bounds);
                plan = qpi::make_plan(options.k, r, v, theta);
            }
            const qpi::Improvement imp = qpi::improve_policy(
                space, v_cur, plan,
                derive_seed(options.seed, 0x10000U + static_cast<std::uint64_t>(round)));
            for (const std::vector<double> &m : imp.policy_trace) {
                run.result.trace.push_back(expected_return(policies, m));
            }
            log.rotations = plan.L;
            log.measured = imp.policy_id;
            const auto measured = static_cast<std::size_t>(imp.policy_id);
            if (run.values[measured] - v_cur > qpi::kThresholdTol) {
                current = measured;
                log.adopted = true;
                failures = 0;
            } else {
                ++failures;
            }
            run.rounds.push_back(log);
            if (failures >= options.max_failures) {
                break;
            }
        }
    }

    // Tie-break among equal estimates: fewest gates, then lowest id.
    std::size_t chosen = current;
    for (std::size_t i = 0; i < policies.size(); ++i) {
        if (std::abs(run.values[i] - run.values[current]) > qpi::kThresholdTol) {
            continue;
        }
        if (policies[i].gate_count < policies[chosen].gate_count ||
            (policies[i].gate_count == policies[chosen].gate_count && i < chosen)) {
            chosen = i;
        }
    }

    const qpe::Policy &p = policies[chosen];
    run.result.policy_id = static_cast<int>(chosen);
    run.result.label = p.label;
    run.result.final_qfi = policy_qfi(p);
    run.result.gate_count = p.gate_count;
    run.result.seed = options.seed;
    run.result.wall_seconds = seconds_since(start);
    return run;
}

ParallelResult gpa_run_parallel_episodes(const qfi::QscConfig &config,
                                         int rotations, std::uint64_t sweep_shots,
                                         const GpaOptions &options) {
    const auto start = Clock::now();
    if (config.variant != qfi::Variant::simplified) {
        throw ArgumentError("parallel episodes need the simplified variant");
    }
    config.validate();
    const std::vector<double> grid = qfi::rz_schedule(rotations);

    ParallelResult out;
    out.sweep = qfi::qfi_sweep(config, grid, sweep_shots, options.seed);

    std::vector<qpe::Policy> candidates;
    for (std::size_t e = 0; e < 2; ++e) {
        const qfi::EpisodeLayout &layout = config.episodes[e];
        EpisodeResult &ep = out.episodes[e];
        ep.policy_id = static_cast<int>(e);
        ep.label = "qsc" + std::to_string(e + 1);
        ep.seed = options.seed;
        for (const qfi::SweepPoint &point : out.sweep) {
            ep.trace.push_back(point.values[e].normalized);
        }
        ep.final_qfi = out.sweep.back().values[e];
        gates::Circuit circuit =
            qfi::simplified_episode(layout.angle, grid.back(), config.interrogations);
        ep.gate_count = circuit.gate_count();
        const double score = std::clamp(ep.final_qfi.normalized, 0.0, 1.0);
        candidates.push_back(qpe::make_policy(static_cast<int>(e), std::move(circuit),
                                              score, ep.label));
    }
    GpaOptions select = options;
    select.bounds = qpe::ReturnBounds{};
    out.selection = gpa_run(candidates, select);
    // Equal estimates go to the lower episode index rather than the gate count.
    out.winner = out.selection.result.policy_id;
    if (std::abs(out.selection.values[0] - out.selection.values[1]) <=
        qpi::kThresholdTol) {
        out.winner = 0;
    }
    const double wall = seconds_since(start);
    for (EpisodeResult &ep : out.episodes) {
        ep.wall_seconds = wall;
    }
    return out;
}

std::vector<GaqaAction> default_gaqa_actions(double rx_angle, double ry_angle,
                                             double rz_angle) {
    std::vector<GaqaAction> out(4);
    out[0].name = "rx";
    out[0].circuit.add(gates::rx(rx_angle, 0));
    out[1].name = "ry";
    out[1].circuit.add(gates::ry(ry_angle, 1));
    out[2].name = "rz";
    out[2].circuit.add(gates::rz(rz_angle, 0));
    out[2].circuit.add(gates::rz(rz_angle, 1));
    out[3].name = "cnot";
    out[3].circuit.add(gates::cnot(0, 2));
    return out;
}

double readout_qfi(const gates::Circuit &preparation, double phase) {
    if (preparation.num_qubits() != 3) {
        throw ArgumentError("read-out preparation must act on three qubits");
    }
    sim::Statevector state = gates::simulate(preparation);
    gates::Circuit probe(3);
    probe.add(gates::rz(phase, 0));
    probe.add(gates::rz(phase, 1));
    gates::run(probe, state);
    gates::run(preparation.adjoint(), state);
    const std::array<int, 2> sensing{0, 1};
    return qfi::qfi_analytic(state, sensing).normalized;
}

GaqaRun gaqa_run(const GaqaOptions &options) {
    if (options.actions.empty()) {
        throw ArgumentError("GAQA action set is empty");
    }
    if (options.max_actions < 1 || options.max_actions > kMaxGaqaActions) {
        throw ArgumentError("max_actions must be in [1, 10]");
    }
    if (options.episodes < 1) {
        throw ArgumentError("at least one episode is required");
    }
    if (options.rotations < 1) {
        throw ArgumentError("rotation budget must be at least 1");
    }
    for (const GaqaAction &a : options.actions) {
        if (a.circuit.num_qubits() != 3) {
            throw ArgumentError("GAQA action '" + a.name + "' must act on three qubits");
        }
    }
    const std::vector<double> rz = qfi::rz_schedule(options.rotations, options.rz_max);
    const auto n_actions = options.actions.size();
    const int width = register_width(n_actions);
    std::vector<int> register_qubits(static_cast<std::size_t>(width));
    std::iota(register_qubits.begin(), register_qubits.end(), 0);
    const auto steps = static_cast<long long>(options.episodes) * options.max_actions;
    const auto R = static_cast<long long>(options.rotations);
    auto phase_at = [&](long long rotation) {
        return static_cast<double>(options.interrogations) *
               rz[static_cast<std::size_t>(rotation - 1)];
    };

    // One preference register and one value per step of an episode.
    const double uniform = 1.0 / std::sqrt(static_cast<double>(n_actions));
    std::vector<std::vector<double>> preference(
        static_cast<std::size_t>(options.max_actions),
        std::vector<double>(n_actions, uniform));
    std::vector<double> values(static_cast<std::size_t>(options.max_actions) + 1, 0.0);

    GaqaRun run;
    run.trace.assign(static_cast<std::size_t>(options.rotations), 0.0);
    long long step = 0;
    for (int episode = 0; episode < options.episodes; ++episode) {
        const auto start = Clock::now();
        gates::Circuit prep(3);
        std::vector<std::string> history;
        EpisodeResult ep;
        ep.policy_id = episode;
        ep.seed = options.seed;
        double previous = 0.0;
        double reward = 0.0;
        bool done = false;
        for (int j = 0; j < options.max_actions; ++j, ++step) {
            const long long lo = step * R / steps + 1;
            const long long hi = (step + 1) * R / steps;
            if (!done) {
                auto &pref = preference[static_cast<std::size_t>(j)];
                std::vector<sim::Complex> amps(std::size_t{1} << width);
                for (std::size_t a = 0; a < n_actions; ++a) {
                    amps[a] = pref[a];
                }
                const sim::CollapseResult pick = sim::collapse_measure(
                    sim::Statevector::normalized(std::move(amps)), register_qubits,
                    derive_seed(options.seed, static_cast<std::uint64_t>(step)));
                const auto a = static_cast<std::size_t>(sim::from_bitstring(pick.outcome));
                if (a >= n_actions) {
                    throw InvariantError("collapsed onto an unused action index");
                }
                prep.append(options.actions[a].circuit);
                history.push_back(options.actions[a].name);
                ep.gate_count += options.actions[a].circuit.gate_count();

                reward = readout_qfi(prep, phase_at(std::max(hi, 1LL)));
                auto &v = values;
                const auto js = static_cast<std::size_t>(j);
                v[js] += options.td_rate * (reward + v[js + 1] - v[js]);

                double norm = 0.0;
                for (double x : pref) {
                    norm += x * x;
                }
                const double theta =
                    std::asin(std::min(1.0, std::abs(pref[a]) / std::sqrt(norm)));
                const int L = qpi::rotation_count(options.k,
                                                  options.reward_weight * reward,
                                                  std::max(0.0, v[js + 1]), theta);
                if (reward > previous) {
                    for (int l = 0; l < L; ++l) {
                        pref[a] = -pref[a];
                        double overlap = 0.0;
                        for (double x : pref) {
                            overlap += uniform * x;
                        }
                        for (double &x : pref) {
                            x = 2.0 * uniform * overlap - x;
                        }
                    }
                }
                previous = reward;
                done = reward >= kQfiTarget;
            }
            for (long long r = lo; r <= hi; ++r) {
                const double q = readout_qfi(prep, phase_at(r));
                run.trace[static_cast<std::size_t>(r - 1)] = q;
                ep.trace.push_back(q);
            }
        }
        ep.final_qfi.normalized = ep.trace.empty() ? reward : ep.trace.back();
        ep.final_qfi.raw = 8.0 * ep.final_qfi.normalized;
        ep.final_qfi.n_qubits = 2;
        ep.final_qfi.method = qfi::Method::analytic;
        for (std::size_t i = 0; i < history.size(); ++i) {
            ep.label += (i > 0 ? "," : "") + history[i];
        }
        ep.wall_seconds = seconds_since(start);
        run.histories.push_back(std::move(history));
        run.episodes.push_back(std::move(ep));
    }
    return run;
}

CompareResult compare_agents(const qfi::QscConfig &config, int rotations,
                             std::span<const std::uint64_t> seeds,
                             std::uint64_t sweep_shots, const GpaOptions &gpa_options,
                             GaqaOptions gaqa_options) {
    if (seeds.empty()) {
        throw ArgumentError("seed list is empty");
    }
    std::vector<std::uint64_t> sorted(seeds.begin(), seeds.end());
    std::sort(sorted.begin(), sorted.end());

    CompareResult out;
    gaqa_options.rotations = rotations;
    gaqa_options.interrogations = config.interrogations;
    for (std::uint64_t seed : sorted) {
        GpaOptions g = gpa_options;
        g.seed = seed;
        const ParallelResult pr =
            gpa_run_parallel_episodes(config, rotations, sweep_shots, g);
        out.gpa_runs.push_back(
            pr.episodes[static_cast<std::size_t>(pr.winner)].trace);
        gaqa_options.seed = seed;
        out.gaqa_runs.push_back(gaqa_run(gaqa_options).trace);
    }
    const auto n = static_cast<std::size_t>(rotations);
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<double> a;
        std::vector<double> b;
        for (std::size_t s = 0; s < sorted.size(); ++s) {
            a.push_back(out.gpa_runs[s][r]);
            b.push_back(out.gaqa_runs[s][r]);
        }
        out.gpa.push_back(qpe::median(std::move(a)));
        out.gaqa.push_back(qpe::median(std::move(b)));
    }
    return out;
}

} // namespace gpa::agents
