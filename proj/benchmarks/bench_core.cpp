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

#include <benchmark/benchmark.h>

#include "gpa/gates.hpp"
#include "gpa/qfi.hpp"
#include "gpa/qpe.hpp"
#include "gpa/qpi.hpp"
#include "gpa/statevector.hpp"

namespace {

using namespace gpa;

void BM_ApplyHadamardLayer(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    gates::Circuit c(n);
    for (int q = 0; q < n; ++q) {
        c.add(gates::h(q));
    }
    for (auto _ : state) {
        sim::Statevector sv(n);
        gates::run(c, sv);
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_ApplyHadamardLayer)->DenseRange(8, 20, 4);

void BM_Qft(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const gates::Circuit c = gates::qft(n);
    for (auto _ : state) {
        sim::Statevector sv = gates::simulate(c);
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
}
BENCHMARK(BM_Qft)->DenseRange(2, 8, 2);

void BM_SampleMeasure(benchmark::State &state) {
    gates::Circuit c(6);
    for (int q = 0; q < 6; ++q) {
        c.add(gates::ry(0.3 * (q + 1), q));
    }
    const sim::Statevector sv = gates::simulate(c);
    const std::vector<int> qubits{0, 1, 2, 3, 4, 5};
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto hist = sim::sample_measure(sv, qubits, static_cast<std::uint64_t>(state.range(0)),
                                        ++seed);
        benchmark::DoNotOptimize(hist.total_shots);
    }
}
BENCHMARK(BM_SampleMeasure)->Arg(1024)->Arg(100000);

void BM_EpisodeQfiExact(benchmark::State &state) {
    const qfi::QscConfig config = qfi::QscConfig::simplified_default();
    for (auto _ : state) {
        auto values = qfi::episode_qfi(config, 0.1, 0, 1);
        benchmark::DoNotOptimize(values.data());
    }
}
BENCHMARK(BM_EpisodeQfiExact);

void BM_EstimateValue(benchmark::State &state) {
    const int t = static_cast<int>(state.range(0));
    const qpe::Policy noon = qpe::make_policy(
        0, qfi::parse_actions("rx,ry,s,rx"), qfi::ActionAngles{}, 4);
    for (auto _ : state) {
        auto e = qpe::estimate_value(noon, t, 4096, 7, qpe::ReturnBounds{});
        benchmark::DoNotOptimize(e.value);
    }
}
BENCHMARK(BM_EstimateValue)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_GroverIterate(benchmark::State &state) {
    qpe::PolicySpaceConfig space_config;
    space_config.alphabet = {qfi::Action::rx, qfi::Action::ry, qfi::Action::squeeze};
    const auto policies = qpe::enumerate_policies(space_config);
    const qpi::SearchSpace space = qpi::prepare_search_space(policies, 4, qpe::ReturnBounds{});
    const qpi::ThresholdOracle oracle = qpi::build_threshold_oracle(0.5, 4, qpe::ReturnBounds{});
    const int L = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto sv = qpi::grover_iterate(space, oracle, L);
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
}
BENCHMARK(BM_GroverIterate)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
