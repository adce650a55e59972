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

#include "gpa/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "gpa/errors.hpp"
#include "gpa/rng.hpp"

namespace gpa::sim {

namespace {

bool is_power_of_two(std::size_t value) { return std::has_single_bit(value); }

std::uint64_t mask_of(std::span<const int> qubits) {
    std::uint64_t mask = 0;
    for (int q : qubits) {
        mask |= std::uint64_t{1} << q;
    }
    return mask;
}

/// Spreads the low bits of `compact` into the zero positions of `mask`.
std::uint64_t deposit(std::uint64_t compact, std::uint64_t occupied, int n) {
    std::uint64_t out = 0;
    for (int bit = 0; bit < n && compact != 0; ++bit) {
        if ((occupied >> bit) & 1U) {
            continue;
        }
        out |= (compact & 1U) << bit;
        compact >>= 1U;
    }
    return out;
}

std::uint64_t gather_bits(std::uint64_t index, std::span<const int> qubits) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        out |= ((index >> qubits[i]) & 1U) << i;
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(std::size_t dim, std::vector<Complex> entries,
                             Unchecked)
    : dim_(dim), entries_(std::move(entries)) {}

UnitaryMatrix::UnitaryMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0 || !is_power_of_two(dim_)) {
        throw ArgumentError("unitary dimension must be a power of two");
    }
    if (entries_.size() != dim_ * dim_) {
        throw ArgumentError("unitary entry count does not match dimension");
    }
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            Complex acc{};
            for (std::size_t k = 0; k < dim_; ++k) {
                acc += entries_[r * dim_ + k] * std::conj(entries_[c * dim_ + k]);
            }
            const double expected = r == c ? 1.0 : 0.0;
            if (std::abs(acc - expected) > kAlgebraicTol) {
                throw ArgumentError("matrix is not unitary within 1e-12");
            }
        }
    }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
    std::vector<Complex> entries(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        entries[i * dim + i] = 1.0;
    }
    return {dim, std::move(entries)};
}

UnitaryMatrix UnitaryMatrix::diagonal(std::span<const Complex> phases) {
    const std::size_t dim = phases.size();
    std::vector<Complex> entries(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        entries[i * dim + i] = phases[i];
    }
    return {dim, std::move(entries)};
}

int UnitaryMatrix::num_qubits() const noexcept {
    return std::countr_zero(dim_);
}

bool UnitaryMatrix::is_diagonal() const noexcept {
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            if (r != c && entries_[r * dim_ + c] != Complex{}) {
                return false;
            }
        }
    }
    return true;
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    std::vector<Complex> out(entries_.size());
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out[c * dim_ + r] = std::conj(entries_[r * dim_ + c]);
        }
    }
    return {dim_, std::move(out), Unchecked{}};
}

double UnitaryMatrix::max_abs_diff(const UnitaryMatrix &other) const {
    if (other.dim_ != dim_) {
        throw ArgumentError("dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
    }
    return worst;
}

UnitaryMatrix operator*(const UnitaryMatrix &lhs, const UnitaryMatrix &rhs) {
    if (lhs.dim_ != rhs.dim_) {
        throw ArgumentError("dimension mismatch");
    }
    const std::size_t dim = lhs.dim_;
    std::vector<Complex> out(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t k = 0; k < dim; ++k) {
            const Complex a = lhs.entries_[r * dim + k];
            if (a == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < dim; ++c) {
                out[r * dim + c] += a * rhs.entries_[k * dim + c];
            }
        }
    }
    return {dim, std::move(out), UnitaryMatrix::Unchecked{}};
}

// ---------------------------------------------------------------------------
// Kernels

namespace kernels {

void apply_matrix(std::span<Complex> amplitudes, const UnitaryMatrix &gate,
                  std::span<const int> targets, std::span<const int> controls) {
    const int n = std::countr_zero(amplitudes.size());
    const std::uint64_t target_mask = mask_of(targets);
    const std::uint64_t control_mask = mask_of(controls);
    const std::uint64_t occupied = target_mask | control_mask;
    const std::size_t local_dim = gate.dim();
    const std::size_t free_count =
        amplitudes.size() >> std::popcount(occupied);

    // Offsets of each local basis state relative to the base index.
    std::vector<std::uint64_t> offsets(local_dim);
    for (std::size_t local = 0; local < local_dim; ++local) {
        std::uint64_t off = 0;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            off |= ((local >> i) & 1U) << targets[i];
        }
        offsets[local] = off;
    }

    if (local_dim == 2) {
        const Complex u00 = gate(0, 0), u01 = gate(0, 1);
        const Complex u10 = gate(1, 0), u11 = gate(1, 1);
        const std::uint64_t off = offsets[1];
        for (std::size_t f = 0; f < free_count; ++f) {
            const std::uint64_t base = deposit(f, occupied, n) | control_mask;
            const Complex a0 = amplitudes[base];
            const Complex a1 = amplitudes[base | off];
            amplitudes[base] = u00 * a0 + u01 * a1;
            amplitudes[base | off] = u10 * a0 + u11 * a1;
        }
        return;
    }

    std::vector<Complex> in(local_dim);
    for (std::size_t f = 0; f < free_count; ++f) {
        const std::uint64_t base = deposit(f, occupied, n) | control_mask;
        for (std::size_t local = 0; local < local_dim; ++local) {
            in[local] = amplitudes[base | offsets[local]];
        }
        for (std::size_t r = 0; r < local_dim; ++r) {
            Complex acc{};
            for (std::size_t c = 0; c < local_dim; ++c) {
                acc += gate(r, c) * in[c];
            }
            amplitudes[base | offsets[r]] = acc;
        }
    }
}

void apply_diagonal(std::span<Complex> amplitudes,
                    std::span<const Complex> phases,
                    std::span<const int> targets, std::span<const int> controls) {
    const std::uint64_t control_mask = mask_of(controls);
    for (std::uint64_t i = 0; i < amplitudes.size(); ++i) {
        if ((i & control_mask) != control_mask) {
            continue;
        }
        amplitudes[i] *= phases[gather_bits(i, targets)];
    }
}

} // namespace kernels

// ---------------------------------------------------------------------------
// Statevector

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw CapacityError("qubit count must be in [1, " +
                            std::to_string(kMaxQubits) + "], got " +
                            std::to_string(n_qubits));
    }
    amplitudes_.assign(std::size_t{1} << n_qubits, Complex{});
    amplitudes_[0] = 1.0;
}

Statevector::Statevector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

Statevector Statevector::basis(int n_qubits, std::uint64_t index) {
    Statevector out(n_qubits);
    if (index >= out.size()) {
        throw ArgumentError("basis index out of range");
    }
    out.amplitudes_[0] = 0.0;
    out.amplitudes_[index] = 1.0;
    return out;
}

Statevector Statevector::from_amplitudes(std::vector<Complex> amplitudes) {
    if (amplitudes.size() < 2 || !is_power_of_two(amplitudes.size())) {
        throw ArgumentError("amplitude count must be a power of two >= 2");
    }
    const int n = std::countr_zero(amplitudes.size());
    if (n > kMaxQubits) {
        throw CapacityError("too many amplitudes");
    }
    Statevector out(n, std::move(amplitudes));
    if (std::abs(out.norm() - 1.0) > kCircuitTol) {
        throw ArgumentError("amplitudes are not normalized");
    }
    return out;
}

Statevector Statevector::normalized(std::vector<Complex> amplitudes) {
    double sq = 0.0;
    for (const Complex &a : amplitudes) {
        sq += std::norm(a);
    }
    if (sq == 0.0) {
        throw ArgumentError("cannot normalize the zero vector");
    }
    const double scale = 1.0 / std::sqrt(sq);
    for (Complex &a : amplitudes) {
        a *= scale;
    }
    return from_amplitudes(std::move(amplitudes));
}

double Statevector::norm() const {
    double sq = 0.0;
    for (const Complex &a : amplitudes_) {
        sq += std::norm(a);
    }
    return std::sqrt(sq);
}

void Statevector::check_operands(std::size_t gate_dim,
                                 std::span<const int> targets,
                                 std::span<const int> controls) const {
    if (targets.empty()) {
        throw ArgumentError("gate needs at least one target");
    }
    std::uint64_t seen = 0;
    auto visit = [&](int q) {
        if (q < 0 || q >= n_qubits_) {
            throw ArgumentError("qubit index " + std::to_string(q) +
                                " out of range");
        }
        const std::uint64_t bit = std::uint64_t{1} << q;
        if (seen & bit) {
            throw ArgumentError("qubit index " + std::to_string(q) +
                                " used more than once");
        }
        seen |= bit;
    };
    for (int q : targets) visit(q);
    for (int q : controls) visit(q);
    if (gate_dim != (std::size_t{1} << targets.size())) {
        throw ArgumentError("gate dimension does not match target count");
    }
}

void Statevector::apply(const UnitaryMatrix &gate, std::span<const int> targets,
                        std::span<const int> controls) {
    check_operands(gate.dim(), targets, controls);
    kernels::apply_matrix(amplitudes_, gate, targets, controls);
}

void Statevector::apply_diagonal(std::span<const Complex> phases,
                                 std::span<const int> targets,
                                 std::span<const int> controls) {
    check_operands(phases.size(), targets, controls);
    for (const Complex &p : phases) {
        if (std::abs(std::abs(p) - 1.0) > kAlgebraicTol) {
            throw ArgumentError("diagonal entries must have unit modulus");
        }
    }
    kernels::apply_diagonal(amplitudes_, phases, targets, controls);
}

// ---------------------------------------------------------------------------
// Free functions

std::uint64_t ShotHistogram::count(std::string_view outcome) const {
    const auto it = counts.find(std::string(outcome));
    return it == counts.end() ? 0 : it->second;
}

std::vector<std::uint64_t> ShotHistogram::dense() const {
    std::vector<std::uint64_t> out(std::size_t{1} << width, 0);
    for (const auto &[bits, n] : counts) {
        out[from_bitstring(bits)] += n;
    }
    return out;
}

Statevector new_zero_state(int n_qubits) { return Statevector(n_qubits); }

Statevector apply_gate(Statevector state, const UnitaryMatrix &gate,
                       std::span<const int> targets,
                       std::span<const int> controls) {
    state.apply(gate, targets, controls);
    return state;
}

double expectation_diag(const Statevector &state,
                        std::span<const double> diagonal) {
    if (diagonal.size() != state.size()) {
        throw ArgumentError("diagonal length must equal 2^n");
    }
    double acc = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]) * diagonal[i];
    }
    return acc;
}

std::vector<double> marginal_probabilities(const Statevector &state,
                                           std::span<const int> qubits) {
    if (qubits.empty()) {
        throw ArgumentError("measurement needs at least one qubit");
    }
    std::uint64_t seen = 0;
    for (int q : qubits) {
        if (q < 0 || q >= state.num_qubits()) {
            throw ArgumentError("measured qubit out of range");
        }
        if (seen & (std::uint64_t{1} << q)) {
            throw ArgumentError("measured qubit listed twice");
        }
        seen |= std::uint64_t{1} << q;
    }
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        probs[gather_bits(i, qubits)] += std::norm(amps[i]);
    }
    return probs;
}

namespace {

std::vector<double> cumulative(std::span<const double> probabilities) {
    std::vector<double> cdf(probabilities.size());
    std::partial_sum(probabilities.begin(), probabilities.end(), cdf.begin());
    return cdf;
}

std::size_t draw(std::span<const double> cdf, Engine &engine) {
    const double u = uniform01(engine) * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    auto index = static_cast<std::size_t>(it - cdf.begin());
    index = std::min(index, cdf.size() - 1);
    // Never land on a zero-probability outcome at the top end.
    while (index > 0 && cdf[index] == cdf[index - 1]) {
        --index;
    }
    return index;
}

} // namespace

ShotHistogram sample_distribution(std::span<const double> probabilities,
                                  int width, std::uint64_t shots,
                                  std::uint64_t seed) {
    if (shots == 0) {
        throw ArgumentError("shots must be >= 1");
    }
    if (probabilities.size() != (std::size_t{1} << width)) {
        throw ArgumentError("distribution length must be 2^width");
    }
    const auto cdf = cumulative(probabilities);
    if (!(cdf.back() > 0.0)) {
        throw ArgumentError("distribution has no mass");
    }
    Engine engine(seed);
    std::vector<std::uint64_t> tally(probabilities.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        ++tally[draw(cdf, engine)];
    }
    ShotHistogram out;
    out.total_shots = shots;
    out.seed = seed;
    out.width = width;
    for (std::size_t i = 0; i < tally.size(); ++i) {
        if (tally[i] > 0) {
            out.counts.emplace(to_bitstring(i, width), tally[i]);
        }
    }
    return out;
}

ShotHistogram sample_measure(const Statevector &state,
                             std::span<const int> qubits, std::uint64_t shots,
                             std::uint64_t seed) {
    const auto probs = marginal_probabilities(state, qubits);
    return sample_distribution(probs, static_cast<int>(qubits.size()), shots,
                               seed);
}

CollapseResult collapse_measure(const Statevector &state,
                                std::span<const int> qubits,
                                std::uint64_t seed) {
    const auto probs = marginal_probabilities(state, qubits);
    const auto cdf = cumulative(probs);
    Engine engine(seed);
    const std::uint64_t outcome = draw(cdf, engine);

    std::vector<Complex> projected(state.amplitudes().begin(),
                                   state.amplitudes().end());
    for (std::uint64_t i = 0; i < projected.size(); ++i) {
        if (gather_bits(i, qubits) != outcome) {
            projected[i] = 0.0;
        }
    }
    return {to_bitstring(outcome, static_cast<int>(qubits.size())),
            Statevector::normalized(std::move(projected))};
}

ShotHistogram marginalize(const ShotHistogram &histogram,
                          std::span<const int> positions) {
    ShotHistogram out;
    out.total_shots = histogram.total_shots;
    out.seed = histogram.seed;
    out.width = static_cast<int>(positions.size());
    for (int p : positions) {
        if (p < 0 || p >= histogram.width) {
            throw ArgumentError("histogram position out of range");
        }
    }
    for (const auto &[bits, n] : histogram.counts) {
        const std::uint64_t value = from_bitstring(bits);
        out.counts[to_bitstring(gather_bits(value, positions), out.width)] += n;
    }
    return out;
}

std::string to_bitstring(std::uint64_t value, int width) {
    std::string out(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
        if ((value >> i) & 1U) {
            out[static_cast<std::size_t>(width - 1 - i)] = '1';
        }
    }
    return out;
}

std::uint64_t from_bitstring(std::string_view bits) {
    std::uint64_t value = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw ArgumentError("bitstring may only contain '0' and '1'");
        }
        value = (value << 1U) | static_cast<std::uint64_t>(c == '1');
    }
    return value;
}

} // namespace gpa::sim
