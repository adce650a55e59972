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
#include <string>

#include "gpa/errors.hpp"
#include "gpa/gates.hpp"

namespace gpa::gates {

namespace {

void check_indices(const GateSpec &spec, int num_qubits) {
    std::vector<int> all = spec.targets;
    all.insert(all.end(), spec.controls.begin(), spec.controls.end());
    for (int q : all) {
        if (q < 0 || q >= num_qubits) {
            throw ArgumentError(std::string(name(spec.kind)) + ": qubit " +
                                std::to_string(q) + " outside register of " +
                                std::to_string(num_qubits));
        }
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw ArgumentError(std::string(name(spec.kind)) +
                            ": targets and controls must be distinct");
    }
}

Circuit expand_composite(const GateSpec &spec, int num_qubits) {
    const int width = static_cast<int>(spec.targets.size());
    Circuit local = [&] {
        switch (spec.kind) {
        case GateKind::QFT:
            return qft(width);
        case GateKind::QFTinv:
            return qft_inv(width);
        case GateKind::Adder:
            return cdkm_adder((width - 2) / 2);
        default:
            return cdkm_adder_inv((width - 2) / 2);
        }
    }();
    Circuit out = local.remapped(spec.targets, num_qubits);
    for (int c : spec.controls) {
        out = out.controlled(c);
    }
    return out;
}

void apply_op(const GateSpec &spec, std::span<Complex> amplitudes) {
    if (spec.kind == GateKind::Measure) {
        return;
    }
    if (spec.kind == GateKind::Diagonal) {
        sim::kernels::apply_diagonal(amplitudes, *spec.phases, spec.targets,
                                     spec.controls);
        return;
    }
    const sim::UnitaryMatrix m = unitary(spec);
    if (m.is_diagonal()) {
        std::vector<Complex> phases(m.dim());
        for (std::size_t i = 0; i < m.dim(); ++i) {
            phases[i] = m(i, i);
        }
        sim::kernels::apply_diagonal(amplitudes, phases, spec.targets,
                                     spec.controls);
        return;
    }
    sim::kernels::apply_matrix(amplitudes, m, spec.targets, spec.controls);
}

} // namespace

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > sim::kMaxQubits) {
        throw CapacityError("circuit width must be in [1, " +
                            std::to_string(sim::kMaxQubits) + "], got " +
                            std::to_string(num_qubits));
    }
}

Circuit &Circuit::add(GateSpec spec) {
    validate(spec);
    check_indices(spec, num_qubits_);
    ops_.push_back(std::move(spec));
    return *this;
}

Circuit &Circuit::append(const Circuit &other, std::span<const int> qubit_map) {
    if (qubit_map.empty()) {
        if (other.num_qubits_ > num_qubits_) {
            throw ArgumentError("appended circuit is wider than the register");
        }
        for (const GateSpec &op : other.ops_) {
            add(op);
        }
        return *this;
    }
    const Circuit mapped = other.remapped(qubit_map, num_qubits_);
    for (const GateSpec &op : mapped.ops_) {
        ops_.push_back(op);
    }
    return *this;
}

Circuit Circuit::adjoint() const {
    Circuit out(num_qubits_);
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        if (it->kind == GateKind::Measure) {
            continue;
        }
        out.ops_.push_back(gates::adjoint(*it));
    }
    return out;
}

Circuit Circuit::controlled(int control) const {
    if (control < 0 || control >= num_qubits_) {
        throw ArgumentError("control qubit outside register");
    }
    Circuit out(num_qubits_);
    for (GateSpec op : expanded().ops_) {
        if (op.kind == GateKind::Measure) {
            throw ArgumentError("cannot control a measurement");
        }
        op.controls.push_back(control);
        out.add(std::move(op));
    }
    return out;
}

Circuit Circuit::expanded() const {
    Circuit out(num_qubits_);
    for (const GateSpec &op : ops_) {
        if (is_composite(op.kind)) {
            const Circuit sub = expand_composite(op, num_qubits_);
            out.ops_.insert(out.ops_.end(), sub.ops_.begin(), sub.ops_.end());
        } else {
            out.ops_.push_back(op);
        }
    }
    return out;
}

Circuit Circuit::remapped(std::span<const int> qubit_map, int num_qubits) const {
    if (qubit_map.size() != static_cast<std::size_t>(num_qubits_)) {
        throw ArgumentError("qubit map has " + std::to_string(qubit_map.size()) +
                            " entries for a " + std::to_string(num_qubits_) +
                            "-qubit circuit");
    }
    Circuit out(num_qubits);
    for (GateSpec op : ops_) {
        for (int &q : op.targets) {
            q = qubit_map[static_cast<std::size_t>(q)];
        }
        for (int &q : op.controls) {
            q = qubit_map[static_cast<std::size_t>(q)];
        }
        out.add(std::move(op));
    }
    return out;
}

std::vector<int> Circuit::measured_qubits() const {
    std::vector<int> out;
    for (const GateSpec &op : ops_) {
        if (op.kind == GateKind::Measure &&
            std::find(out.begin(), out.end(), op.targets[0]) == out.end()) {
            out.push_back(op.targets[0]);
        }
    }
    return out;
}

std::size_t Circuit::gate_count() const {
    const Circuit flat = expanded();
    return static_cast<std::size_t>(
        std::count_if(flat.ops_.begin(), flat.ops_.end(), [](const GateSpec &op) {
            return op.kind != GateKind::Measure;
        }));
}

std::map<GateKind, std::size_t> Circuit::census() const {
    std::map<GateKind, std::size_t> out;
    for (const GateSpec &op : ops_) {
        ++out[op.kind];
    }
    return out;
}

void run(const Circuit &circuit, std::span<Complex> amplitudes) {
    if (amplitudes.size() != (std::size_t{1} << circuit.num_qubits())) {
        throw ArgumentError("buffer length does not match circuit width");
    }
    for (const GateSpec &op : circuit.ops()) {
        if (is_composite(op.kind)) {
            run(expand_composite(op, circuit.num_qubits()), amplitudes);
        } else {
            apply_op(op, amplitudes);
        }
    }
}

void run(const Circuit &circuit, sim::Statevector &state) {
    if (state.num_qubits() != circuit.num_qubits()) {
        throw ArgumentError("state has " + std::to_string(state.num_qubits()) +
                            " qubits, circuit has " +
                            std::to_string(circuit.num_qubits()));
    }
    run(circuit, state.mutable_amplitudes());
}

sim::Statevector simulate(const Circuit &circuit) {
    sim::Statevector state(circuit.num_qubits());
    run(circuit, state);
    return state;
}

sim::Statevector simulate(const Circuit &circuit, sim::Statevector initial) {
    run(circuit, initial);
    return initial;
}

sim::UnitaryMatrix circuit_unitary(const Circuit &circuit) {
    if (circuit.num_qubits() > 12) {
        throw CapacityError("circuit_unitary supports at most 12 qubits");
    }
    const std::size_t dim = std::size_t{1} << circuit.num_qubits();
    const Circuit flat = circuit.expanded();
    std::vector<Complex> entries(dim * dim);
    std::vector<Complex> column(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        std::fill(column.begin(), column.end(), Complex{});
        column[c] = 1.0;
        run(flat, column);
        for (std::size_t r = 0; r < dim; ++r) {
            entries[r * dim + c] = column[r];
        }
    }
    return {dim, std::move(entries)};
}

} // namespace gpa::gates
