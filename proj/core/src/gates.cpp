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
#include <array>
#include <cmath>
#include <numbers>

#include "gpa/errors.hpp"
#include "gpa/gates.hpp"

namespace gpa::gates {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 22> kNames{{
    {GateKind::H, "H"},
    {GateKind::X, "X"},
    {GateKind::Z, "Z"},
    {GateKind::CNOT, "CNOT"},
    {GateKind::Toffoli, "Toffoli"},
    {GateKind::Rx, "Rx"},
    {GateKind::Ry, "Ry"},
    {GateKind::Rz, "Rz"},
    {GateKind::Phase, "Phase"},
    {GateKind::Squeeze, "Squeeze"},
    {GateKind::V, "V"},
    {GateKind::Vinv, "Vinv"},
    {GateKind::CV, "CV"},
    {GateKind::CVinv, "CVinv"},
    {GateKind::Swap, "Swap"},
    {GateKind::QFT, "QFT"},
    {GateKind::QFTinv, "QFTinv"},
    {GateKind::Adder, "Adder"},
    {GateKind::AdderInv, "AdderInv"},
    {GateKind::Measure, "Measure"},
    {GateKind::Unitary, "Unitary"},
    {GateKind::Diagonal, "Diagonal"},
}};

std::size_t required_controls(GateKind kind) {
    switch (kind) {
    case GateKind::CNOT:
    case GateKind::CV:
    case GateKind::CVinv:
        return 1;
    case GateKind::Toffoli:
        return 2;
    default:
        return 0;
    }
}

sim::UnitaryMatrix matrix2(Complex a, Complex b, Complex c, Complex d) {
    return {2, {a, b, c, d}};
}

const sim::UnitaryMatrix &pauli_x() {
    static const sim::UnitaryMatrix m = matrix2(0.0, 1.0, 1.0, 0.0);
    return m;
}

} // namespace

std::string_view name(GateKind kind) {
    for (const auto &[k, n] : kNames) {
        if (k == kind) {
            return n;
        }
    }
    return "?";
}

std::optional<GateKind> kind_from_name(std::string_view text) {
    for (const auto &[k, n] : kNames) {
        if (n == text) {
            return k;
        }
    }
    return std::nullopt;
}

bool is_parametric(GateKind kind) {
    return kind == GateKind::Rx || kind == GateKind::Ry ||
           kind == GateKind::Rz || kind == GateKind::Phase ||
           kind == GateKind::Squeeze;
}

bool is_composite(GateKind kind) {
    return kind == GateKind::QFT || kind == GateKind::QFTinv ||
           kind == GateKind::Adder || kind == GateKind::AdderInv;
}

void validate(const GateSpec &spec) {
    const std::string kind_name(name(spec.kind));
    if (is_parametric(spec.kind) != spec.angle.has_value()) {
        throw ArgumentError(kind_name + (spec.angle ? " takes no angle"
                                                    : " requires an angle"));
    }
    if (spec.angle && !std::isfinite(*spec.angle)) {
        throw ArgumentError(kind_name + " angle must be finite");
    }
    if (spec.controls.size() < required_controls(spec.kind)) {
        throw ArgumentError(kind_name + " needs " +
                            std::to_string(required_controls(spec.kind)) +
                            " control(s)");
    }
    const std::size_t nt = spec.targets.size();
    switch (spec.kind) {
    case GateKind::Squeeze:
    case GateKind::Swap:
        if (nt != 2) {
            throw ArgumentError(kind_name + " acts on exactly two qubits");
        }
        break;
    case GateKind::QFT:
    case GateKind::QFTinv:
        if (nt < 1 || nt > static_cast<std::size_t>(kMaxQftQubits)) {
            throw CapacityError("QFT width must be in [1, 8]");
        }
        break;
    case GateKind::Adder:
    case GateKind::AdderInv:
        if (nt < 4 || nt % 2 != 0 ||
            (nt - 2) / 2 > static_cast<std::size_t>(kMaxAdderBits)) {
            throw CapacityError("adder register must be 2n+2 qubits, n in [1, 3]");
        }
        break;
    case GateKind::Measure:
        if (nt != 1 || !spec.controls.empty()) {
            throw ArgumentError("Measure acts on one qubit without controls");
        }
        break;
    case GateKind::Unitary:
        if (!spec.matrix || spec.matrix->dim() != (std::size_t{1} << nt) ||
            nt == 0) {
            throw ArgumentError("Unitary payload does not match target count");
        }
        break;
    case GateKind::Diagonal:
        if (!spec.phases || spec.phases->size() != (std::size_t{1} << nt) ||
            nt == 0) {
            throw ArgumentError("Diagonal payload does not match target count");
        }
        break;
    default:
        if (nt != 1) {
            throw ArgumentError(kind_name + " acts on exactly one target");
        }
        break;
    }
}

sim::UnitaryMatrix rotation(Axis axis, double theta) {
    if (!std::isfinite(theta)) {
        throw ArgumentError("rotation angle must be finite");
    }
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex i{0.0, 1.0};
    switch (axis) {
    case Axis::x:
        return matrix2(c, -i * s, -i * s, c);
    case Axis::y:
        return matrix2(c, -s, s, c);
    case Axis::z:
        break;
    }
    return matrix2(std::exp(-i * (theta / 2.0)), 0.0, 0.0,
                   std::exp(i * (theta / 2.0)));
}

sim::UnitaryMatrix squeeze_matrix(double theta) {
    if (!std::isfinite(theta)) {
        throw ArgumentError("squeeze angle must be finite");
    }
    // Collective-Z eigenvalues on |00>, |01>, |10>, |11> are 2, 0, 0, -2.
    const Complex edge = std::exp(Complex{0.0, -4.0 * theta});
    const std::array<Complex, 4> phases{edge, 1.0, 1.0, edge};
    return sim::UnitaryMatrix::diagonal(phases);
}

sim::UnitaryMatrix v_gate() {
    const Complex k{0.5, 0.5};
    const Complex i{0.0, 1.0};
    return matrix2(k, -i * k, -i * k, k);
}

sim::UnitaryMatrix v_inv_gate() {
    const Complex k{0.5, -0.5};
    const Complex i{0.0, 1.0};
    return matrix2(k, i * k, i * k, k);
}

sim::UnitaryMatrix unitary(const GateSpec &spec) {
    validate(spec);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    switch (spec.kind) {
    case GateKind::H:
        return matrix2(inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::Toffoli:
        return pauli_x();
    case GateKind::Z:
        return matrix2(1.0, 0.0, 0.0, -1.0);
    case GateKind::Rx:
        return rotation(Axis::x, *spec.angle);
    case GateKind::Ry:
        return rotation(Axis::y, *spec.angle);
    case GateKind::Rz:
        return rotation(Axis::z, *spec.angle);
    case GateKind::Phase:
        return matrix2(1.0, 0.0, 0.0, std::exp(Complex{0.0, *spec.angle}));
    case GateKind::Squeeze:
        return squeeze_matrix(*spec.angle);
    case GateKind::V:
    case GateKind::CV:
        return v_gate();
    case GateKind::Vinv:
    case GateKind::CVinv:
        return v_inv_gate();
    case GateKind::Swap: {
        std::vector<Complex> m(16);
        m[0] = m[6] = m[9] = m[15] = 1.0;
        return {4, std::move(m)};
    }
    case GateKind::Unitary:
        return *spec.matrix;
    case GateKind::Diagonal:
        return sim::UnitaryMatrix::diagonal(*spec.phases);
    case GateKind::QFT:
    case GateKind::QFTinv:
    case GateKind::Adder:
    case GateKind::AdderInv: {
        Circuit local(static_cast<int>(spec.targets.size()));
        std::vector<int> identity(spec.targets.size());
        for (std::size_t i = 0; i < identity.size(); ++i) {
            identity[i] = static_cast<int>(i);
        }
        GateSpec relabelled = spec;
        relabelled.targets = identity;
        relabelled.controls.clear();
        local.add(std::move(relabelled));
        return circuit_unitary(local);
    }
    case GateKind::Measure:
        break;
    }
    throw ArgumentError("Measure has no unitary");
}

bool is_diagonal(const GateSpec &spec) {
    switch (spec.kind) {
    case GateKind::Z:
    case GateKind::Rz:
    case GateKind::Phase:
    case GateKind::Squeeze:
    case GateKind::Diagonal:
        return true;
    case GateKind::Unitary:
        return spec.matrix && spec.matrix->is_diagonal();
    default:
        return false;
    }
}

GateSpec adjoint(const GateSpec &spec) {
    GateSpec out = spec;
    switch (spec.kind) {
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::Phase:
    case GateKind::Squeeze:
        out.angle = -*spec.angle;
        break;
    case GateKind::V:
        out.kind = GateKind::Vinv;
        break;
    case GateKind::Vinv:
        out.kind = GateKind::V;
        break;
    case GateKind::CV:
        out.kind = GateKind::CVinv;
        break;
    case GateKind::CVinv:
        out.kind = GateKind::CV;
        break;
    case GateKind::QFT:
        out.kind = GateKind::QFTinv;
        break;
    case GateKind::QFTinv:
        out.kind = GateKind::QFT;
        break;
    case GateKind::Adder:
        out.kind = GateKind::AdderInv;
        break;
    case GateKind::AdderInv:
        out.kind = GateKind::Adder;
        break;
    case GateKind::Unitary:
        out.matrix = std::make_shared<const sim::UnitaryMatrix>(
            spec.matrix->adjoint());
        break;
    case GateKind::Diagonal: {
        auto conj = std::make_shared<std::vector<Complex>>(*spec.phases);
        for (Complex &p : *conj) {
            p = std::conj(p);
        }
        out.phases = std::move(conj);
        break;
    }
    case GateKind::Measure:
        throw ArgumentError("Measure has no adjoint");
    default:
        break; // self-inverse
    }
    return out;
}

// --- convenience constructors ----------------------------------------------

namespace {
GateSpec make(GateKind kind, std::vector<int> targets,
              std::vector<int> controls = {},
              std::optional<double> angle = std::nullopt) {
    GateSpec spec;
    spec.kind = kind;
    spec.targets = std::move(targets);
    spec.controls = std::move(controls);
    if (angle && !std::isfinite(*angle)) {
        throw ArgumentError(std::string(name(kind)) + " angle must be finite");
    }
    spec.angle = angle;
    return spec;
}
} // namespace

GateSpec h(int q) { return make(GateKind::H, {q}); }
GateSpec x(int q) { return make(GateKind::X, {q}); }
GateSpec z(int q) { return make(GateKind::Z, {q}); }
GateSpec cnot(int control, int target) {
    return make(GateKind::CNOT, {target}, {control});
}
GateSpec toffoli(int c0, int c1, int target) {
    return make(GateKind::Toffoli, {target}, {c0, c1});
}
GateSpec rx(double theta, int q) { return make(GateKind::Rx, {q}, {}, theta); }
GateSpec ry(double theta, int q) { return make(GateKind::Ry, {q}, {}, theta); }
GateSpec rz(double theta, int q) { return make(GateKind::Rz, {q}, {}, theta); }
GateSpec phase(double lambda, int target, std::vector<int> controls) {
    return make(GateKind::Phase, {target}, std::move(controls), lambda);
}
GateSpec squeeze(double theta, int q0, int q1) {
    if (q0 == q1) {
        throw ArgumentError("squeeze needs two distinct qubits");
    }
    return make(GateKind::Squeeze, {q0, q1}, {}, theta);
}
GateSpec cv(int control, int target) {
    return make(GateKind::CV, {target}, {control});
}
GateSpec cv_inv(int control, int target) {
    return make(GateKind::CVinv, {target}, {control});
}
GateSpec swap(int a, int b) { return make(GateKind::Swap, {a, b}); }
GateSpec measure(int q) { return make(GateKind::Measure, {q}); }

GateSpec custom(sim::UnitaryMatrix matrix, std::vector<int> targets,
                std::string label) {
    GateSpec spec = make(GateKind::Unitary, std::move(targets));
    spec.matrix = std::make_shared<const sim::UnitaryMatrix>(std::move(matrix));
    spec.label = std::move(label);
    return spec;
}

GateSpec diagonal(std::vector<Complex> phases, std::vector<int> targets,
                  std::string label) {
    for (const Complex &p : phases) {
        if (std::abs(std::abs(p) - 1.0) > sim::kAlgebraicTol) {
            throw ArgumentError("diagonal entries must have unit modulus");
        }
    }
    GateSpec spec = make(GateKind::Diagonal, std::move(targets));
    spec.phases = std::make_shared<const std::vector<Complex>>(std::move(phases));
    spec.label = std::move(label);
    return spec;
}

// --- composites ------------------------------------------------------------

Circuit qft(int n) {
    if (n < 1 || n > kMaxQftQubits) {
        throw CapacityError("QFT width must be in [1, 8], got " +
                            std::to_string(n));
    }
    Circuit c(n);
    for (int j = n - 1; j >= 0; --j) {
        c.add(h(j));
        for (int k = j - 1; k >= 0; --k) {
            c.add(phase(std::numbers::pi / static_cast<double>(1 << (j - k)), j,
                        {k}));
        }
    }
    for (int i = 0; i < n / 2; ++i) {
        c.add(swap(i, n - 1 - i));
    }
    return c;
}

Circuit qft_inv(int n) { return qft(n).adjoint(); }

namespace {

void maj(Circuit &c, int x, int y, int z) {
    c.add(cnot(z, y));
    c.add(cnot(z, x));
    c.add(toffoli(x, y, z));
}

void uma(Circuit &c, int x, int y, int z) {
    c.add(toffoli(x, y, z));
    c.add(cnot(z, x));
    c.add(cnot(x, y));
}

} // namespace

Circuit cdkm_adder(int n_bits) {
    if (n_bits < 1 || n_bits > kMaxAdderBits) {
        throw CapacityError("adder width must be in [1, 3], got " +
                            std::to_string(n_bits));
    }
    const int n = n_bits;
    const int carry = 2 * n;
    const int helper = 2 * n + 1;
    auto a = [](int i) { return i; };
    auto b = [n](int i) { return n + i; };

    Circuit c(2 * n + 2);
    maj(c, helper, b(0), a(0));
    for (int i = 1; i < n; ++i) {
        maj(c, a(i - 1), b(i), a(i));
    }
    c.add(cnot(a(n - 1), carry));
    for (int i = n - 1; i >= 1; --i) {
        uma(c, a(i - 1), b(i), a(i));
    }
    uma(c, helper, b(0), a(0));
    return c;
}

Circuit cdkm_adder_inv(int n_bits) { return cdkm_adder(n_bits).adjoint(); }

Circuit half_subtractor(int minuend, int subtrahend, int borrow) {
    if (minuend == subtrahend || minuend == borrow || subtrahend == borrow) {
        throw ArgumentError("half subtractor needs three distinct qubits");
    }
    if (minuend < 0 || subtrahend < 0 || borrow < 0) {
        throw ArgumentError("qubit indices must be non-negative");
    }
    // Borrow accumulates V^(s - m + (m XOR s)) = V^(2 s (1 - m)) = X^(s AND NOT m).
    Circuit c(std::max({minuend, subtrahend, borrow}) + 1);
    c.add(cv(subtrahend, borrow));
    c.add(cv_inv(minuend, borrow));
    c.add(cnot(minuend, subtrahend));
    c.add(cv(subtrahend, borrow));
    return c;
}

} // namespace gpa::gates
