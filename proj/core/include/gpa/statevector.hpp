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
 * Dense statevector simulation substrate.
 *
 * Bit ordering is little-endian throughout the library: qubit `j` is bit `j`
 * of the basis index, so applying X on qubit `j` maps index `i` to
 * `i ^ (1 << j)`. Multi-qubit gate matrices use the same convention locally:
 * `targets[0]` is the least significant bit of the gate's row/column index.
 *
 * Measurement outcomes are rendered as bitstrings with the *last* listed qubit
 * as the leftmost character, i.e. the string is the binary representation of
 * `sum_i bit(qubits[i]) << i`.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gpa::sim {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 24;
/// Tolerance for single algebraic operations (unitarity, norm after a gate).
inline constexpr double kAlgebraicTol = 1e-12;
/// Tolerance for results of composed circuits.
inline constexpr double kCircuitTol = 1e-9;

class UnitaryMatrix {
  public:
    /// Row-major `dim x dim` entries. Throws ArgumentError unless `dim` is a
    /// power of two and U U^dagger = I within kAlgebraicTol elementwise.
    UnitaryMatrix(std::size_t dim, std::vector<Complex> entries);

    static UnitaryMatrix identity(std::size_t dim);
    static UnitaryMatrix diagonal(std::span<const Complex> phases);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] int num_qubits() const noexcept;
    [[nodiscard]] Complex operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    [[nodiscard]] std::span<const Complex> entries() const noexcept {
        return entries_;
    }
    [[nodiscard]] bool is_diagonal() const noexcept;
    [[nodiscard]] UnitaryMatrix adjoint() const;

    /// Largest elementwise deviation from `other`.
    [[nodiscard]] double max_abs_diff(const UnitaryMatrix &other) const;

    friend UnitaryMatrix operator*(const UnitaryMatrix &lhs,
                                   const UnitaryMatrix &rhs);

  private:
    struct Unchecked {};
    UnitaryMatrix(std::size_t dim, std::vector<Complex> entries, Unchecked);

    std::size_t dim_;
    std::vector<Complex> entries_;
};

/// Low-level kernels over a raw amplitude buffer of `2^n` entries. They do not
/// require the buffer to be normalized, which lets block-structured callers
/// (e.g. per-policy sub-registers) reuse them.
namespace kernels {
void apply_matrix(std::span<Complex> amplitudes, const UnitaryMatrix &gate,
                  std::span<const int> targets, std::span<const int> controls);
void apply_diagonal(std::span<Complex> amplitudes,
                    std::span<const Complex> phases,
                    std::span<const int> targets, std::span<const int> controls);
} // namespace kernels

class Statevector {
  public:
    /// |0...0> on `n_qubits`; throws CapacityError outside [1, kMaxQubits].
    explicit Statevector(int n_qubits);

    /// Computational basis state |index>.
    static Statevector basis(int n_qubits, std::uint64_t index);

    /// Takes amplitudes verbatim. Throws ArgumentError unless the length is a
    /// power of two and the norm is 1 within kCircuitTol.
    static Statevector from_amplitudes(std::vector<Complex> amplitudes);

    /// Rescales to unit norm first; throws ArgumentError on a zero vector.
    static Statevector normalized(std::vector<Complex> amplitudes);

    [[nodiscard]] int num_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept {
        return amplitudes_.size();
    }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    [[nodiscard]] Complex operator[](std::size_t index) const {
        return amplitudes_[index];
    }
    [[nodiscard]] double norm() const;

    /// Controlled unitary on `targets`. Validates ranges, disjointness and
    /// that `gate.dim() == 2^targets.size()`.
    void apply(const UnitaryMatrix &gate, std::span<const int> targets,
               std::span<const int> controls = {});

    /// Diagonal gate given by its phases (length `2^targets.size()`).
    void apply_diagonal(std::span<const Complex> phases,
                        std::span<const int> targets,
                        std::span<const int> controls = {});

    /// Mutable view for kernels that are unitary by construction
    /// (reflections, oracles). Callers own the norm invariant.
    [[nodiscard]] std::span<Complex> mutable_amplitudes() noexcept {
        return amplitudes_;
    }

  private:
    Statevector(int n_qubits, std::vector<Complex> amplitudes);
    void check_operands(std::size_t gate_dim, std::span<const int> targets,
                        std::span<const int> controls) const;

    int n_qubits_;
    std::vector<Complex> amplitudes_;
};

struct ShotHistogram {
    /// Outcome bitstring -> count. Keys all have length `width`.
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total_shots = 0;
    std::uint64_t seed = 0;
    int width = 0;

    [[nodiscard]] std::uint64_t count(std::string_view outcome) const;
    /// Counts indexed by outcome integer, length 2^width.
    [[nodiscard]] std::vector<std::uint64_t> dense() const;
};

struct CollapseResult {
    std::string outcome;
    Statevector state;
};

[[nodiscard]] Statevector new_zero_state(int n_qubits);

[[nodiscard]] Statevector apply_gate(Statevector state, const UnitaryMatrix &gate,
                                     std::span<const int> targets,
                                     std::span<const int> controls = {});

/// sum_i |a_i|^2 d_i.
[[nodiscard]] double expectation_diag(const Statevector &state,
                                      std::span<const double> diagonal);

/// Exact Born marginal over `qubits`, indexed by outcome integer.
[[nodiscard]] std::vector<double> marginal_probabilities(
    const Statevector &state, std::span<const int> qubits);

[[nodiscard]] ShotHistogram sample_measure(const Statevector &state,
                                           std::span<const int> qubits,
                                           std::uint64_t shots,
                                           std::uint64_t seed);

/// Draws `shots` outcomes from an explicit distribution (inverse CDF).
[[nodiscard]] ShotHistogram sample_distribution(std::span<const double> probabilities,
                                                int width, std::uint64_t shots,
                                                std::uint64_t seed);

[[nodiscard]] CollapseResult collapse_measure(const Statevector &state,
                                              std::span<const int> qubits,
                                              std::uint64_t seed);

/// Restricts a histogram to a subset of its bit positions (0 = rightmost
/// character, i.e. the first measured qubit).
[[nodiscard]] ShotHistogram marginalize(const ShotHistogram &histogram,
                                        std::span<const int> positions);

[[nodiscard]] std::string to_bitstring(std::uint64_t value, int width);
[[nodiscard]] std::uint64_t from_bitstring(std::string_view bits);

} // namespace gpa::sim
