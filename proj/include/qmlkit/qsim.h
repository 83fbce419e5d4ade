// Copyright 2026 The qmlkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qmlkit/rng.h"

namespace qmlkit {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;

enum class GateKind { H, X, RY, U3, CNOT, CSWAP, Unitary };

/// A gate acting on a register. Qubit 0 is the most significant bit of the
/// basis-state index, i.e. the top wire of a circuit diagram.
struct GateOp {
    GateKind kind;
    std::vector<size_t> targets;
    std::vector<size_t> controls;
    /// RY uses angles[0]; U3 uses (theta, phi, lambda).
    std::array<double, 3> angles{};
    /// Only meaningful for GateKind::Unitary.
    Matrix2 matrix = Matrix2::Identity();

    static GateOp h(size_t q);
    static GateOp x(size_t q);
    static GateOp ry(size_t q, double angle);
    static GateOp u3(size_t q, double theta, double phi, double lambda);
    static GateOp cnot(size_t control, size_t target);
    static GateOp cswap(size_t control, size_t a, size_t b);
    /// Arbitrary (optionally controlled) single-qubit unitary. Validated when
    /// applied; a non-unitary matrix is rejected.
    static GateOp unitary(size_t q, const Matrix2 &m, std::vector<size_t> controls = {});
};

/// The 2x2 matrix of a single-target gate (H, X, RY, U3, Unitary; CNOT yields X).
Matrix2 gate_matrix(const GateOp &gate);
bool is_unitary(const Matrix2 &m, double tol = 1e-10);

class StateVector {
   public:
    /// |0...0> on num_qubits qubits.
    explicit StateVector(size_t num_qubits);

    /// Requires 2^n entries with unit norm (within 1e-10).
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);
    static StateVector basis(size_t num_qubits, uint64_t index);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t size() const {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    const Complex &operator[](size_t index) const {
        return amplitudes_[index];
    }
    double norm_squared() const;

    /// Bit mask of a qubit inside a basis-state index.
    uint64_t qubit_mask(size_t qubit) const {
        return uint64_t{1} << (num_qubits_ - 1 - qubit);
    }

    void apply(const GateOp &gate);
    /// Phase flip (-1) on every basis state with marked[index] set.
    void apply_oracle(const std::vector<bool> &marked);
    /// Reflection 2|s><s| - I about the uniform superposition |s>.
    void apply_diffusion();

   private:
    StateVector(size_t num_qubits, std::vector<Complex> amplitudes);
    void check_qubit(size_t qubit) const;
    void apply_single(const Matrix2 &m, size_t target, uint64_t control_mask);
    void apply_swap(size_t a, size_t b, uint64_t control_mask);

    size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

StateVector apply_gate(StateVector state, const GateOp &gate);
/// |a> (x) |b>, with a's qubits first.
StateVector tensor(const StateVector &a, const StateVector &b);
Complex inner_product(const StateVector &a, const StateVector &b);

/// Exact Born-rule probability that `qubit` reads `outcome`.
double measure_qubit_probability(const StateVector &state, size_t qubit, int outcome);
/// Joint outcome distribution over `qubits`, indexed with qubits[0] as MSB.
std::vector<double> marginal_probabilities(const StateVector &state, std::span<const size_t> qubits);

struct MeasurementRecord {
    /// Bit-strings are written with qubits in the order they were requested.
    std::map<std::string, uint64_t> outcome_counts;
    uint64_t total_shots = 0;

    uint64_t count(const std::string &bits) const;
    double frequency(const std::string &bits) const;
};

/// Draws `shots` i.i.d. measurements of `qubits` from the exact Born
/// distribution. Counts are produced by sequential conditional binomials,
/// which is distributionally identical to shot-by-shot sampling.
MeasurementRecord sample_shots(const StateVector &state, std::span<const size_t> qubits, uint64_t shots, Rng &rng);
MeasurementRecord sample_shots(const StateVector &state, std::span<const size_t> qubits, uint64_t shots, uint64_t seed);
/// One full-register measurement; returns the basis-state index.
uint64_t sample_index(const StateVector &state, Rng &rng);

/// Single-qubit density matrix.
class DensityMatrix {
   public:
    /// Validates Hermiticity, unit trace and positivity (tolerance 1e-10).
    static DensityMatrix from_matrix(const Matrix2 &m);
    static DensityMatrix pure(Complex a0, Complex a1);

    const Matrix2 &matrix() const {
        return rho_;
    }
    /// (<X>, <Y>, <Z>).
    std::array<double, 3> bloch_vector() const;
    std::array<double, 2> eigenvalues() const;

   private:
    explicit DensityMatrix(const Matrix2 &m) : rho_(m) {
    }
    Matrix2 rho_;
};

/// rho -> sum_k K rho K^dagger. Requires sum_k K^dagger K = I within 1e-10.
DensityMatrix apply_kraus(const DensityMatrix &rho, std::span<const Matrix2> kraus_ops);
DensityMatrix apply_unitary(const DensityMatrix &rho, const Matrix2 &u);

}  // namespace qmlkit
