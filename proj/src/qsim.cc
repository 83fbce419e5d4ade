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

#include "qmlkit/qsim.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qmlkit {

namespace {

constexpr double kNormTolerance = 1e-10;

bool is_power_of_two(size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

std::string bits_of(uint64_t value, size_t width) {
    std::string s(width, '0');
    for (size_t i = 0; i < width; ++i) {
        if ((value >> (width - 1 - i)) & 1) {
            s[i] = '1';
        }
    }
    return s;
}

}  // namespace

GateOp GateOp::h(size_t q) {
    return GateOp{GateKind::H, {q}, {}};
}

GateOp GateOp::x(size_t q) {
    return GateOp{GateKind::X, {q}, {}};
}

GateOp GateOp::ry(size_t q, double angle) {
    return GateOp{GateKind::RY, {q}, {}, {angle, 0, 0}};
}

GateOp GateOp::u3(size_t q, double theta, double phi, double lambda) {
    return GateOp{GateKind::U3, {q}, {}, {theta, phi, lambda}};
}

GateOp GateOp::cnot(size_t control, size_t target) {
    return GateOp{GateKind::CNOT, {target}, {control}};
}

GateOp GateOp::cswap(size_t control, size_t a, size_t b) {
    return GateOp{GateKind::CSWAP, {a, b}, {control}};
}

GateOp GateOp::unitary(size_t q, const Matrix2 &m, std::vector<size_t> controls) {
    return GateOp{GateKind::Unitary, {q}, std::move(controls), {}, m};
}

Matrix2 gate_matrix(const GateOp &gate) {
    Matrix2 m;
    const Complex i(0, 1);
    switch (gate.kind) {
        case GateKind::H: {
            double r = 1 / std::sqrt(2.0);
            m << r, r, r, -r;
            return m;
        }
        case GateKind::X:
        case GateKind::CNOT:
            m << 0, 1, 1, 0;
            return m;
        case GateKind::RY: {
            double c = std::cos(gate.angles[0] / 2), s = std::sin(gate.angles[0] / 2);
            m << c, -s, s, c;
            return m;
        }
        case GateKind::U3: {
            auto [theta, phi, lambda] = gate.angles;
            double c = std::cos(theta / 2), s = std::sin(theta / 2);
            m << c, -std::exp(i * lambda) * s, std::exp(i * phi) * s, std::exp(i * (phi + lambda)) * c;
            return m;
        }
        case GateKind::Unitary:
            return gate.matrix;
        case GateKind::CSWAP:
            break;
    }
    throw std::invalid_argument("gate has no single-qubit matrix");
}

bool is_unitary(const Matrix2 &m, double tol) {
    Matrix2 d = m.adjoint() * m - Matrix2::Identity();
    return d.cwiseAbs().maxCoeff() <= tol;
}

StateVector::StateVector(size_t num_qubits) : StateVector(num_qubits, {}) {
    amplitudes_.assign(size_t{1} << num_qubits, Complex(0));
    amplitudes_[0] = 1;
}

StateVector::StateVector(size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (num_qubits == 0 || num_qubits > 30) {
        throw std::invalid_argument("StateVector needs between 1 and 30 qubits");
    }
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    if (amplitudes.size() < 2 || !is_power_of_two(amplitudes.size())) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2");
    }
    size_t n = static_cast<size_t>(std::countr_zero(amplitudes.size()));
    StateVector s(n, std::move(amplitudes));
    if (std::abs(s.norm_squared() - 1) > kNormTolerance) {
        throw std::invalid_argument("amplitudes are not normalized");
    }
    return s;
}

StateVector StateVector::basis(size_t num_qubits, uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.size()) {
        throw std::out_of_range("basis index out of range");
    }
    s.amplitudes_[0] = 0;
    s.amplitudes_[index] = 1;
    return s;
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::check_qubit(size_t qubit) const {
    if (qubit >= num_qubits_) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " +
                                std::to_string(num_qubits_) + "-qubit register");
    }
}

void StateVector::apply(const GateOp &gate) {
    size_t expected_targets = gate.kind == GateKind::CSWAP ? 2 : 1;
    if (gate.targets.size() != expected_targets) {
        throw std::invalid_argument("wrong number of gate targets");
    }
    if ((gate.kind == GateKind::CNOT || gate.kind == GateKind::CSWAP) && gate.controls.size() != 1) {
        throw std::invalid_argument("CNOT/CSWAP take exactly one control");
    }
    std::vector<size_t> all = gate.targets;
    all.insert(all.end(), gate.controls.begin(), gate.controls.end());
    for (size_t q : all) {
        check_qubit(q);
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw std::invalid_argument("gate qubit indices must be distinct");
    }
    uint64_t control_mask = 0;
    for (size_t c : gate.controls) {
        control_mask |= qubit_mask(c);
    }
    if (gate.kind == GateKind::CSWAP) {
        apply_swap(gate.targets[0], gate.targets[1], control_mask);
        return;
    }
    Matrix2 m = gate_matrix(gate);
    if (gate.kind == GateKind::Unitary && !is_unitary(m)) {
        throw std::invalid_argument("custom gate matrix is not unitary");
    }
    apply_single(m, gate.targets[0], control_mask);
}

void StateVector::apply_single(const Matrix2 &m, size_t target, uint64_t control_mask) {
    uint64_t t = qubit_mask(target);
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (uint64_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & t) || (i & control_mask) != control_mask) {
            continue;
        }
        Complex a0 = amplitudes_[i];
        Complex a1 = amplitudes_[i | t];
        amplitudes_[i] = m00 * a0 + m01 * a1;
        amplitudes_[i | t] = m10 * a0 + m11 * a1;
    }
}

void StateVector::apply_swap(size_t a, size_t b, uint64_t control_mask) {
    uint64_t ma = qubit_mask(a), mb = qubit_mask(b);
    for (uint64_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & ma) && !(i & mb) && (i & control_mask) == control_mask) {
            std::swap(amplitudes_[i], amplitudes_[i ^ ma ^ mb]);
        }
    }
}

void StateVector::apply_oracle(const std::vector<bool> &marked) {
    if (marked.size() != amplitudes_.size()) {
        throw std::invalid_argument("oracle mask size must equal the state dimension");
    }
    for (size_t i = 0; i < amplitudes_.size(); ++i) {
        if (marked[i]) {
            amplitudes_[i] = -amplitudes_[i];
        }
    }
}

void StateVector::apply_diffusion() {
    Complex mean = std::accumulate(amplitudes_.begin(), amplitudes_.end(), Complex(0)) /
                   static_cast<double>(amplitudes_.size());
    for (auto &a : amplitudes_) {
        a = 2.0 * mean - a;
    }
}

StateVector apply_gate(StateVector state, const GateOp &gate) {
    state.apply(gate);
    return state;
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<Complex> amps;
    amps.reserve(a.size() * b.size());
    for (const auto &x : a.amplitudes()) {
        for (const auto &y : b.amplitudes()) {
            amps.push_back(x * y);
        }
    }
    return StateVector::from_amplitudes(std::move(amps));
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner product of registers with different sizes");
    }
    Complex total = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        total += std::conj(a[i]) * b[i];
    }
    return total;
}

double measure_qubit_probability(const StateVector &state, size_t qubit, int outcome) {
    if (qubit >= state.num_qubits()) {
        throw std::out_of_range("qubit index out of range");
    }
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("outcome must be 0 or 1");
    }
    uint64_t mask = state.qubit_mask(qubit);
    double p1 = 0;
    double total = 0;
    for (uint64_t i = 0; i < state.size(); ++i) {
        double w = std::norm(state[i]);
        total += w;
        if (i & mask) {
            p1 += w;
        }
    }
    // Normalize by the computed total so P(0) + P(1) = 1 to rounding.
    double p = outcome == 1 ? p1 / total : (total - p1) / total;
    return std::clamp(p, 0.0, 1.0);
}

std::vector<double> marginal_probabilities(const StateVector &state, std::span<const size_t> qubits) {
    if (qubits.empty()) {
        throw std::invalid_argument("no qubits to measure");
    }
    for (size_t q : qubits) {
        if (q >= state.num_qubits()) {
            throw std::out_of_range("qubit index out of range");
        }
    }
    std::vector<double> probs(size_t{1} << qubits.size(), 0.0);
    for (uint64_t i = 0; i < state.size(); ++i) {
        uint64_t key = 0;
        for (size_t q : qubits) {
            key = (key << 1) | ((i & state.qubit_mask(q)) ? 1 : 0);
        }
        probs[key] += std::norm(state[i]);
    }
    return probs;
}

uint64_t MeasurementRecord::count(const std::string &bits) const {
    auto it = outcome_counts.find(bits);
    return it == outcome_counts.end() ? 0 : it->second;
}

double MeasurementRecord::frequency(const std::string &bits) const {
    return total_shots == 0 ? 0.0 : static_cast<double>(count(bits)) / static_cast<double>(total_shots);
}

MeasurementRecord sample_shots(const StateVector &state, std::span<const size_t> qubits, uint64_t shots, Rng &rng) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be >= 1");
    }
    std::vector<double> probs = marginal_probabilities(state, qubits);
    MeasurementRecord record;
    record.total_shots = shots;
    uint64_t remaining = shots;
    double remaining_mass = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (size_t k = 0; k < probs.size() && remaining > 0; ++k) {
        uint64_t c;
        if (k + 1 == probs.size()) {
            c = remaining;
        } else {
            double p = remaining_mass > 0 ? probs[k] / remaining_mass : 0.0;
            c = rng.binomial(remaining, p);
        }
        remaining -= c;
        remaining_mass -= probs[k];
        if (c > 0) {
            record.outcome_counts[bits_of(k, qubits.size())] = c;
        }
    }
    return record;
}

MeasurementRecord sample_shots(const StateVector &state, std::span<const size_t> qubits, uint64_t shots, uint64_t seed) {
    Rng rng(seed);
    return sample_shots(state, qubits, shots, rng);
}

uint64_t sample_index(const StateVector &state, Rng &rng) {
    double u = rng.uniform() * state.norm_squared();
    double acc = 0;
    uint64_t last_nonzero = 0;
    for (uint64_t i = 0; i < state.size(); ++i) {
        double w = std::norm(state[i]);
        if (w > 0) {
            last_nonzero = i;
        }
        acc += w;
        if (u < acc) {
            return i;
        }
    }
    return last_nonzero;
}

DensityMatrix DensityMatrix::from_matrix(const Matrix2 &m) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kNormTolerance) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(m.trace() - Complex(1)) > kNormTolerance) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    DensityMatrix rho(m);
    if (rho.eigenvalues()[0] < -kNormTolerance) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
    return rho;
}

DensityMatrix DensityMatrix::pure(Complex a0, Complex a1) {
    double n = std::norm(a0) + std::norm(a1);
    if (std::abs(n - 1) > kNormTolerance) {
        throw std::invalid_argument("pure state amplitudes are not normalized");
    }
    Eigen::Vector2cd v(a0, a1);
    return from_matrix(v * v.adjoint());
}

std::array<double, 3> DensityMatrix::bloch_vector() const {
    return {2 * rho_(0, 1).real(), -2 * rho_(0, 1).imag(), (rho_(0, 0) - rho_(1, 1)).real()};
}

std::array<double, 2> DensityMatrix::eigenvalues() const {
    double tr = (rho_(0, 0) + rho_(1, 1)).real();
    double det = (rho_(0, 0) * rho_(1, 1) - rho_(0, 1) * rho_(1, 0)).real();
    double disc = std::sqrt(std::max(0.0, tr * tr - 4 * det));
    return {(tr - disc) / 2, (tr + disc) / 2};
}

DensityMatrix apply_kraus(const DensityMatrix &rho, std::span<const Matrix2> kraus_ops) {
    if (kraus_ops.empty()) {
        throw std::invalid_argument("empty Kraus operator set");
    }
    Matrix2 completeness = Matrix2::Zero();
    Matrix2 out = Matrix2::Zero();
    for (const auto &k : kraus_ops) {
        completeness += k.adjoint() * k;
        out += k * rho.matrix() * k.adjoint();
    }
    if ((completeness - Matrix2::Identity()).cwiseAbs().maxCoeff() > kNormTolerance) {
        throw std::invalid_argument("Kraus operators are not trace preserving");
    }
    // Re-symmetrize against rounding before validation.
    out = (out + out.adjoint()) / 2.0;
    return DensityMatrix::from_matrix(out);
}

DensityMatrix apply_unitary(const DensityMatrix &rho, const Matrix2 &u) {
    std::array<Matrix2, 1> ops{u};
    return apply_kraus(rho, ops);
}

}  // namespace qmlkit
