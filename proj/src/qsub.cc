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

#include "qmlkit/qsub.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qmlkit {

namespace {

/// Runs the SWAP-test circuit on `joint`, whose qubit 0 is a fresh |0>
/// ancilla, swapping qubit pairs (first[i], second[i]).
FidelityEstimate run_swap_test(StateVector joint, std::span<const size_t> first, std::span<const size_t> second,
                               Readout readout, Rng &rng) {
    joint.apply(GateOp::h(0));
    for (size_t i = 0; i < first.size(); ++i) {
        joint.apply(GateOp::cswap(0, first[i], second[i]));
    }
    joint.apply(GateOp::h(0));

    FidelityEstimate est;
    if (readout.is_exact()) {
        est.p0_hat = measure_qubit_probability(joint, 0, 0);
    } else {
        const size_t ancilla[] = {0};
        MeasurementRecord rec = sample_shots(joint, ancilla, readout.shot_count(), rng);
        est.p0_hat = rec.frequency("0");
        est.shots_used = readout.shot_count();
        est.std_error = std::sqrt(est.p0_hat * (1 - est.p0_hat) / static_cast<double>(est.shots_used));
    }
    est.fidelity_raw = 2 * est.p0_hat - 1;
    est.fidelity_hat = std::clamp(est.fidelity_raw, 0.0, 1.0);
    return est;
}

double squared_norm(std::span<const double> v) {
    double s = 0;
    for (double x : v) {
        s += x * x;
    }
    return s;
}

}  // namespace

Readout Readout::shots(uint64_t shots) {
    if (shots == 0) {
        throw std::invalid_argument("shot count must be >= 1");
    }
    return Readout(shots);
}

FidelityEstimate swap_test(const StateVector &a, const StateVector &b, Readout readout, Rng &rng) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("swap_test needs registers of equal size");
    }
    size_t n = a.num_qubits();
    StateVector joint = tensor(StateVector(1), tensor(a, b));
    std::vector<size_t> first(n), second(n);
    for (size_t i = 0; i < n; ++i) {
        first[i] = 1 + i;
        second[i] = 1 + n + i;
    }
    return run_swap_test(std::move(joint), first, second, readout, rng);
}

double quantum_distance(std::span<const double> u, std::span<const double> v, Readout readout, Rng &rng) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("quantum_distance needs vectors of equal dimension");
    }
    StateVector a = amplitude_encode(u);
    StateVector b = amplitude_encode(v);
    double nu2 = squared_norm(u), nv2 = squared_norm(v);
    double z = nu2 + nv2;

    // |psi> = (|0,a> + |1,b>) / sqrt(2): the index qubit leads the register.
    std::vector<Complex> psi(2 * a.size());
    const double r = 1 / std::sqrt(2.0);
    for (size_t i = 0; i < a.size(); ++i) {
        psi[i] = r * a[i];
        psi[a.size() + i] = r * b[i];
    }
    StateVector psi_state = StateVector::from_amplitudes(std::move(psi));
    StateVector phi = StateVector::from_amplitudes({std::sqrt(nu2 / z), -std::sqrt(nv2 / z)});

    // Layout: ancilla, phi, then psi (index qubit at position 2).
    StateVector joint = tensor(StateVector(1), tensor(phi, psi_state));
    const size_t first[] = {1};
    const size_t second[] = {2};
    FidelityEstimate est = run_swap_test(std::move(joint), first, second, readout, rng);
    return 2 * z * est.fidelity_hat;
}

std::vector<double> pad_to_power_of_two(std::span<const double> values, double fill) {
    std::vector<double> out(values.begin(), values.end());
    out.resize(std::max<size_t>(2, std::bit_ceil(values.size())), fill);
    return out;
}

QmaResult qma_minimize(std::span<const double> objective, Rng &rng, const QmaOptions &options) {
    const size_t n_states = objective.size();
    if (n_states == 0) {
        throw std::invalid_argument("qma_minimize needs a non-empty table");
    }
    if (n_states < 2 || !std::has_single_bit(n_states) || n_states > (size_t{1} << 14)) {
        throw std::invalid_argument("qma_minimize needs 2^n entries with 1 <= n <= 14");
    }
    for (double f : objective) {
        if (!std::isfinite(f)) {
            throw std::invalid_argument("objective table must be finite");
        }
    }
    const size_t num_qubits = static_cast<size_t>(std::countr_zero(n_states));
    const double cap = std::ceil(std::sqrt(static_cast<double>(n_states)));
    const size_t max_rounds = options.max_rounds ? options.max_rounds : 10 * static_cast<size_t>(cap);

    StateVector uniform(num_qubits);
    for (size_t q = 0; q < num_qubits; ++q) {
        uniform.apply(GateOp::h(q));
    }

    QmaResult result;
    result.argmin_index = rng.index(n_states);
    double threshold = objective[result.argmin_index];
    result.threshold_history.push_back(threshold);

    double m = 1;
    size_t stalled = 0;
    std::vector<bool> marked(n_states);
    while (result.rounds < max_rounds) {
        ++result.rounds;
        for (size_t i = 0; i < n_states; ++i) {
            marked[i] = objective[i] < threshold;
        }
        size_t iterations = rng.index(static_cast<size_t>(std::floor(m)) + 1);
        StateVector state = uniform;
        for (size_t it = 0; it < iterations; ++it) {
            state.apply_oracle(marked);
            state.apply_diffusion();
        }
        uint64_t x = sample_index(state, rng);
        result.oracle_calls += iterations + 1;

        if (objective[x] < threshold) {
            threshold = objective[x];
            result.argmin_index = x;
            result.threshold_history.push_back(threshold);
            m = 1;
            stalled = 0;
        } else {
            m = std::min(m * options.growth, cap);
            if (m >= cap && ++stalled >= options.stall_rounds) {
                break;
            }
        }
    }
    result.min_value = objective[result.argmin_index];
    return result;
}

}  // namespace qmlkit
