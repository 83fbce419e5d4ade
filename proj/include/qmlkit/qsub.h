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

#include <cstdint>
#include <span>
#include <vector>

#include "qmlkit/encode.h"
#include "qmlkit/qsim.h"
#include "qmlkit/rng.h"

namespace qmlkit {

/// How a circuit's measured probability is read out: exactly from the
/// simulated amplitudes, or estimated from a finite number of shots.
class Readout {
   public:
    static Readout exact() {
        return Readout(0);
    }
    /// Requires shots >= 1.
    static Readout shots(uint64_t shots);

    bool is_exact() const {
        return shots_ == 0;
    }
    uint64_t shot_count() const {
        return shots_;
    }

   private:
    explicit Readout(uint64_t shots) : shots_(shots) {
    }
    uint64_t shots_;
};

struct FidelityEstimate {
    double p0_hat = 0;
    /// 2 * p0_hat - 1, unclamped (finite-shot noise can push it below 0).
    double fidelity_raw = 0;
    /// fidelity_raw clamped into [0, 1].
    double fidelity_hat = 0;
    /// 0 for an exact readout.
    uint64_t shots_used = 0;
    /// sqrt(p0_hat (1 - p0_hat) / shots); 0 for an exact readout.
    double std_error = 0;
};

/// SWAP test between two registers of equal size: ancilla H, qubit-wise
/// controlled-SWAP, H, then read the ancilla.
FidelityEstimate swap_test(const StateVector &a, const StateVector &b, Readout readout, Rng &rng);

/// Squared Euclidean distance ||u - v||^2 estimated with a SWAP test between
/// (|u||0> - |v||1>)/sqrt(Z) and the index qubit of (|0,u^> + |1,v^>)/sqrt(2),
/// Z = |u|^2 + |v|^2. Returns 2 Z F with the clamped fidelity.
double quantum_distance(std::span<const double> u, std::span<const double> v, Readout readout, Rng &rng);

struct QmaOptions {
    /// 0 selects the default of 10 * ceil(sqrt(N)).
    size_t max_rounds = 0;
    /// Consecutive non-improving rounds, counted once the Grover-count cap
    /// has saturated, after which the search stops.
    size_t stall_rounds = 5;
    double growth = 8.0 / 7.0;
};

struct QmaResult {
    size_t argmin_index = 0;
    double min_value = 0;
    /// Every accepted threshold, starting with f(x_1); strictly decreasing.
    std::vector<double> threshold_history;
    /// Grover iterations plus one classical evaluation per round.
    uint64_t oracle_calls = 0;
    size_t rounds = 0;
};

/// Threshold-descent Grover minimization over a table of 2^n values (n <= 14).
QmaResult qma_minimize(std::span<const double> objective, Rng &rng, const QmaOptions &options = {});

/// Pads to the next power of two (at least 2) with `fill`.
std::vector<double> pad_to_power_of_two(std::span<const double> values, double fill);

}  // namespace qmlkit
