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

#include <cmath>
#include <complex>
#include <vector>

#include "qmlkit/qsim.h"
#include "qmlkit/rng.h"

namespace qmlkit::test_util {

/// Haar-ish random state: i.i.d. complex Gaussians, normalized.
inline StateVector random_state(size_t num_qubits, Rng &rng) {
    std::vector<Complex> amps(size_t{1} << num_qubits);
    double norm2 = 0;
    for (auto &a : amps) {
        a = Complex(rng.normal(0, 1), rng.normal(0, 1));
        norm2 += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm2);
    }
    return StateVector::from_amplitudes(std::move(amps));
}

inline std::vector<double> random_vector(size_t d, Rng &rng, double lo = -1, double hi = 1) {
    std::vector<double> v(d);
    for (auto &x : v) {
        x = rng.uniform(lo, hi);
    }
    return v;
}

}  // namespace qmlkit::test_util
