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

#include <numbers>
#include <span>
#include <vector>

#include "qmlkit/qsim.h"

namespace qmlkit {

using FeatureVector = std::vector<double>;

inline constexpr double kHalfPi = std::numbers::pi / 2;

/// Amplitude encoding: v / ||v||_2 on ceil(log2 d) qubits, zero padded to the
/// next power of two (and to at least two entries).
StateVector amplitude_encode(std::span<const double> v);

/// Per-feature affine map from the fitted [min, max] onto [0, pi/2].
struct RescaleParams {
    std::vector<double> min;
    std::vector<double> max;

    size_t dimension() const {
        return min.size();
    }
    /// Features with max == min; these map to pi/4.
    std::vector<size_t> constant_features() const;
    /// Rescales and clips into [0, pi/2].
    FeatureVector apply(std::span<const double> v) const;
};

RescaleParams fit_rescaler(std::span<const FeatureVector> dataset);

/// Angle encoding: (x) over i of cos(x_i)|0> + sin(x_i)|1>, one qubit per
/// feature. Entries must lie in [0, pi/2].
StateVector angle_encode(std::span<const double> x);

}  // namespace qmlkit
