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

#include "qmlkit/encode.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmlkit {

StateVector amplitude_encode(std::span<const double> v) {
    if (v.empty()) {
        throw std::invalid_argument("cannot encode an empty vector");
    }
    double norm2 = 0;
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("feature values must be finite");
        }
        norm2 += x * x;
    }
    if (norm2 == 0) {
        throw std::invalid_argument("cannot amplitude-encode the zero vector");
    }
    double norm = std::sqrt(norm2);
    size_t padded = std::max<size_t>(2, std::bit_ceil(v.size()));
    std::vector<Complex> amps(padded, Complex(0));
    for (size_t i = 0; i < v.size(); ++i) {
        amps[i] = v[i] / norm;
    }
    return StateVector::from_amplitudes(std::move(amps));
}

std::vector<size_t> RescaleParams::constant_features() const {
    std::vector<size_t> out;
    for (size_t j = 0; j < min.size(); ++j) {
        if (max[j] == min[j]) {
            out.push_back(j);
        }
    }
    return out;
}

FeatureVector RescaleParams::apply(std::span<const double> v) const {
    if (v.size() != min.size()) {
        throw std::invalid_argument("feature dimension does not match the rescaler");
    }
    FeatureVector out(v.size());
    for (size_t j = 0; j < v.size(); ++j) {
        if (max[j] == min[j]) {
            out[j] = kHalfPi / 2;
            continue;
        }
        double t = (v[j] - min[j]) / (max[j] - min[j]);
        out[j] = std::clamp(t * kHalfPi, 0.0, kHalfPi);
    }
    return out;
}

RescaleParams fit_rescaler(std::span<const FeatureVector> dataset) {
    if (dataset.empty()) {
        throw std::invalid_argument("cannot fit a rescaler on an empty dataset");
    }
    size_t d = dataset.front().size();
    RescaleParams p{dataset.front(), dataset.front()};
    for (const auto &row : dataset) {
        if (row.size() != d) {
            throw std::invalid_argument("rows have inconsistent dimension");
        }
        for (size_t j = 0; j < d; ++j) {
            if (!std::isfinite(row[j])) {
                throw std::invalid_argument("feature values must be finite");
            }
            p.min[j] = std::min(p.min[j], row[j]);
            p.max[j] = std::max(p.max[j], row[j]);
        }
    }
    return p;
}

StateVector angle_encode(std::span<const double> x) {
    if (x.empty()) {
        throw std::invalid_argument("cannot encode an empty vector");
    }
    std::vector<Complex> amps{1.0};
    for (double xi : x) {
        if (!(xi >= 0 && xi <= kHalfPi)) {
            throw std::invalid_argument("angle-encoded features must lie in [0, pi/2]");
        }
        double c = std::cos(xi), s = std::sin(xi);
        std::vector<Complex> next;
        next.reserve(amps.size() * 2);
        for (const auto &a : amps) {
            next.push_back(a * c);
            next.push_back(a * s);
        }
        amps = std::move(next);
    }
    return StateVector::from_amplitudes(std::move(amps));
}

}  // namespace qmlkit
