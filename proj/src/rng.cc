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

#include "qmlkit/rng.h"

#include <algorithm>
#include <stdexcept>

namespace qmlkit {

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Rng::Rng(uint64_t seed) : seed_(seed), engine_(mix_seed(seed, 0xA11CE)) {
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

size_t Rng::index(size_t n) {
    if (n == 0) {
        throw std::invalid_argument("Rng::index requires n > 0");
    }
    std::uniform_int_distribution<size_t> dist(0, n - 1);
    return dist(engine_);
}

double Rng::normal(double mean, double stddev) {
    std::normal_distribution<double> dist(mean, stddev);
    return dist(engine_);
}

uint64_t Rng::binomial(uint64_t trials, double p) {
    p = std::clamp(p, 0.0, 1.0);
    if (trials == 0 || p == 0.0) {
        return 0;
    }
    if (p == 1.0) {
        return trials;
    }
    std::binomial_distribution<uint64_t> dist(trials, p);
    return dist(engine_);
}

}  // namespace qmlkit
