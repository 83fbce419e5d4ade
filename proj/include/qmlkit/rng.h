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

#include <cstddef>
#include <cstdint>
#include <random>

namespace qmlkit {

/// SplitMix64 finalizer; used to derive independent child seeds.
uint64_t mix_seed(uint64_t seed, uint64_t stream);

/// Seeded generator threaded explicitly through every stochastic routine.
///
/// Child streams are derived from the seed alone (not from the engine
/// position), so work split across children is reproducible regardless of
/// evaluation order.
class Rng {
   public:
    explicit Rng(uint64_t seed);

    uint64_t seed() const {
        return seed_;
    }
    Rng child(uint64_t stream) const {
        return Rng(mix_seed(seed_, stream));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n). Requires n > 0.
    size_t index(size_t n);
    double normal(double mean, double stddev);
    uint64_t binomial(uint64_t trials, double p);

    std::mt19937_64 &engine() {
        return engine_;
    }

   private:
    uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace qmlkit
