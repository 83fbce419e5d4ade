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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmlkit/mlp.h"
#include "qmlkit/qsim.h"
#include "qmlkit/rng.h"

namespace qmlkit {

using BlochVector = std::array<double, 3>;

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct BlochState {
    double theta = 0;
    double phi = 0;

    /// Direction of a non-zero vector; throws NumericalError for a zero or
    /// non-finite vector.
    static BlochState from_vector(const BlochVector &r);
    BlochVector vector() const;
    std::array<Complex, 2> amplitudes() const;
    DensityMatrix density() const;
};

double fidelity(const BlochState &a, const BlochState &b);

std::vector<BlochState> sample_bloch_uniform(size_t count, Rng &rng);

enum class NoiseKind { None, SystematicUnitary, RandomUnitary, AmplitudePhase };

std::string noise_kind_name(NoiseKind kind);
/// Accepts none, systematic_unitary, random_unitary, amplitude_phase.
NoiseKind parse_noise_kind(const std::string &name);

struct NoiseChannel {
    NoiseKind kind = NoiseKind::None;
    /// Rotation axis for the unitary kinds. The random kind may leave it
    /// unset until the pipeline draws one from its seed.
    std::optional<BlochVector> axis;
    /// Systematic rotation angle (radians).
    double angle = 0.15;
    /// Standard deviation of the per-shot rotation angle (radians).
    double angle_std = 0.15;
    /// Amplitude damping probability.
    double gamma = 0.1;
    /// Phase damping probability.
    double lambda = 0.1;

    static NoiseChannel none();
    static NoiseChannel systematic_unitary(BlochVector axis = {0, 1, 0}, double angle = 0.15);
    static NoiseChannel random_unitary(std::optional<BlochVector> axis = std::nullopt, double angle_std = 0.15);
    static NoiseChannel amplitude_phase(double gamma = 0.1, double lambda = 0.1);

    /// Throws std::invalid_argument on out-of-range parameters or a missing
    /// axis.
    void validate() const;
    /// Kraus operators of the channel. For the random unitary this is the
    /// exact average over the per-shot angle distribution, which reproduces
    /// the per-shot outcome statistics.
    std::vector<Matrix2> kraus_operators() const;
    DensityMatrix apply(const DensityMatrix &rho) const;
};

/// exp(-i angle n.sigma / 2) for a unit axis n.
Matrix2 rotation_matrix(const BlochVector &axis, double angle);

struct TomogramRecord {
    /// "+" outcome counts for the X, Y and Z bases.
    std::array<uint64_t, 3> plus{};
    std::array<uint64_t, 3> shots{};

    uint64_t total_shots() const {
        return shots[0] + shots[1] + shots[2];
    }
    /// Fraction of "+" outcomes per basis.
    std::array<double, 3> frequencies() const;
};

/// P("+") in the X, Y and Z bases for a state.
std::array<double, 3> plus_probabilities(const DensityMatrix &rho);

/// Applies the channel and splits sample_size shots over the X, Y and Z
/// bases as evenly as possible (earlier bases take the remainder).
TomogramRecord simulate_measurements(const BlochState &state, const NoiseChannel &noise, uint64_t sample_size,
                                     Rng &rng);

struct MleEstimate {
    BlochState state;
    double log_likelihood = 0;
};

/// Pure-state log-likelihood of a record.
double tomogram_log_likelihood(const TomogramRecord &record, const BlochState &state);

/// Maximum-likelihood pure state: 20 Nelder-Mead searches over (theta, phi)
/// from fixed starting points spread over the sphere.
MleEstimate mle_reconstruct(const TomogramRecord &record);

struct TomographyConfig {
    size_t train_count = 10000;
    size_t eval_count = 2000;
    uint64_t sample_size = 100000;
    uint64_t seed = 0;
    NoiseChannel noise;
    std::vector<size_t> hidden_layers{64, 64};
    /// Feed "+" and "-" frequencies separately (6 inputs) instead of the
    /// centered "+" frequencies (3 inputs).
    bool per_outcome_inputs = false;
    MlpTrainConfig training{1e-2, 32, 200, 0};

    void validate() const;
};

struct TomographyExperiment {
    BlochState truth;
    BlochState mle;
    BlochState network;
    double mle_fidelity = 0;
    double network_fidelity = 0;
};

struct InfidelitySummary {
    double mean = 0;
    double median = 0;
    double q1 = 0;
    double q3 = 0;
};

InfidelitySummary summarize_infidelity(std::vector<double> infidelities);

struct TomographyReport {
    /// The channel as used, with any random axis resolved.
    NoiseChannel noise;
    std::vector<TomographyExperiment> experiments;
    InfidelitySummary mle;
    InfidelitySummary network;
    std::vector<double> training_loss;
};

/// Network input for a record.
Eigen::VectorXd tomogram_features(const TomogramRecord &record, bool per_outcome);

TomographyReport neurotomography_pipeline(const TomographyConfig &config);

}  // namespace qmlkit
