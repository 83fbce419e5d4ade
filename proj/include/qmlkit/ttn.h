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

#include "qmlkit/dataset.h"
#include "qmlkit/encode.h"
#include "qmlkit/qsub.h"
#include "qmlkit/rng.h"

namespace qmlkit {

/// Number of rotation angles in a tree over `num_features` qubits: two per
/// block plus one on the output qubit.
size_t ttn_theta_count(size_t num_features);

/// The qubit that survives every level of the tree.
size_t ttn_output_qubit(size_t num_features);

/// Tree gates (without the encoding). Each block applies RY on both qubits of
/// a pair followed by a CNOT from the first qubit onto the second; the second
/// qubit moves on to the next level.
std::vector<GateOp> ttn_gates(size_t num_features, std::span<const double> thetas);

/// Encoded and evolved state for angle-encoded features.
StateVector ttn_state(std::span<const double> thetas, std::span<const double> angles);

/// P(|0>) of the output qubit for angle-encoded features.
double ttn_circuit_p0(std::span<const double> thetas, std::span<const double> angles, Readout readout, Rng &rng);
double ttn_circuit_p0(std::span<const double> thetas, std::span<const double> angles);

/// Parameter-shift gradient of the exact P(|0>) with respect to every theta.
std::vector<double> ttn_gradient(std::span<const double> thetas, std::span<const double> angles);

struct TtnModel {
    size_t num_features = 0;
    std::vector<double> thetas;
    RescaleParams rescaler;

    size_t output_qubit() const {
        return ttn_output_qubit(num_features);
    }
    /// Rescaled angles padded with zeros up to num_features.
    FeatureVector encode_angles(std::span<const double> x) const;
    void validate() const;
};

double ttn_forward(const TtnModel &model, std::span<const double> x, Readout readout, Rng &rng);
double ttn_forward(const TtnModel &model, std::span<const double> x);

/// 0 iff p0 < 0.5.
int ttn_predict(double p0);

struct TrainConfig {
    double learning_rate = 0.5;
    size_t batch_size = 8;
    size_t epochs = 60;
    uint64_t seed = 0;
    double train_fraction = 0.7;

    void validate() const;
};

struct TtnTrainResult {
    TtnModel model;
    /// Mean of (p0 - y)^2 over the training set; entry 0 is before training.
    std::vector<double> loss_history;
    /// Mean of (predicted label - y)^2, tracked alongside.
    std::vector<double> discrete_loss_history;
};

/// Stratified split by `train_fraction`, drawn from the config seed on a
/// stream separate from initialization and batching.
DatasetSplit split_for_training(const LabeledDataset &data, const TrainConfig &config);

/// Fits the rescaler on `train`, then runs minibatch gradient descent.
TtnTrainResult ttn_train(const LabeledDataset &train, const TrainConfig &config);

double ttn_accuracy(const TtnModel &model, const LabeledDataset &data);

/// Mean accuracy over `trials` for each (odd) shot count.
std::vector<double> shot_accuracy_curve(const TtnModel &model, const LabeledDataset &test,
                                        const std::vector<uint64_t> &shot_counts, size_t trials, uint64_t seed);

/// Expected accuracy at each (odd) shot count, from the binomial law of the
/// shot estimate. Shot counts above a few thousand are numerically fine.
std::vector<double> expected_shot_accuracy(const TtnModel &model, const LabeledDataset &test,
                                           const std::vector<uint64_t> &shot_counts);

struct MulticlassTtnModel {
    /// One branch per class; all share num_features and the rescaler.
    std::vector<TtnModel> branches;

    size_t class_count() const {
        return branches.size();
    }
    void validate() const;
};

/// Index of the largest entry; ties go to the smallest index.
int argmax_class(std::span<const double> scores);

std::vector<double> multiclass_probabilities(const MulticlassTtnModel &model, std::span<const double> x);
int multiclass_predict(const MulticlassTtnModel &model, std::span<const double> x);

struct MulticlassTrainResult {
    MulticlassTtnModel model;
    /// Mean softmax cross-entropy over the training set; entry 0 is before
    /// training.
    std::vector<double> loss_history;
};

MulticlassTrainResult multiclass_train(const LabeledDataset &train, const TrainConfig &config);

}  // namespace qmlkit
