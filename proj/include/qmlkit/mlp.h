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

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "qmlkit/rng.h"

namespace qmlkit {

struct MlpGradients {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;
};

/// Fully connected network with tanh hidden layers and a linear output layer.
/// Inputs and outputs are column vectors; batches are matrices with one
/// column per sample.
class Mlp {
   public:
    /// All parameters zero.
    explicit Mlp(std::vector<size_t> layer_sizes);
    /// Weights uniform in +-sqrt(6 / (fan_in + fan_out)), biases zero.
    static Mlp glorot(std::vector<size_t> layer_sizes, Rng &rng);

    const std::vector<size_t> &layer_sizes() const {
        return layer_sizes_;
    }
    size_t layer_count() const {
        return weights_.size();
    }
    /// weights(l) maps layer l (columns) to layer l + 1 (rows).
    Eigen::MatrixXd &weights(size_t layer) {
        return weights_.at(layer);
    }
    const Eigen::MatrixXd &weights(size_t layer) const {
        return weights_.at(layer);
    }
    Eigen::VectorXd &biases(size_t layer) {
        return biases_.at(layer);
    }
    const Eigen::VectorXd &biases(size_t layer) const {
        return biases_.at(layer);
    }
    size_t parameter_count() const;

    /// Pure evaluation; leaves the cached pass untouched.
    Eigen::MatrixXd evaluate(const Eigen::MatrixXd &inputs) const;

    /// Evaluates and caches the activations needed by backward().
    Eigen::MatrixXd forward(const Eigen::MatrixXd &inputs);
    /// Gradients of a scalar loss given dloss/doutput for the cached pass,
    /// summed over the batch. Throws std::logic_error without a cached pass.
    MlpGradients backward(const Eigen::MatrixXd &output_grad) const;
    bool has_cached_pass() const {
        return !activations_.empty();
    }
    void clear_cache() {
        activations_.clear();
    }

    void apply_gradients(const MlpGradients &grads, double learning_rate);
    /// Throws std::invalid_argument on shape mismatch or non-finite values.
    void validate() const;

   private:
    void check_input(const Eigen::MatrixXd &inputs) const;

    std::vector<size_t> layer_sizes_;
    std::vector<Eigen::MatrixXd> weights_;
    std::vector<Eigen::VectorXd> biases_;
    /// Layer outputs of the cached pass, starting with the inputs.
    std::vector<Eigen::MatrixXd> activations_;
};

/// Mean over samples and outputs of the squared error.
double mse(const Eigen::MatrixXd &outputs, const Eigen::MatrixXd &targets);

struct MlpTrainConfig {
    double learning_rate = 1e-2;
    size_t batch_size = 32;
    size_t epochs = 100;
    uint64_t seed = 0;
};

struct MlpTrainResult {
    /// Full-dataset MSE; entry 0 is before training.
    std::vector<double> loss_history;
};

/// Minibatch gradient descent on the MSE. Samples are columns of `inputs`
/// and `targets`. Throws NumericalError if the loss becomes non-finite.
MlpTrainResult mlp_train(Mlp &model, const Eigen::MatrixXd &inputs, const Eigen::MatrixXd &targets,
                         const MlpTrainConfig &config);

}  // namespace qmlkit
