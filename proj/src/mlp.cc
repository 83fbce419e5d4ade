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

#include "qmlkit/mlp.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qmlkit/errors.h"

namespace qmlkit {

Mlp::Mlp(std::vector<size_t> layer_sizes) : layer_sizes_(std::move(layer_sizes)) {
    if (layer_sizes_.size() < 2) {
        throw std::invalid_argument("an MLP needs at least an input and an output layer");
    }
    for (size_t s : layer_sizes_) {
        if (s == 0) {
            throw std::invalid_argument("layer sizes must be positive");
        }
    }
    for (size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
        weights_.push_back(Eigen::MatrixXd::Zero(layer_sizes_[l + 1], layer_sizes_[l]));
        biases_.push_back(Eigen::VectorXd::Zero(layer_sizes_[l + 1]));
    }
}

Mlp Mlp::glorot(std::vector<size_t> layer_sizes, Rng &rng) {
    Mlp m(std::move(layer_sizes));
    for (auto &w : m.weights_) {
        double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
        for (Eigen::Index j = 0; j < w.cols(); ++j) {
            for (Eigen::Index i = 0; i < w.rows(); ++i) {
                w(i, j) = rng.uniform(-limit, limit);
            }
        }
    }
    return m;
}

size_t Mlp::parameter_count() const {
    size_t n = 0;
    for (size_t l = 0; l < weights_.size(); ++l) {
        n += weights_[l].size() + biases_[l].size();
    }
    return n;
}

void Mlp::check_input(const Eigen::MatrixXd &inputs) const {
    if (static_cast<size_t>(inputs.rows()) != layer_sizes_.front()) {
        throw std::invalid_argument("input has " + std::to_string(inputs.rows()) + " rows, network expects " +
                                    std::to_string(layer_sizes_.front()));
    }
}

Eigen::MatrixXd Mlp::evaluate(const Eigen::MatrixXd &inputs) const {
    check_input(inputs);
    Eigen::MatrixXd a = inputs;
    for (size_t l = 0; l < weights_.size(); ++l) {
        Eigen::MatrixXd z = (weights_[l] * a).colwise() + biases_[l];
        a = l + 1 < weights_.size() ? Eigen::MatrixXd(z.array().tanh()) : z;
    }
    return a;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd &inputs) {
    check_input(inputs);
    activations_.assign(1, inputs);
    for (size_t l = 0; l < weights_.size(); ++l) {
        Eigen::MatrixXd z = (weights_[l] * activations_.back()).colwise() + biases_[l];
        activations_.push_back(l + 1 < weights_.size() ? Eigen::MatrixXd(z.array().tanh()) : z);
    }
    return activations_.back();
}

MlpGradients Mlp::backward(const Eigen::MatrixXd &output_grad) const {
    if (activations_.empty()) {
        throw std::logic_error("backward() called without a cached forward pass");
    }
    const Eigen::MatrixXd &out = activations_.back();
    if (output_grad.rows() != out.rows() || output_grad.cols() != out.cols()) {
        throw std::invalid_argument("output gradient shape does not match the cached pass");
    }
    const size_t layers = weights_.size();
    MlpGradients g;
    g.weights.resize(layers);
    g.biases.resize(layers);
    Eigen::MatrixXd delta = output_grad;
    for (size_t l = layers; l-- > 0;) {
        g.weights[l] = delta * activations_[l].transpose();
        g.biases[l] = delta.rowwise().sum();
        if (l > 0) {
            // tanh'(z) = 1 - tanh(z)^2, with tanh(z) being the cached activation.
            delta = (weights_[l].transpose() * delta).array() * (1 - activations_[l].array().square());
        }
    }
    return g;
}

void Mlp::apply_gradients(const MlpGradients &grads, double learning_rate) {
    for (size_t l = 0; l < weights_.size(); ++l) {
        weights_[l] -= learning_rate * grads.weights.at(l);
        biases_[l] -= learning_rate * grads.biases.at(l);
    }
}

void Mlp::validate() const {
    if (weights_.size() + 1 != layer_sizes_.size() || biases_.size() != weights_.size()) {
        throw std::invalid_argument("layer count mismatch");
    }
    for (size_t l = 0; l < weights_.size(); ++l) {
        if (static_cast<size_t>(weights_[l].rows()) != layer_sizes_[l + 1] ||
            static_cast<size_t>(weights_[l].cols()) != layer_sizes_[l] ||
            static_cast<size_t>(biases_[l].size()) != layer_sizes_[l + 1]) {
            throw std::invalid_argument("parameter shapes do not chain at layer " + std::to_string(l));
        }
        if (!weights_[l].allFinite() || !biases_[l].allFinite()) {
            throw std::invalid_argument("non-finite parameter at layer " + std::to_string(l));
        }
    }
}

double mse(const Eigen::MatrixXd &outputs, const Eigen::MatrixXd &targets) {
    if (outputs.rows() != targets.rows() || outputs.cols() != targets.cols() || outputs.size() == 0) {
        throw std::invalid_argument("outputs and targets must have the same non-empty shape");
    }
    return (outputs - targets).squaredNorm() / static_cast<double>(outputs.size());
}

MlpTrainResult mlp_train(Mlp &model, const Eigen::MatrixXd &inputs, const Eigen::MatrixXd &targets,
                         const MlpTrainConfig &config) {
    if (inputs.cols() == 0) {
        throw std::invalid_argument("empty training set");
    }
    if (inputs.cols() != targets.cols() || static_cast<size_t>(targets.rows()) != model.layer_sizes().back()) {
        throw std::invalid_argument("targets do not match inputs or network output size");
    }
    if (!(config.learning_rate > 0) || config.batch_size == 0) {
        throw std::invalid_argument("learning rate and batch size must be positive");
    }
    const size_t n = static_cast<size_t>(inputs.cols());
    const double out_dim = static_cast<double>(targets.rows());
    Rng order(mix_seed(config.seed, 1));
    std::vector<Eigen::Index> perm(n);
    for (size_t i = 0; i < n; ++i) {
        perm[i] = static_cast<Eigen::Index>(i);
    }

    MlpTrainResult result;
    auto record = [&](size_t epoch) {
        double loss = mse(model.evaluate(inputs), targets);
        if (!std::isfinite(loss)) {
            throw NumericalError("MLP loss became non-finite at epoch " + std::to_string(epoch));
        }
        result.loss_history.push_back(loss);
    };
    record(0);
    for (size_t epoch = 0; epoch < config.epochs; ++epoch) {
        for (size_t i = n; i > 1; --i) {
            std::swap(perm[i - 1], perm[order.index(i)]);
        }
        for (size_t start = 0; start < n; start += config.batch_size) {
            size_t stop = std::min(n, start + config.batch_size);
            std::vector<Eigen::Index> cols(perm.begin() + start, perm.begin() + stop);
            Eigen::MatrixXd x = inputs(Eigen::all, cols);
            Eigen::MatrixXd y = model.forward(x);
            double scale = 2.0 / (static_cast<double>(stop - start) * out_dim);
            model.apply_gradients(model.backward(scale * (y - targets(Eigen::all, cols))), config.learning_rate);
        }
        model.clear_cache();
        record(epoch + 1);
    }
    return result;
}

}  // namespace qmlkit
