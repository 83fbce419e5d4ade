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

#include "qmlkit/ttn.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qmlkit/errors.h"

namespace qmlkit {

namespace {

void check_shot_counts(const std::vector<uint64_t> &shot_counts) {
    for (uint64_t s : shot_counts) {
        if (s % 2 == 0) {
            throw std::invalid_argument("shot counts must be odd, got " + std::to_string(s));
        }
    }
}

void check_labeled(const LabeledDataset &test) {
    if (test.size() == 0 || test.labels.size() != test.size()) {
        throw std::invalid_argument("shot curve needs a labeled, non-empty test set");
    }
}

/// P(Binomial(shots, p) >= (shots + 1) / 2) for odd shots.
double majority_probability(uint64_t shots, double p) {
    if (p <= 0 || p >= 1) {
        return p >= 1 ? 1.0 : 0.0;
    }
    double n = static_cast<double>(shots);
    double total = 0;
    for (uint64_t k = (shots + 1) / 2; k <= shots; ++k) {
        double kd = static_cast<double>(k);
        total += std::exp(std::lgamma(n + 1) - std::lgamma(kd + 1) - std::lgamma(n - kd + 1) + kd * std::log(p) +
                          (n - kd) * std::log1p(-p));
    }
    return std::min(total, 1.0);
}

void check_num_features(size_t num_features) {
    if (num_features < 2 || !std::has_single_bit(num_features)) {
        throw std::invalid_argument("TTN width must be a power of two >= 2, got " + std::to_string(num_features));
    }
}

void check_thetas(size_t num_features, std::span<const double> thetas) {
    if (thetas.size() != ttn_theta_count(num_features)) {
        throw std::invalid_argument("expected " + std::to_string(ttn_theta_count(num_features)) + " angles, got " +
                                    std::to_string(thetas.size()));
    }
    for (double t : thetas) {
        if (!std::isfinite(t)) {
            throw std::invalid_argument("non-finite TTN angle");
        }
    }
}

std::vector<size_t> permutation(size_t n, Rng &rng) {
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    for (size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[rng.index(i)]);
    }
    return order;
}

std::vector<double> random_thetas(size_t count, Rng &rng) {
    std::vector<double> thetas(count);
    for (double &t : thetas) {
        t = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return thetas;
}

size_t tree_width(size_t dimension) {
    return std::max<size_t>(2, std::bit_ceil(dimension));
}

std::vector<FeatureVector> encode_rows(const TtnModel &model, const LabeledDataset &data) {
    std::vector<FeatureVector> rows;
    rows.reserve(data.size());
    for (const auto &x : data.vectors) {
        rows.push_back(model.encode_angles(x));
    }
    return rows;
}

std::vector<double> softmax(std::span<const double> z) {
    double top = *std::max_element(z.begin(), z.end());
    std::vector<double> s(z.size());
    double total = 0;
    for (size_t i = 0; i < z.size(); ++i) {
        s[i] = std::exp(z[i] - top);
        total += s[i];
    }
    for (double &v : s) {
        v /= total;
    }
    return s;
}

}  // namespace

size_t ttn_theta_count(size_t num_features) {
    check_num_features(num_features);
    return 2 * (num_features - 1) + 1;
}

size_t ttn_output_qubit(size_t num_features) {
    check_num_features(num_features);
    return num_features - 1;
}

std::vector<GateOp> ttn_gates(size_t num_features, std::span<const double> thetas) {
    check_thetas(num_features, thetas);
    std::vector<GateOp> gates;
    std::vector<size_t> alive(num_features);
    for (size_t q = 0; q < num_features; ++q) {
        alive[q] = q;
    }
    size_t t = 0;
    while (alive.size() > 1) {
        std::vector<size_t> next;
        for (size_t i = 0; i + 1 < alive.size(); i += 2) {
            size_t a = alive[i], b = alive[i + 1];
            gates.push_back(GateOp::ry(a, thetas[t++]));
            gates.push_back(GateOp::ry(b, thetas[t++]));
            gates.push_back(GateOp::cnot(a, b));
            next.push_back(b);
        }
        alive = std::move(next);
    }
    gates.push_back(GateOp::ry(alive[0], thetas[t]));
    return gates;
}

StateVector ttn_state(std::span<const double> thetas, std::span<const double> angles) {
    check_num_features(angles.size());
    StateVector state = angle_encode(angles);
    for (const GateOp &g : ttn_gates(angles.size(), thetas)) {
        state.apply(g);
    }
    return state;
}

double ttn_circuit_p0(std::span<const double> thetas, std::span<const double> angles, Readout readout, Rng &rng) {
    StateVector state = ttn_state(thetas, angles);
    double p0 = std::clamp(measure_qubit_probability(state, ttn_output_qubit(angles.size()), 0), 0.0, 1.0);
    if (readout.is_exact()) {
        return p0;
    }
    return static_cast<double>(rng.binomial(readout.shot_count(), p0)) / static_cast<double>(readout.shot_count());
}

double ttn_circuit_p0(std::span<const double> thetas, std::span<const double> angles) {
    Rng unused(0);
    return ttn_circuit_p0(thetas, angles, Readout::exact(), unused);
}

std::vector<double> ttn_gradient(std::span<const double> thetas, std::span<const double> angles) {
    std::vector<double> shifted(thetas.begin(), thetas.end());
    std::vector<double> grad(thetas.size());
    for (size_t i = 0; i < thetas.size(); ++i) {
        shifted[i] = thetas[i] + std::numbers::pi / 2;
        double plus = ttn_circuit_p0(shifted, angles);
        shifted[i] = thetas[i] - std::numbers::pi / 2;
        double minus = ttn_circuit_p0(shifted, angles);
        shifted[i] = thetas[i];
        grad[i] = (plus - minus) / 2;
    }
    return grad;
}

FeatureVector TtnModel::encode_angles(std::span<const double> x) const {
    if (x.size() != rescaler.dimension()) {
        throw std::invalid_argument("feature dimension " + std::to_string(x.size()) + " does not match model (" +
                                    std::to_string(rescaler.dimension()) + ")");
    }
    FeatureVector angles = rescaler.apply(x);
    angles.resize(num_features, 0.0);
    return angles;
}

void TtnModel::validate() const {
    check_thetas(num_features, thetas);
    if (rescaler.dimension() == 0 || rescaler.dimension() > num_features ||
        rescaler.max.size() != rescaler.min.size()) {
        throw std::invalid_argument("TTN rescaler does not fit the tree width");
    }
}

double ttn_forward(const TtnModel &model, std::span<const double> x, Readout readout, Rng &rng) {
    FeatureVector angles = model.encode_angles(x);
    return ttn_circuit_p0(model.thetas, angles, readout, rng);
}

double ttn_forward(const TtnModel &model, std::span<const double> x) {
    Rng unused(0);
    return ttn_forward(model, x, Readout::exact(), unused);
}

int ttn_predict(double p0) {
    if (!(p0 >= 0 && p0 <= 1)) {
        throw std::invalid_argument("probability out of range");
    }
    return p0 < 0.5 ? 0 : 1;
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0) || !std::isfinite(learning_rate)) {
        throw std::invalid_argument("learning rate must be positive");
    }
    if (batch_size == 0) {
        throw std::invalid_argument("batch size must be positive");
    }
    if (!(train_fraction > 0 && train_fraction < 1)) {
        throw std::invalid_argument("train fraction must lie in (0, 1)");
    }
}

DatasetSplit split_for_training(const LabeledDataset &data, const TrainConfig &config) {
    config.validate();
    Rng rng = Rng(config.seed).child(2);
    return stratified_split(data, config.train_fraction, rng);
}

TtnTrainResult ttn_train(const LabeledDataset &train, const TrainConfig &config) {
    config.validate();
    train.validate();
    if (!train.is_labeled() || train.class_count != 2) {
        throw DataError("TTN training needs binary labels");
    }
    if (config.batch_size > train.size()) {
        throw std::invalid_argument("batch size exceeds training set size");
    }

    Rng root(config.seed);
    Rng init = root.child(0);
    Rng order = root.child(1);

    TtnTrainResult result;
    TtnModel &model = result.model;
    model.rescaler = fit_rescaler(train.vectors);
    model.num_features = tree_width(train.dimension());
    model.thetas = random_thetas(ttn_theta_count(model.num_features), init);
    std::vector<FeatureVector> rows = encode_rows(model, train);

    auto record = [&] {
        double smooth = 0, discrete = 0;
        for (size_t i = 0; i < rows.size(); ++i) {
            double p0 = ttn_circuit_p0(model.thetas, rows[i]);
            double y = train.labels[i];
            smooth += (p0 - y) * (p0 - y);
            discrete += (ttn_predict(p0) - y) * (ttn_predict(p0) - y);
        }
        result.loss_history.push_back(smooth / rows.size());
        result.discrete_loss_history.push_back(discrete / rows.size());
    };

    record();
    std::vector<double> grad(model.thetas.size());
    for (size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::vector<size_t> perm = permutation(rows.size(), order);
        for (size_t start = 0; start < perm.size(); start += config.batch_size) {
            size_t stop = std::min(perm.size(), start + config.batch_size);
            std::fill(grad.begin(), grad.end(), 0.0);
            for (size_t j = start; j < stop; ++j) {
                size_t i = perm[j];
                double residual = ttn_circuit_p0(model.thetas, rows[i]) - train.labels[i];
                std::vector<double> g = ttn_gradient(model.thetas, rows[i]);
                for (size_t t = 0; t < grad.size(); ++t) {
                    grad[t] += 2 * residual * g[t];
                }
            }
            double scale = config.learning_rate / static_cast<double>(stop - start);
            for (size_t t = 0; t < grad.size(); ++t) {
                model.thetas[t] -= scale * grad[t];
            }
        }
        record();
        if (!std::isfinite(result.loss_history.back())) {
            throw NumericalError("TTN training diverged at epoch " + std::to_string(epoch + 1));
        }
    }
    return result;
}

double ttn_accuracy(const TtnModel &model, const LabeledDataset &data) {
    if (data.size() == 0) {
        throw std::invalid_argument("empty evaluation set");
    }
    size_t correct = 0;
    for (size_t i = 0; i < data.size(); ++i) {
        correct += ttn_predict(ttn_forward(model, data.vectors[i])) == data.labels.at(i);
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::vector<double> shot_accuracy_curve(const TtnModel &model, const LabeledDataset &test,
                                        const std::vector<uint64_t> &shot_counts, size_t trials, uint64_t seed) {
    if (trials == 0) {
        throw std::invalid_argument("need at least one trial");
    }
    check_shot_counts(shot_counts);
    check_labeled(test);
    std::vector<double> exact;
    for (const auto &x : test.vectors) {
        exact.push_back(ttn_forward(model, x));
    }
    Rng root(seed);
    std::vector<double> curve;
    for (size_t si = 0; si < shot_counts.size(); ++si) {
        double shots = static_cast<double>(shot_counts[si]);
        double total = 0;
        for (size_t t = 0; t < trials; ++t) {
            Rng rng = root.child(si).child(t);
            size_t correct = 0;
            for (size_t i = 0; i < exact.size(); ++i) {
                double p0_hat = static_cast<double>(rng.binomial(shot_counts[si], exact[i])) / shots;
                correct += ttn_predict(p0_hat) == test.labels[i];
            }
            total += static_cast<double>(correct) / static_cast<double>(exact.size());
        }
        curve.push_back(total / static_cast<double>(trials));
    }
    return curve;
}

std::vector<double> expected_shot_accuracy(const TtnModel &model, const LabeledDataset &test,
                                           const std::vector<uint64_t> &shot_counts) {
    check_shot_counts(shot_counts);
    check_labeled(test);
    std::vector<double> curve;
    for (uint64_t s : shot_counts) {
        double total = 0;
        for (size_t i = 0; i < test.size(); ++i) {
            // Label 1 is predicted when at least half of the shots read 0.
            double p_one = majority_probability(s, ttn_forward(model, test.vectors[i]));
            total += test.labels[i] == 1 ? p_one : 1 - p_one;
        }
        curve.push_back(total / static_cast<double>(test.size()));
    }
    return curve;
}

void MulticlassTtnModel::validate() const {
    if (branches.size() < 2) {
        throw std::invalid_argument("multiclass model needs at least two branches");
    }
    for (const auto &b : branches) {
        b.validate();
        if (b.num_features != branches[0].num_features || b.rescaler.min != branches[0].rescaler.min ||
            b.rescaler.max != branches[0].rescaler.max) {
            throw std::invalid_argument("multiclass branches must share width and rescaler");
        }
    }
}

int argmax_class(std::span<const double> scores) {
    if (scores.empty()) {
        throw std::invalid_argument("argmax of an empty list");
    }
    return static_cast<int>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

std::vector<double> multiclass_probabilities(const MulticlassTtnModel &model, std::span<const double> x) {
    if (model.branches.empty()) {
        throw std::invalid_argument("multiclass model has no branches");
    }
    FeatureVector angles = model.branches[0].encode_angles(x);
    std::vector<double> p;
    for (const auto &b : model.branches) {
        p.push_back(ttn_circuit_p0(b.thetas, angles));
    }
    return p;
}

int multiclass_predict(const MulticlassTtnModel &model, std::span<const double> x) {
    return argmax_class(multiclass_probabilities(model, x));
}

MulticlassTrainResult multiclass_train(const LabeledDataset &train, const TrainConfig &config) {
    config.validate();
    train.validate();
    if (!train.is_labeled() || train.class_count < 2) {
        throw DataError("multiclass training needs labels from at least two classes");
    }
    if (config.batch_size > train.size()) {
        throw std::invalid_argument("batch size exceeds training set size");
    }

    Rng root(config.seed);
    Rng init = root.child(0);
    Rng order = root.child(1);

    MulticlassTrainResult result;
    auto &branches = result.model.branches;
    TtnModel proto;
    proto.rescaler = fit_rescaler(train.vectors);
    proto.num_features = tree_width(train.dimension());
    for (size_t c = 0; c < train.class_count; ++c) {
        Rng branch_rng = init.child(c);
        branches.push_back(proto);
        branches.back().thetas = random_thetas(ttn_theta_count(proto.num_features), branch_rng);
    }
    std::vector<FeatureVector> rows = encode_rows(proto, train);
    const size_t classes = branches.size();

    auto branch_p0 = [&](const FeatureVector &angles) {
        std::vector<double> p(classes);
        for (size_t c = 0; c < classes; ++c) {
            p[c] = ttn_circuit_p0(branches[c].thetas, angles);
        }
        return p;
    };
    auto record = [&] {
        double loss = 0;
        for (size_t i = 0; i < rows.size(); ++i) {
            loss -= std::log(softmax(branch_p0(rows[i]))[train.labels[i]]);
        }
        result.loss_history.push_back(loss / rows.size());
    };

    record();
    const size_t theta_count = proto.num_features * 2 - 1;
    std::vector<std::vector<double>> grad(classes, std::vector<double>(theta_count));
    for (size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::vector<size_t> perm = permutation(rows.size(), order);
        for (size_t start = 0; start < perm.size(); start += config.batch_size) {
            size_t stop = std::min(perm.size(), start + config.batch_size);
            for (auto &g : grad) {
                std::fill(g.begin(), g.end(), 0.0);
            }
            for (size_t j = start; j < stop; ++j) {
                size_t i = perm[j];
                std::vector<double> s = softmax(branch_p0(rows[i]));
                for (size_t c = 0; c < classes; ++c) {
                    double weight = s[c] - (static_cast<int>(c) == train.labels[i] ? 1.0 : 0.0);
                    std::vector<double> g = ttn_gradient(branches[c].thetas, rows[i]);
                    for (size_t t = 0; t < theta_count; ++t) {
                        grad[c][t] += weight * g[t];
                    }
                }
            }
            double scale = config.learning_rate / static_cast<double>(stop - start);
            for (size_t c = 0; c < classes; ++c) {
                for (size_t t = 0; t < theta_count; ++t) {
                    branches[c].thetas[t] -= scale * grad[c][t];
                }
            }
        }
        record();
        if (!std::isfinite(result.loss_history.back())) {
            throw NumericalError("multiclass training diverged at epoch " + std::to_string(epoch + 1));
        }
    }
    return result;
}

}  // namespace qmlkit
