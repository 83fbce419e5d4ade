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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qmlkit/errors.h"
#include "qmlkit/qcluster.h"
#include "test_util.h"

using namespace qmlkit;

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

MatrixXcd kron(const MatrixXcd &a, const MatrixXcd &b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

MatrixXcd ry(double t) {
    MatrixXcd m(2, 2);
    m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
    return m;
}

/// `m` on qubit q of n, identity elsewhere; qubit 0 is the leftmost factor.
MatrixXcd on_qubit(const MatrixXcd &m, int q, int n) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (int i = 0; i < n; ++i) {
        out = kron(out, i == q ? m : MatrixXcd::Identity(2, 2));
    }
    return out;
}

MatrixXcd cnot(int c, int t, int n) {
    int dim = 1 << n;
    MatrixXcd out = MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        int j = (i >> (n - 1 - c)) & 1 ? i ^ (1 << (n - 1 - t)) : i;
        out(j, i) = 1;
    }
    return out;
}

/// Four-qubit tree written out gate by gate.
double dense_oracle_p0(const std::vector<double> &th, const std::vector<double> &x) {
    VectorXcd psi = VectorXcd::Ones(1);
    for (double a : x) {
        VectorXcd q(2);
        q << std::cos(a), std::sin(a);
        psi = kron(psi, q);
    }
    MatrixXcd u = MatrixXcd::Identity(16, 16);
    auto block = [&](int a, int b, double ta, double tb) {
        u = cnot(a, b, 4) * on_qubit(ry(tb), b, 4) * on_qubit(ry(ta), a, 4) * u;
    };
    block(0, 1, th[0], th[1]);
    block(2, 3, th[2], th[3]);
    block(1, 3, th[4], th[5]);
    u = on_qubit(ry(th[6]), 3, 4) * u;
    psi = u * psi;
    double p0 = 0;
    for (int i = 0; i < 16; i += 2) {
        p0 += std::norm(psi(i));
    }
    return p0;
}

std::vector<double> random_angles(size_t n, Rng &rng) {
    return test_util::random_vector(n, rng, 0, std::numbers::pi / 2);
}

std::vector<double> random_thetas(size_t n, Rng &rng) {
    return test_util::random_vector(n, rng, -std::numbers::pi, std::numbers::pi);
}

LabeledDataset iris_pair(int a, int b) {
    return select_classes(iris_dataset(), {a, b});
}

}  // namespace

TEST(ttn_shape, theta_count_and_output) {
    EXPECT_EQ(ttn_theta_count(4), 7u);
    EXPECT_EQ(ttn_theta_count(2), 3u);
    EXPECT_EQ(ttn_theta_count(8), 15u);
    EXPECT_EQ(ttn_output_qubit(4), 3u);
    EXPECT_THROW(ttn_theta_count(3), std::invalid_argument);
    EXPECT_THROW(ttn_theta_count(1), std::invalid_argument);
    EXPECT_EQ(ttn_gates(4, std::vector<double>(7)).size(), 10u);
}

TEST(ttn_forward, identity_circuit) {
    EXPECT_NEAR(ttn_circuit_p0(std::vector<double>(7, 0.0), std::vector<double>(4, 0.0)), 1.0, 1e-15);
}

TEST(ttn_forward, matches_dense_matrix_oracle) {
    Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        auto th = random_thetas(7, rng);
        auto x = random_angles(4, rng);
        EXPECT_NEAR(ttn_circuit_p0(th, x), dense_oracle_p0(th, x), 1e-10);
    }
}

TEST(ttn_forward, discarded_qubits_can_be_traced_out) {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        auto th = random_thetas(7, rng);
        auto x = random_angles(4, rng);
        // First level on the full state, then continue on reduced density matrices.
        StateVector state = angle_encode(x);
        auto gates = ttn_gates(4, th);
        for (size_t g = 0; g < 6; ++g) {
            state.apply(gates[g]);
        }
        MatrixXcd rho13 = MatrixXcd::Zero(4, 4);
        for (int i = 0; i < 16; ++i) {
            for (int j = 0; j < 16; ++j) {
                bool same_discarded = ((i >> 3) & 1) == ((j >> 3) & 1) && ((i >> 1) & 1) == ((j >> 1) & 1);
                if (same_discarded) {
                    int ri = ((i >> 2) & 1) * 2 + (i & 1), rj = ((j >> 2) & 1) * 2 + (j & 1);
                    rho13(ri, rj) += state[i] * std::conj(state[j]);
                }
            }
        }
        MatrixXcd u = cnot(0, 1, 2) * kron(ry(th[4]), ry(th[5]));
        rho13 = u * rho13 * u.adjoint();
        MatrixXcd rho3(2, 2);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                rho3(a, b) = rho13(a, b) + rho13(2 + a, 2 + b);
            }
        }
        rho3 = ry(th[6]) * rho3 * ry(th[6]).adjoint();
        EXPECT_NEAR(rho3(0, 0).real(), ttn_circuit_p0(th, x), 1e-10);
    }
}

TEST(ttn_forward, shot_estimate_within_binomial_band) {
    Rng rng(3);
    int outside = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto th = random_thetas(7, rng);
        auto x = random_angles(4, rng);
        double p = ttn_circuit_p0(th, x);
        double est = ttn_circuit_p0(th, x, Readout::shots(1001), rng);
        outside += std::abs(est - p) > 4 * std::sqrt(p * (1 - p) / 1001) + 1e-12;
    }
    EXPECT_EQ(outside, 0);
}

TEST(ttn_forward, model_checks_dimension) {
    TtnModel m;
    m.num_features = 4;
    m.thetas.assign(7, 0.0);
    m.rescaler = fit_rescaler(std::vector<FeatureVector>{{0, 0, 0}, {1, 1, 1}});
    EXPECT_NO_THROW(m.validate());
    EXPECT_NEAR(ttn_forward(m, std::vector<double>{0, 0, 0}), 1.0, 1e-15);
    EXPECT_THROW(ttn_forward(m, std::vector<double>{0, 0}), std::invalid_argument);
}

TEST(ttn_predict, threshold) {
    EXPECT_EQ(ttn_predict(0.3), 0);
    EXPECT_EQ(ttn_predict(0.9), 1);
    EXPECT_EQ(ttn_predict(0.5), 1);
    EXPECT_THROW(ttn_predict(1.5), std::invalid_argument);
}

TEST(ttn_gradient, parameter_shift_matches_finite_differences) {
    Rng rng(4);
    const double h = 1e-5;
    for (int trial = 0; trial < 50; ++trial) {
        auto th = random_thetas(7, rng);
        auto x = random_angles(4, rng);
        auto g = ttn_gradient(th, x);
        double diff = 0, norm = 0;
        for (size_t i = 0; i < th.size(); ++i) {
            auto plus = th, minus = th;
            plus[i] += h;
            minus[i] -= h;
            double fd = (ttn_circuit_p0(plus, x) - ttn_circuit_p0(minus, x)) / (2 * h);
            diff += (fd - g[i]) * (fd - g[i]);
            norm += g[i] * g[i];
        }
        EXPECT_LE(std::sqrt(diff / norm), 1e-5);
    }
}

TEST(ttn_train, deterministic_per_seed) {
    TrainConfig cfg;
    cfg.epochs = 3;
    cfg.seed = 9;
    auto split = split_for_training(iris_pair(1, 2), cfg);
    auto a = ttn_train(split.train, cfg);
    auto b = ttn_train(split.train, cfg);
    EXPECT_EQ(a.model.thetas, b.model.thetas);
    EXPECT_EQ(a.loss_history, b.loss_history);
    cfg.seed = 10;
    EXPECT_NE(ttn_train(split.train, cfg).model.thetas, a.model.thetas);
}

TEST(ttn_train, iris_pairs) {
    TrainConfig cfg;
    struct Case {
        int a, b;
        double min_accuracy;
    };
    for (Case c : {Case{0, 1, 1.0}, Case{0, 2, 1.0}, Case{1, 2, 0.9}}) {
        auto split = split_for_training(iris_pair(c.a, c.b), cfg);
        EXPECT_EQ(split.train.size(), 70u);
        auto r = ttn_train(split.train, cfg);
        EXPECT_GE(ttn_accuracy(r.model, split.test), c.min_accuracy) << c.a << " vs " << c.b;
        EXPECT_LE(r.loss_history.back(), r.loss_history.front());
        EXPECT_EQ(r.loss_history.size(), cfg.epochs + 1);
        EXPECT_EQ(r.discrete_loss_history.size(), cfg.epochs + 1);
    }
}

TEST(ttn_train, errors) {
    TrainConfig cfg;
    EXPECT_THROW(ttn_train(iris_dataset(), cfg), DataError);
    auto pair = iris_pair(0, 1);
    cfg.batch_size = 1000;
    EXPECT_THROW(ttn_train(pair, cfg), std::invalid_argument);
    cfg = TrainConfig{};
    cfg.learning_rate = 0;
    EXPECT_THROW(ttn_train(pair, cfg), std::invalid_argument);
    cfg = TrainConfig{};
    cfg.train_fraction = 1;
    EXPECT_THROW(split_for_training(pair, cfg), std::invalid_argument);
}

TEST(shot_curve, converges_to_exact_accuracy) {
    TrainConfig cfg;
    const std::vector<uint64_t> shots{1, 3, 5, 9, 21, 55, 201, 1001};
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}}) {
        auto split = split_for_training(iris_pair(a, b), cfg);
        auto model = ttn_train(split.train, cfg).model;
        auto curve = shot_accuracy_curve(model, split.test, shots, 50, 1);
        EXPECT_GE(curve.back(), curve.front());
        if (a == 0) {
            EXPECT_DOUBLE_EQ(curve.back(), 1.0);
        }
        auto expected = expected_shot_accuracy(model, split.test, {1, 1001, 100001});
        EXPECT_NEAR(expected[0], curve[0], 0.03);
        EXPECT_NEAR(expected[2], ttn_accuracy(model, split.test), 1e-6);
    }
}

TEST(shot_curve, rejects_even_shot_counts) {
    TrainConfig cfg;
    cfg.epochs = 1;
    auto split = split_for_training(iris_pair(0, 1), cfg);
    auto model = ttn_train(split.train, cfg).model;
    EXPECT_THROW(shot_accuracy_curve(model, split.test, {1, 4}, 5, 0), std::invalid_argument);
    EXPECT_THROW(expected_shot_accuracy(model, split.test, {2}), std::invalid_argument);
}

TEST(multiclass, argmax) {
    EXPECT_EQ(argmax_class(std::vector<double>{0.9, 0.2, 0.3}), 0);
    EXPECT_EQ(argmax_class(std::vector<double>{0.2, 0.7, 0.7}), 1);
    EXPECT_THROW(argmax_class(std::vector<double>{}), std::invalid_argument);
}

TEST(multiclass, argmax_invariant_under_increasing_maps) {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = test_util::random_vector(3, rng, 0, 1);
        int base = argmax_class(p);
        for (auto f : {+[](double v) { return v * v * v; }, +[](double v) { return std::exp(3 * v) - 7; },
                       +[](double v) { return std::atan(v - 0.5); }}) {
            std::vector<double> q;
            for (double v : p) {
                q.push_back(f(v));
            }
            EXPECT_EQ(argmax_class(q), base);
        }
    }
}

TEST(multiclass, iris_confusion) {
    TrainConfig cfg;
    auto split = split_for_training(iris_dataset(), cfg);
    auto r = multiclass_train(split.train, cfg);
    EXPECT_NO_THROW(r.model.validate());
    EXPECT_LT(r.loss_history.back(), r.loss_history.front());
    std::vector<int> pred;
    for (const auto &x : split.test.vectors) {
        pred.push_back(multiclass_predict(r.model, x));
    }
    auto cm = ConfusionMatrix::from_predictions(split.test.labels, pred, 3).normalized();
    EXPECT_EQ(cm.rows()[0], (std::vector<double>{1, 0, 0}));
    EXPECT_GE(cm.at(2, 2), 0.85);
}

TEST(multiclass, deterministic_and_errors) {
    TrainConfig cfg;
    cfg.epochs = 2;
    auto a = multiclass_train(iris_dataset(), cfg);
    auto b = multiclass_train(iris_dataset(), cfg);
    for (size_t c = 0; c < 3; ++c) {
        EXPECT_EQ(a.model.branches[c].thetas, b.model.branches[c].thetas);
    }
    MulticlassTtnModel broken = a.model;
    broken.branches.pop_back();
    broken.branches.pop_back();
    EXPECT_THROW(broken.validate(), std::invalid_argument);
    EXPECT_THROW(multiclass_predict(a.model, std::vector<double>{1, 2}), std::invalid_argument);
}
