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

#include <gtest/gtest.h>

#include <cmath>

#include "qmlkit/errors.h"

using namespace qmlkit;
using Eigen::MatrixXd;

namespace {

MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
    MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        m.data()[i] = rng.uniform(-1, 1);
    }
    return m;
}

Mlp random_model(const std::vector<size_t> &sizes, Rng &rng) {
    Mlp m = Mlp::glorot(sizes, rng);
    for (size_t l = 0; l < m.layer_count(); ++l) {
        m.biases(l) = random_matrix(m.biases(l).size(), 1, rng);
    }
    return m;
}

/// Scalar-loop evaluation, independent of the Eigen expression path.
std::vector<double> loop_oracle(const Mlp &m, std::vector<double> a) {
    for (size_t l = 0; l < m.layer_count(); ++l) {
        const MatrixXd &w = m.weights(l);
        std::vector<double> z(w.rows());
        for (Eigen::Index i = 0; i < w.rows(); ++i) {
            double s = m.biases(l)(i);
            for (Eigen::Index j = 0; j < w.cols(); ++j) {
                s += w(i, j) * a[j];
            }
            z[i] = l + 1 < m.layer_count() ? std::tanh(s) : s;
        }
        a = z;
    }
    return a;
}

double half_sq_loss(const Mlp &m, const MatrixXd &x, const MatrixXd &t) {
    return 0.5 * (m.evaluate(x) - t).squaredNorm();
}

}  // namespace

TEST(mlp_forward, zero_model_outputs_zero) {
    Mlp m({3, 5, 2});
    EXPECT_EQ(m.evaluate(MatrixXd::Ones(3, 1)), MatrixXd::Zero(2, 1));
    EXPECT_EQ(m.parameter_count(), 3u * 5 + 5 + 5 * 2 + 2);
}

TEST(mlp_forward, single_layer_is_matrix_multiply) {
    Rng rng(1);
    Mlp m({4, 3});
    m.weights(0) = random_matrix(3, 4, rng);
    MatrixXd x = random_matrix(4, 1, rng);
    EXPECT_TRUE(m.evaluate(x).isApprox(m.weights(0) * x, 1e-15));
}

TEST(mlp_forward, matches_loop_oracle) {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        Mlp m = random_model({3, 7, 6, 2}, rng);
        MatrixXd x = random_matrix(3, 1, rng);
        MatrixXd y = m.evaluate(x);
        auto oracle = loop_oracle(m, {x(0), x(1), x(2)});
        for (int i = 0; i < 2; ++i) {
            EXPECT_NEAR(y(i), oracle[i], 1e-12);
        }
        EXPECT_TRUE(m.forward(x).isApprox(y, 0));
    }
}

TEST(mlp_forward, rejects_wrong_input_size) {
    Mlp m({3, 2});
    EXPECT_THROW(m.evaluate(MatrixXd::Ones(2, 1)), std::invalid_argument);
    EXPECT_THROW(Mlp({3}), std::invalid_argument);
    EXPECT_THROW(Mlp({3, 0, 1}), std::invalid_argument);
}

TEST(mlp_backward, matches_finite_differences) {
    Rng rng(3);
    const double h = 1e-6;
    for (int trial = 0; trial < 20; ++trial) {
        Mlp m = random_model({3, 5, 4, 2}, rng);
        MatrixXd x = random_matrix(3, 4, rng);
        MatrixXd t = random_matrix(2, 4, rng);
        MlpGradients g = m.backward(m.forward(x) - t);
        double diff = 0, norm = 0;
        auto check = [&](double &param, double analytic) {
            double saved = param;
            param = saved + h;
            double plus = half_sq_loss(m, x, t);
            param = saved - h;
            double minus = half_sq_loss(m, x, t);
            param = saved;
            double fd = (plus - minus) / (2 * h);
            diff += (fd - analytic) * (fd - analytic);
            norm += analytic * analytic;
        };
        for (size_t l = 0; l < m.layer_count(); ++l) {
            for (Eigen::Index i = 0; i < m.weights(l).size(); ++i) {
                check(m.weights(l).data()[i], g.weights[l].data()[i]);
            }
            for (Eigen::Index i = 0; i < m.biases(l).size(); ++i) {
                check(m.biases(l)(i), g.biases[l](i));
            }
        }
        EXPECT_LE(std::sqrt(diff / norm), 1e-6);
    }
}

TEST(mlp_backward, linear_least_squares_closed_form) {
    Rng rng(4);
    Mlp m({3, 2});
    m.weights(0) = random_matrix(2, 3, rng);
    m.biases(0) = random_matrix(2, 1, rng);
    MatrixXd x = random_matrix(3, 10, rng);
    MatrixXd t = random_matrix(2, 10, rng);
    MatrixXd r = m.weights(0) * x + m.biases(0).replicate(1, 10) - t;
    const double n = static_cast<double>(r.size());
    MlpGradients g = m.backward(2 * (m.forward(x) - t) / n);
    EXPECT_TRUE(g.weights[0].isApprox(2 * r * x.transpose() / n, 1e-12));
    EXPECT_TRUE(g.biases[0].isApprox(2 * r.rowwise().sum() / n, 1e-12));
}

TEST(mlp_backward, zero_upstream_gives_zero_gradients) {
    Rng rng(5);
    Mlp m = random_model({3, 4, 2}, rng);
    m.forward(random_matrix(3, 5, rng));
    MlpGradients g = m.backward(MatrixXd::Zero(2, 5));
    for (size_t l = 0; l < m.layer_count(); ++l) {
        EXPECT_TRUE(g.weights[l].isZero(0));
        EXPECT_TRUE(g.biases[l].isZero(0));
    }
}

TEST(mlp_backward, requires_cached_pass) {
    Mlp m({2, 2});
    EXPECT_THROW(m.backward(MatrixXd::Zero(2, 1)), std::logic_error);
    m.forward(MatrixXd::Zero(2, 1));
    EXPECT_THROW(m.backward(MatrixXd::Zero(2, 3)), std::invalid_argument);
    m.clear_cache();
    EXPECT_FALSE(m.has_cached_pass());
    EXPECT_THROW(m.backward(MatrixXd::Zero(2, 1)), std::logic_error);
}

TEST(mlp_train, one_small_step_descends) {
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        Mlp m = random_model({3, 8, 3}, rng);
        MatrixXd x = random_matrix(3, 16, rng);
        MatrixXd t = random_matrix(3, 16, rng);
        double before = mse(m.evaluate(x), t);
        MlpTrainConfig cfg;
        cfg.learning_rate = 1e-4;
        cfg.batch_size = 16;
        cfg.epochs = 1;
        auto r = mlp_train(m, x, t, cfg);
        EXPECT_DOUBLE_EQ(r.loss_history.front(), before);
        EXPECT_LT(r.loss_history.back(), before);
    }
}

TEST(mlp_train, learns_doubling) {
    Rng rng(7);
    MatrixXd x(1, 200);
    for (int i = 0; i < 200; ++i) {
        x(0, i) = rng.uniform(-1, 1);
    }
    Mlp m = Mlp::glorot({1, 16, 1}, rng);
    MlpTrainConfig cfg;
    cfg.learning_rate = 0.05;
    cfg.batch_size = 20;
    cfg.epochs = 4000;
    auto r = mlp_train(m, x, 2 * x, cfg);
    EXPECT_LT(r.loss_history.back(), 1e-4);
}

TEST(mlp_train, constant_target) {
    Rng rng(8);
    MatrixXd x = random_matrix(2, 64, rng);
    MatrixXd t = MatrixXd::Constant(1, 64, 0.7);
    Mlp m = Mlp::glorot({2, 8, 1}, rng);
    MlpTrainConfig cfg;
    cfg.learning_rate = 0.1;
    cfg.epochs = 3000;
    mlp_train(m, x, t, cfg);
    EXPECT_NEAR(m.evaluate(MatrixXd::Zero(2, 1))(0), 0.7, 1e-3);
}

TEST(mlp_train, deterministic_per_seed) {
    MatrixXd x, t;
    Rng data(9);
    x = random_matrix(3, 50, data);
    t = random_matrix(2, 50, data);
    auto run = [&](uint64_t seed) {
        Rng init(seed);
        Mlp m = Mlp::glorot({3, 6, 2}, init);
        MlpTrainConfig cfg;
        cfg.seed = seed;
        cfg.epochs = 5;
        mlp_train(m, x, t, cfg);
        return m;
    };
    Mlp a = run(1), b = run(1), c = run(2);
    EXPECT_EQ(a.weights(0), b.weights(0));
    EXPECT_EQ(a.biases(1), b.biases(1));
    EXPECT_NE(a.weights(0), c.weights(0));
}

TEST(mlp_train, errors) {
    Mlp m({1, 1});
    MlpTrainConfig cfg;
    EXPECT_THROW(mlp_train(m, MatrixXd(1, 0), MatrixXd(1, 0), cfg), std::invalid_argument);
    EXPECT_THROW(mlp_train(m, MatrixXd::Ones(1, 3), MatrixXd::Ones(2, 3), cfg), std::invalid_argument);
    Rng rng(10);
    Mlp big = Mlp::glorot({1, 4, 1}, rng);
    cfg.learning_rate = 1e6;
    EXPECT_THROW(mlp_train(big, MatrixXd::Ones(1, 8), MatrixXd::Constant(1, 8, 5.0), cfg), NumericalError);
}
