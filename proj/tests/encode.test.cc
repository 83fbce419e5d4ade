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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_util.h"

using namespace qmlkit;

namespace {

// Reduced single-qubit density matrix by explicit partial trace.
Matrix2 reduced_state(const StateVector &s, size_t qubit) {
    Matrix2 rho = Matrix2::Zero();
    uint64_t mask = s.qubit_mask(qubit);
    for (uint64_t i = 0; i < s.size(); ++i) {
        for (uint64_t j = 0; j < s.size(); ++j) {
            if ((i & ~mask) != (j & ~mask)) {
                continue;
            }
            rho((i & mask) ? 1 : 0, (j & mask) ? 1 : 0) += s[i] * std::conj(s[j]);
        }
    }
    return rho;
}

}  // namespace

TEST(amplitude_encode, basis_vector) {
    const double v[] = {1, 0, 0, 0};
    StateVector s = amplitude_encode(v);
    EXPECT_EQ(s.num_qubits(), 2u);
    EXPECT_EQ(s[0], Complex(1));
}

TEST(amplitude_encode, uniform_vector) {
    const double v[] = {1, 1, 1, 1};
    StateVector s = amplitude_encode(v);
    for (size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(s[i].real(), 0.5, 1e-15);
    }
}

TEST(amplitude_encode, l2_normalization) {
    // ||(3,4)|| = 5.
    const double v[] = {3, 4};
    StateVector s = amplitude_encode(v);
    EXPECT_EQ(s.num_qubits(), 1u);
    EXPECT_NEAR(s[0].real(), 0.6, 1e-15);
    EXPECT_NEAR(s[1].real(), 0.8, 1e-15);
}

TEST(amplitude_encode, pads_to_power_of_two) {
    const double v[] = {1, 2, 2};
    StateVector s = amplitude_encode(v);
    EXPECT_EQ(s.num_qubits(), 2u);
    EXPECT_NEAR(s[2].real(), 2.0 / 3.0, 1e-15);
    EXPECT_EQ(s[3], Complex(0));
    const double scalar[] = {-2};
    EXPECT_EQ(amplitude_encode(scalar).num_qubits(), 1u);
}

TEST(amplitude_encode, rejects_zero_vector) {
    const double v[] = {0, 0};
    EXPECT_THROW(amplitude_encode(v), std::invalid_argument);
}

TEST(amplitude_encode, scale_invariant) {
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
        auto v = test_util::random_vector(1 + rng.index(16), rng);
        double c = rng.uniform(0.01, 100);
        std::vector<double> w(v);
        for (auto &x : w) {
            x *= c;
        }
        StateVector a = amplitude_encode(v), b = amplitude_encode(w);
        EXPECT_NEAR(std::norm(inner_product(a, b)), 1, 1e-12);
        EXPECT_LT(std::abs(a.norm_squared() - 1), 1e-10);
    }
}

TEST(rescaler, endpoint_and_midpoint) {
    std::vector<FeatureVector> data{{0}, {10}, {3}};
    RescaleParams p = fit_rescaler(data);
    const double ten[] = {10}, five[] = {5}, zero[] = {0};
    EXPECT_DOUBLE_EQ(p.apply(ten)[0], std::numbers::pi / 2);
    EXPECT_DOUBLE_EQ(p.apply(five)[0], std::numbers::pi / 4);
    EXPECT_DOUBLE_EQ(p.apply(zero)[0], 0);
}

TEST(rescaler, clips_out_of_range) {
    std::vector<FeatureVector> data{{0}, {10}};
    RescaleParams p = fit_rescaler(data);
    const double hi[] = {12}, lo[] = {-1};
    EXPECT_DOUBLE_EQ(p.apply(hi)[0], std::numbers::pi / 2);
    EXPECT_DOUBLE_EQ(p.apply(lo)[0], 0);
}

TEST(rescaler, constant_feature_maps_to_midpoint) {
    std::vector<FeatureVector> data{{1, 4}, {2, 4}};
    RescaleParams p = fit_rescaler(data);
    EXPECT_EQ(p.constant_features(), std::vector<size_t>{1});
    const double row[] = {1.5, 7};
    EXPECT_DOUBLE_EQ(p.apply(row)[1], std::numbers::pi / 4);
}

TEST(rescaler, errors) {
    EXPECT_THROW(fit_rescaler(std::vector<FeatureVector>{}), std::invalid_argument);
    std::vector<FeatureVector> ragged{{1, 2}, {1}};
    EXPECT_THROW(fit_rescaler(ragged), std::invalid_argument);
}

TEST(angle_encode, examples) {
    const double zeros[] = {0, 0};
    EXPECT_EQ(angle_encode(zeros)[0], Complex(1));
    const double half_pi[] = {std::numbers::pi / 2};
    EXPECT_NEAR(angle_encode(half_pi)[1].real(), 1, 1e-15);
    EXPECT_NEAR(angle_encode(half_pi)[0].real(), 0, 1e-15);
}

TEST(angle_encode, quarter_pi_is_uniform) {
    // Tensor-product oracle: (cos, sin) (x) (cos, sin) with cos = sin = 1/sqrt(2).
    const double x[] = {std::numbers::pi / 4, std::numbers::pi / 4};
    StateVector s = angle_encode(x);
    const double c = std::cos(std::numbers::pi / 4), sn = std::sin(std::numbers::pi / 4);
    const double oracle[] = {c * c, c * sn, sn * c, sn * sn};
    for (size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(s[i].real(), oracle[i], 1e-15);
        EXPECT_NEAR(s[i].real(), 0.5, 1e-15);
    }
}

TEST(angle_encode, rejects_out_of_range) {
    const double x[] = {0.1, 2.0};
    EXPECT_THROW(angle_encode(x), std::invalid_argument);
    const double nan[] = {std::nan("")};
    EXPECT_THROW(angle_encode(nan), std::invalid_argument);
}

TEST(angle_encode, output_is_product_state) {
    Rng rng(77);
    for (int t = 0; t < 50; ++t) {
        auto x = test_util::random_vector(1 + rng.index(5), rng, 0, std::numbers::pi / 2);
        StateVector s = angle_encode(x);
        EXPECT_LT(std::abs(s.norm_squared() - 1), 1e-10);
        for (size_t q = 0; q < x.size(); ++q) {
            Matrix2 rho = reduced_state(s, q);
            double bx = 2 * rho(0, 1).real(), by = -2 * rho(0, 1).imag(), bz = (rho(0, 0) - rho(1, 1)).real();
            EXPECT_NEAR(std::sqrt(bx * bx + by * by + bz * bz), 1, 1e-10);
        }
    }
}
