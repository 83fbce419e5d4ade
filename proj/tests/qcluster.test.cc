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

#include "qmlkit/qcluster.h"

#include <gtest/gtest.h>

#include <cmath>

using namespace qmlkit;

namespace {

struct BlobFixture {
    LabeledDataset train;
    LabeledDataset test;
};

BlobFixture blob_fixture(uint64_t seed) {
    BlobSpec spec;
    spec.per_class = 20;
    Rng rng(seed);
    BlobFixture f;
    f.train = make_blobs(spec, rng);
    spec.per_class = 10;
    f.test = make_blobs(spec, rng);
    return f;
}

QuantumSettings budget(uint64_t n_st, size_t n_qma) {
    QuantumSettings s;
    s.swap_test_shots = n_st;
    s.qma_repetitions = n_qma;
    return s;
}

}  // namespace

TEST(confusion_matrix, normalization) {
    ConfusionMatrix m = ConfusionMatrix::from_predictions({0, 0, 1, 1, 1, 2}, {0, 1, 1, 1, 2, 2}, 3);
    ConfusionMatrix n = m.normalized();
    EXPECT_TRUE(n.is_normalized());
    for (const auto &row : n.rows()) {
        double s = 0;
        for (double v : row) {
            s += v;
        }
        EXPECT_NEAR(s, 1, 1e-9);
    }
    EXPECT_DOUBLE_EQ(n.at(1, 1), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(m.trace(), 4);
    EXPECT_DOUBLE_EQ(m.mean_diagonal(), (0.5 + 2.0 / 3.0 + 1.0) / 3);
}

TEST(knn, exact_mode_equals_classical) {
    for (uint64_t seed = 0; seed < 3; ++seed) {
        BlobFixture f = blob_fixture(seed);
        Rng rng(seed);
        KnnResult q = qknn_classify(f.train, f.test, 5, QuantumSettings::exact(), rng);
        KnnResult c = classical_knn(f.train, f.test, 5);
        EXPECT_EQ(q.predictions, c.predictions);
    }
}

TEST(knn, vote_ties_go_to_smallest_class) {
    LabeledDataset train;
    train.class_count = 2;
    train.vectors = {{1, 0}, {3, 0}};
    train.labels = {1, 0};
    LabeledDataset test;
    test.class_count = 2;
    test.vectors = {{2, 0.1}};
    test.labels = {0};
    EXPECT_EQ(classical_knn(train, test, 2).predictions, std::vector<int>{0});
    Rng rng(1);
    EXPECT_EQ(qknn_classify(train, test, 2, QuantumSettings::exact(), rng).predictions, std::vector<int>{0});
}

TEST(knn, shot_limited_blobs_are_diagonal_dominant) {
    BlobFixture f = blob_fixture(11);
    Rng rng(11);
    KnnResult r = qknn_classify(f.train, f.test, 5, budget(10000, 30), rng);
    ConfusionMatrix n = r.confusion.normalized();
    for (size_t c = 0; c < 4; ++c) {
        EXPECT_GT(n.at(c, c), 0.8);
    }
}

TEST(knn, severe_shot_noise_degrades_accuracy) {
    BlobFixture f = blob_fixture(12);
    Rng a(12), b(12);
    double noisy = qknn_classify(f.train, f.test, 5, budget(10, 30), a).confusion.mean_diagonal();
    double clean = qknn_classify(f.train, f.test, 5, budget(10000, 30), b).confusion.mean_diagonal();
    EXPECT_LT(noisy, clean);
}

TEST(knn, errors) {
    BlobFixture f = blob_fixture(1);
    Rng rng(1);
    EXPECT_THROW(qknn_classify(f.train, f.test, 0, QuantumSettings::exact(), rng), std::invalid_argument);
    EXPECT_THROW(qknn_classify(f.train, f.test, f.train.size() + 1, QuantumSettings::exact(), rng),
                 std::invalid_argument);
    EXPECT_THROW(classical_knn(LabeledDataset{}, f.test, 1), std::invalid_argument);
}

TEST(kmeans, exact_mode_equals_classical) {
    for (uint64_t seed = 0; seed < 3; ++seed) {
        BlobFixture f = blob_fixture(seed);
        Rng a(seed), b(seed);
        KmeansResult q = qkmeans_cluster(f.train.vectors, 4, QuantumSettings::exact(), a, 50);
        KmeansResult c = classical_kmeans(f.train.vectors, 4, b, 50);
        EXPECT_EQ(q.assignments, c.assignments);
        EXPECT_DOUBLE_EQ(permutation_agreement(c.assignments, q.assignments, 4), 1.0);
    }
}

TEST(kmeans, objective_non_increasing_in_exact_mode) {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        BlobFixture f = blob_fixture(seed + 20);
        Rng rng(seed);
        KmeansResult r = qkmeans_cluster(f.train.vectors, 4, QuantumSettings::exact(), rng, 50);
        for (size_t i = 1; i < r.objective_history.size(); ++i) {
            EXPECT_LE(r.objective_history[i], r.objective_history[i - 1] + 1e-9);
        }
    }
}

TEST(kmeans, recovers_blobs_at_high_shot_count) {
    BlobFixture f = blob_fixture(3);
    Rng rng(3);
    KmeansResult r = qkmeans_cluster(f.train.vectors, 4, budget(10000, 30), rng, 30);
    EXPECT_GE(permutation_agreement(f.train.labels, r.assignments, 4), 0.9);
}

TEST(kmeans, fewer_shots_lower_agreement) {
    BlobFixture f = blob_fixture(3);
    Rng a(3), b(3);
    double low = permutation_agreement(f.train.labels,
                                       qkmeans_cluster(f.train.vectors, 4, budget(100, 30), a, 30).assignments, 4);
    double high = permutation_agreement(
        f.train.labels, qkmeans_cluster(f.train.vectors, 4, budget(10000, 30), b, 30).assignments, 4);
    EXPECT_LT(low, high);
}

TEST(kmeans, reseeds_empty_cluster) {
    // Two identical points force an empty cluster once both centroids coincide.
    std::vector<FeatureVector> data{{1, 1}, {1, 1}, {5, 5}};
    Rng rng(2);
    KmeansResult r = classical_kmeans(data, 3, rng, 10);
    std::vector<int> sorted = r.assignments;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::vector<int>{0, 1, 2}));
}

TEST(kmeans, errors) {
    std::vector<FeatureVector> data{{1, 1}, {2, 2}};
    Rng rng(1);
    EXPECT_THROW(classical_kmeans(data, 1, rng, 10), std::invalid_argument);
    EXPECT_THROW(classical_kmeans(data, 3, rng, 10), std::invalid_argument);
}

TEST(agreement, permutation_invariant) {
    EXPECT_DOUBLE_EQ(permutation_agreement({0, 0, 1, 1, 2}, {2, 2, 0, 0, 1}, 3), 1.0);
    EXPECT_DOUBLE_EQ(permutation_agreement({0, 0, 1, 1}, {0, 1, 1, 1}, 2), 0.75);
}

TEST(cost_model, knn_examples) {
    CostModelParams p{1, 1, 1, 2, 1, 1};
    EXPECT_DOUBLE_EQ(knn_cost(p, CostMode::Classical), 3);
    // n_ST = n_QMA = 1 reduces to n m (k + log2 d).
    p = {7, 3, 4, 1024, 1, 1};
    EXPECT_DOUBLE_EQ(knn_cost(p, CostMode::Quantum), 7.0 * 3 * (4 + 10));
}

TEST(cost_model, kmeans_examples) {
    CostModelParams p{1, 1, 1, 8, 1, 1};
    EXPECT_DOUBLE_EQ(kmeans_cost(p, CostMode::Classical), 8);
    p = {3, 1, 2, 1 << 16, 1000000000, 1};
    double big = kmeans_cost(p, CostMode::Quantum);
    p.d = 1 << 8;
    EXPECT_NEAR(big / kmeans_cost(p, CostMode::Quantum), 2, 1e-9);
    p = CostModelParams{};
    p.d = 16;
    EXPECT_LT(kmeans_cost(p, CostMode::Classical), kmeans_cost(p, CostMode::Quantum));
}

TEST(cost_model, rejects_non_positive_params) {
    CostModelParams p;
    p.n_st = 0;
    EXPECT_THROW(knn_cost(p, CostMode::Quantum), std::invalid_argument);
}

TEST(crossover, calibrated_default_is_near_fifty_thousand) {
    auto d = find_crossover(CostAlgorithm::Knn, CostModelParams{});
    ASSERT_TRUE(d.has_value());
    EXPECT_GE(*d, 40000u);
    EXPECT_LE(*d, 60000u);
}

TEST(crossover, is_the_boundary) {
    for (auto algo : {CostAlgorithm::Knn, CostAlgorithm::Kmeans}) {
        for (uint64_t n_st : {5, 100, 3000, 20000}) {
            CostModelParams p;
            p.n_st = n_st;
            auto d = find_crossover(algo, p);
            ASSERT_TRUE(d.has_value());
            p.d = *d;
            EXPECT_LT(algorithm_cost(algo, p, CostMode::Quantum), algorithm_cost(algo, p, CostMode::Classical));
            if (*d > 1) {
                p.d = *d - 1;
                EXPECT_GE(algorithm_cost(algo, p, CostMode::Quantum), algorithm_cost(algo, p, CostMode::Classical));
            }
            // Stays below afterwards (spot checks).
            for (uint64_t mult : {2, 10, 1000}) {
                p.d = *d * mult;
                EXPECT_LT(algorithm_cost(algo, p, CostMode::Quantum), algorithm_cost(algo, p, CostMode::Classical));
            }
        }
    }
}

TEST(crossover, tiny_with_single_shot) {
    CostModelParams p;
    p.n_st = 1;
    auto d = find_crossover(CostAlgorithm::Knn, p);
    ASSERT_TRUE(d.has_value());
    EXPECT_LT(*d, 1000u);
}

TEST(crossover, monotone_in_constants) {
    CostModelParams p;
    uint64_t prev = 0;
    for (uint64_t n_st = 100; n_st <= 100000; n_st *= 2) {
        p.n_st = n_st;
        uint64_t d = *find_crossover(CostAlgorithm::Knn, p);
        EXPECT_GT(d, prev);
        prev = d;
    }
    p = CostModelParams{};
    prev = 0;
    for (uint64_t n_qma = 1; n_qma <= 10000; n_qma *= 10) {
        p.n_qma = n_qma;
        uint64_t d = *find_crossover(CostAlgorithm::Kmeans, p);
        EXPECT_GE(d, prev);
        prev = d;
    }
}

TEST(crossover, none_in_range) {
    CostModelParams p;
    p.n_st = uint64_t{1} << 58;
    EXPECT_FALSE(find_crossover(CostAlgorithm::Knn, p).has_value());
}
