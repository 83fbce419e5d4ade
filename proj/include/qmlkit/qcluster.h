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
#include <optional>
#include <string>
#include <vector>

#include "qmlkit/dataset.h"
#include "qmlkit/qsub.h"
#include "qmlkit/rng.h"

namespace qmlkit {

/// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
   public:
    explicit ConfusionMatrix(size_t class_count);
    static ConfusionMatrix from_predictions(const std::vector<int> &truth, const std::vector<int> &predicted,
                                            size_t class_count);

    size_t class_count() const {
        return counts_.size();
    }
    double at(size_t truth, size_t predicted) const {
        return counts_[truth][predicted];
    }
    void add(size_t truth, size_t predicted, double weight = 1);
    bool is_normalized() const {
        return normalized_;
    }
    /// Every non-empty row rescaled to sum to 1.
    ConfusionMatrix normalized() const;
    double trace() const;
    /// Mean of the diagonal of the normalized matrix.
    double mean_diagonal() const;
    const std::vector<std::vector<double>> &rows() const {
        return counts_;
    }

   private:
    std::vector<std::vector<double>> counts_;
    bool normalized_ = false;
};

/// Quantum resources for a distance-based routine. An empty optional selects
/// the exact limit: exact SWAP-test probabilities, or an exact argmin in place
/// of the Grover minimizer.
struct QuantumSettings {
    std::optional<uint64_t> swap_test_shots;
    std::optional<size_t> qma_repetitions;
    QmaOptions qma;

    static QuantumSettings exact() {
        return {};
    }
};

struct KnnResult {
    std::vector<int> predictions;
    ConfusionMatrix confusion{0};
};

/// Majority vote among the k nearest train vectors; ties go to the smallest
/// class id. Distances come from quantum_distance and neighbors are picked by
/// k successive Grover minimizations (best of n_QMA runs each).
KnnResult qknn_classify(const LabeledDataset &train, const LabeledDataset &test, size_t k,
                        const QuantumSettings &settings, Rng &rng);
/// Brute-force baseline; distance ties resolve to the smaller train index.
KnnResult classical_knn(const LabeledDataset &train, const LabeledDataset &test, size_t k);

struct KmeansResult {
    std::vector<int> assignments;
    std::vector<FeatureVector> centroids;
    size_t iterations = 0;
    /// Exact within-cluster sum of squared distances after each iteration.
    std::vector<double> objective_history;
};

/// Lloyd iterations with quantum distance estimates and Grover-based
/// nearest-centroid selection. Initial centroids are k distinct points drawn
/// from rng.child(0), so an exact-mode run and classical_kmeans with the same
/// seed start identically.
KmeansResult qkmeans_cluster(const std::vector<FeatureVector> &data, size_t k, const QuantumSettings &settings,
                             Rng &rng, size_t max_iters);
KmeansResult classical_kmeans(const std::vector<FeatureVector> &data, size_t k, Rng &rng, size_t max_iters);

double kmeans_objective(const std::vector<FeatureVector> &data, const std::vector<int> &assignments,
                        const std::vector<FeatureVector> &centroids);

/// Fraction of points on which two labelings agree after the best one-to-one
/// relabeling of `predicted` (k <= 8).
double permutation_agreement(const std::vector<int> &truth, const std::vector<int> &predicted, size_t k);

double squared_distance(std::span<const double> a, std::span<const double> b);

enum class CostMode { Classical, Quantum };
enum class CostAlgorithm { Knn, Kmeans };

/// n: train size (k-means: dataset size), m: test size, k: neighbors or
/// clusters, d: dimension; n_st and n_qma are the quantum repetition constants.
struct CostModelParams {
    uint64_t n = 1000;
    uint64_t m = 100;
    uint64_t k = 10;
    uint64_t d = 2;
    uint64_t n_st = 3000;
    uint64_t n_qma = 30;

    void validate() const;
};

/// classical n m (k + d); quantum n m (k n_QMA + n_ST log2 d).
double knn_cost(const CostModelParams &p, CostMode mode);
/// classical k n d; quantum k n (n_QMA + n_ST log2 d).
double kmeans_cost(const CostModelParams &p, CostMode mode);
double algorithm_cost(CostAlgorithm algo, const CostModelParams &p, CostMode mode);

/// Smallest integer d >= 1 from which the quantum cost stays strictly below
/// the classical cost; nullopt if none up to 2^60.
std::optional<uint64_t> find_crossover(CostAlgorithm algo, CostModelParams p);

}  // namespace qmlkit
