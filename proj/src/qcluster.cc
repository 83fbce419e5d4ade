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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qmlkit {

namespace {

size_t exact_argmin(const std::vector<double> &values, const std::vector<bool> &excluded) {
    size_t best = values.size();
    for (size_t i = 0; i < values.size(); ++i) {
        if (!excluded[i] && (best == values.size() || values[i] < values[best])) {
            best = i;
        }
    }
    return best;
}

/// Nearest non-excluded index: exact argmin, or the best of n_QMA Grover
/// minimizations over the table padded with a value above every candidate.
size_t select_minimum(const std::vector<double> &values, const std::vector<bool> &excluded,
                      const QuantumSettings &settings, Rng &rng) {
    if (!settings.qma_repetitions) {
        return exact_argmin(values, excluded);
    }
    double top = 0;
    for (size_t i = 0; i < values.size(); ++i) {
        if (!excluded[i]) {
            top = std::max(top, values[i]);
        }
    }
    const double fill = top + 1;
    std::vector<double> table = pad_to_power_of_two(values, fill);
    for (size_t i = 0; i < values.size(); ++i) {
        if (excluded[i]) {
            table[i] = fill;
        }
    }
    size_t best = values.size();
    for (size_t rep = 0; rep < *settings.qma_repetitions; ++rep) {
        QmaResult r = qma_minimize(table, rng, settings.qma);
        size_t x = r.argmin_index;
        if (x >= values.size() || excluded[x]) {
            continue;
        }
        if (best == values.size() || values[x] < values[best] || (values[x] == values[best] && x < best)) {
            best = x;
        }
    }
    if (best == values.size()) {
        // Every repetition ended on padding; fall back to a uniformly random candidate.
        std::vector<size_t> open;
        for (size_t i = 0; i < values.size(); ++i) {
            if (!excluded[i]) {
                open.push_back(i);
            }
        }
        best = open[rng.index(open.size())];
    }
    return best;
}

std::vector<double> distances_to(std::span<const double> x, const std::vector<FeatureVector> &refs,
                                 const QuantumSettings &settings, Rng &rng) {
    Readout readout = settings.swap_test_shots ? Readout::shots(*settings.swap_test_shots) : Readout::exact();
    std::vector<double> out;
    out.reserve(refs.size());
    for (const auto &r : refs) {
        out.push_back(quantum_distance(x, r, readout, rng));
    }
    return out;
}

int majority_vote(const std::vector<size_t> &neighbors, const std::vector<int> &labels, size_t class_count) {
    std::vector<size_t> votes(class_count, 0);
    for (size_t j : neighbors) {
        votes[labels[j]]++;
    }
    // max_element returns the first maximum, i.e. the smallest class id.
    return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

void check_knn_inputs(const LabeledDataset &train, const LabeledDataset &test, size_t k) {
    if (train.size() == 0 || test.size() == 0) {
        throw std::invalid_argument("KNN needs non-empty train and test sets");
    }
    if (k == 0 || k > train.size()) {
        throw std::invalid_argument("k must lie in [1, train size]");
    }
    if (!train.is_labeled()) {
        throw std::invalid_argument("KNN training data must be labeled");
    }
    if (train.dimension() != test.dimension()) {
        throw std::invalid_argument("train and test dimensions differ");
    }
    train.validate();
    test.validate();
}

KnnResult finish_knn(std::vector<int> predictions, const LabeledDataset &train, const LabeledDataset &test) {
    KnnResult res;
    size_t classes = std::max(train.class_count, test.class_count);
    res.confusion = test.is_labeled() ? ConfusionMatrix::from_predictions(test.labels, predictions, classes)
                                      : ConfusionMatrix(classes);
    res.predictions = std::move(predictions);
    return res;
}

std::vector<size_t> initial_centroid_indices(size_t n, size_t k, Rng rng) {
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (size_t i = 0; i < k; ++i) {
        std::swap(idx[i], idx[i + rng.index(n - i)]);
    }
    idx.resize(k);
    return idx;
}

template <typename AssignFn>
KmeansResult lloyd(const std::vector<FeatureVector> &data, size_t k, Rng &rng, size_t max_iters, AssignFn assign) {
    if (k < 2) {
        throw std::invalid_argument("k-means needs k >= 2");
    }
    if (data.size() < k) {
        throw std::invalid_argument("k-means needs at least k points");
    }
    if (max_iters == 0) {
        throw std::invalid_argument("max_iters must be >= 1");
    }
    const size_t d = data.front().size();
    for (const auto &x : data) {
        if (x.size() != d) {
            throw std::invalid_argument("k-means data has inconsistent dimensions");
        }
    }
    KmeansResult res;
    for (size_t i : initial_centroid_indices(data.size(), k, rng.child(0))) {
        res.centroids.push_back(data[i]);
    }
    for (size_t it = 0; it < max_iters; ++it) {
        Rng iter_rng = rng.child(it + 1);
        std::vector<int> next(data.size());
        for (size_t i = 0; i < data.size(); ++i) {
            Rng point_rng = iter_rng.child(i);
            next[i] = static_cast<int>(assign(data[i], res.centroids, point_rng));
        }
        // Re-seed empty clusters with the point farthest from its centroid.
        for (size_t c = 0; c < k; ++c) {
            if (std::find(next.begin(), next.end(), static_cast<int>(c)) != next.end()) {
                continue;
            }
            size_t far = 0;
            double far_d = -1;
            for (size_t i = 0; i < data.size(); ++i) {
                double dd = squared_distance(data[i], res.centroids[next[i]]);
                auto members = std::count(next.begin(), next.end(), next[i]);
                if (members > 1 && dd > far_d) {
                    far_d = dd;
                    far = i;
                }
            }
            next[far] = static_cast<int>(c);
        }
        bool changed = next != res.assignments;
        res.assignments = std::move(next);
        std::vector<FeatureVector> sums(k, FeatureVector(d, 0.0));
        std::vector<size_t> counts(k, 0);
        for (size_t i = 0; i < data.size(); ++i) {
            auto c = static_cast<size_t>(res.assignments[i]);
            counts[c]++;
            for (size_t j = 0; j < d; ++j) {
                sums[c][j] += data[i][j];
            }
        }
        for (size_t c = 0; c < k; ++c) {
            for (size_t j = 0; j < d; ++j) {
                res.centroids[c][j] = sums[c][j] / static_cast<double>(counts[c]);
            }
        }
        res.objective_history.push_back(kmeans_objective(data, res.assignments, res.centroids));
        res.iterations = it + 1;
        if (!changed) {
            break;
        }
    }
    return res;
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(size_t class_count)
    : counts_(class_count, std::vector<double>(class_count, 0.0)) {
}

ConfusionMatrix ConfusionMatrix::from_predictions(const std::vector<int> &truth, const std::vector<int> &predicted,
                                                  size_t class_count) {
    if (truth.size() != predicted.size()) {
        throw std::invalid_argument("truth and prediction lengths differ");
    }
    ConfusionMatrix m(class_count);
    for (size_t i = 0; i < truth.size(); ++i) {
        m.add(static_cast<size_t>(truth[i]), static_cast<size_t>(predicted[i]));
    }
    return m;
}

void ConfusionMatrix::add(size_t truth, size_t predicted, double weight) {
    if (truth >= counts_.size() || predicted >= counts_.size()) {
        throw std::out_of_range("class id outside the confusion matrix");
    }
    counts_[truth][predicted] += weight;
}

ConfusionMatrix ConfusionMatrix::normalized() const {
    ConfusionMatrix out = *this;
    for (auto &row : out.counts_) {
        double s = std::accumulate(row.begin(), row.end(), 0.0);
        if (s > 0) {
            for (auto &v : row) {
                v /= s;
            }
        }
    }
    out.normalized_ = true;
    return out;
}

double ConfusionMatrix::trace() const {
    double t = 0;
    for (size_t i = 0; i < counts_.size(); ++i) {
        t += counts_[i][i];
    }
    return t;
}

double ConfusionMatrix::mean_diagonal() const {
    if (counts_.empty()) {
        return 0;
    }
    return normalized().trace() / static_cast<double>(counts_.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("squared_distance needs equal dimensions");
    }
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        s += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return s;
}

KnnResult qknn_classify(const LabeledDataset &train, const LabeledDataset &test, size_t k,
                        const QuantumSettings &settings, Rng &rng) {
    check_knn_inputs(train, test, k);
    std::vector<int> predictions;
    for (size_t i = 0; i < test.size(); ++i) {
        Rng row_rng = rng.child(i);
        std::vector<double> dist = distances_to(test.vectors[i], train.vectors, settings, row_rng);
        std::vector<bool> taken(train.size(), false);
        std::vector<size_t> neighbors;
        for (size_t s = 0; s < k; ++s) {
            size_t j = select_minimum(dist, taken, settings, row_rng);
            taken[j] = true;
            neighbors.push_back(j);
        }
        predictions.push_back(majority_vote(neighbors, train.labels, train.class_count));
    }
    return finish_knn(std::move(predictions), train, test);
}

KnnResult classical_knn(const LabeledDataset &train, const LabeledDataset &test, size_t k) {
    check_knn_inputs(train, test, k);
    std::vector<int> predictions;
    for (const auto &x : test.vectors) {
        std::vector<std::pair<double, size_t>> order;
        for (size_t j = 0; j < train.size(); ++j) {
            order.emplace_back(squared_distance(x, train.vectors[j]), j);
        }
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
        std::vector<size_t> neighbors;
        for (size_t s = 0; s < k; ++s) {
            neighbors.push_back(order[s].second);
        }
        predictions.push_back(majority_vote(neighbors, train.labels, train.class_count));
    }
    return finish_knn(std::move(predictions), train, test);
}

KmeansResult qkmeans_cluster(const std::vector<FeatureVector> &data, size_t k, const QuantumSettings &settings,
                             Rng &rng, size_t max_iters) {
    return lloyd(data, k, rng, max_iters,
                 [&](const FeatureVector &x, const std::vector<FeatureVector> &centroids, Rng &point_rng) {
                     std::vector<double> dist = distances_to(x, centroids, settings, point_rng);
                     return select_minimum(dist, std::vector<bool>(centroids.size(), false), settings, point_rng);
                 });
}

KmeansResult classical_kmeans(const std::vector<FeatureVector> &data, size_t k, Rng &rng, size_t max_iters) {
    return lloyd(data, k, rng, max_iters,
                 [](const FeatureVector &x, const std::vector<FeatureVector> &centroids, Rng &) {
                     std::vector<double> dist;
                     for (const auto &c : centroids) {
                         dist.push_back(squared_distance(x, c));
                     }
                     return exact_argmin(dist, std::vector<bool>(centroids.size(), false));
                 });
}

double kmeans_objective(const std::vector<FeatureVector> &data, const std::vector<int> &assignments,
                        const std::vector<FeatureVector> &centroids) {
    double total = 0;
    for (size_t i = 0; i < data.size(); ++i) {
        total += squared_distance(data[i], centroids.at(static_cast<size_t>(assignments.at(i))));
    }
    return total;
}

double permutation_agreement(const std::vector<int> &truth, const std::vector<int> &predicted, size_t k) {
    if (truth.size() != predicted.size() || truth.empty()) {
        throw std::invalid_argument("labelings must be non-empty and of equal length");
    }
    if (k == 0 || k > 8) {
        throw std::invalid_argument("permutation_agreement supports 1 <= k <= 8");
    }
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    size_t best = 0;
    do {
        size_t hits = 0;
        for (size_t i = 0; i < truth.size(); ++i) {
            int p = predicted[i];
            if (p >= 0 && static_cast<size_t>(p) < k && perm[static_cast<size_t>(p)] == truth[i]) {
                ++hits;
            }
        }
        best = std::max(best, hits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(truth.size());
}

void CostModelParams::validate() const {
    if (n == 0 || m == 0 || k == 0 || d == 0 || n_st == 0 || n_qma == 0) {
        throw std::invalid_argument("cost model parameters must be strictly positive");
    }
}

double knn_cost(const CostModelParams &p, CostMode mode) {
    p.validate();
    double nm = static_cast<double>(p.n) * static_cast<double>(p.m);
    double k = static_cast<double>(p.k), d = static_cast<double>(p.d);
    if (mode == CostMode::Classical) {
        return nm * (k + d);
    }
    return nm * (k * static_cast<double>(p.n_qma) + static_cast<double>(p.n_st) * std::log2(d));
}

double kmeans_cost(const CostModelParams &p, CostMode mode) {
    p.validate();
    double kn = static_cast<double>(p.k) * static_cast<double>(p.n);
    double d = static_cast<double>(p.d);
    if (mode == CostMode::Classical) {
        return kn * d;
    }
    return kn * (static_cast<double>(p.n_qma) + static_cast<double>(p.n_st) * std::log2(d));
}

double algorithm_cost(CostAlgorithm algo, const CostModelParams &p, CostMode mode) {
    return algo == CostAlgorithm::Knn ? knn_cost(p, mode) : kmeans_cost(p, mode);
}

std::optional<uint64_t> find_crossover(CostAlgorithm algo, CostModelParams p) {
    p.validate();
    // gap(d) = quantum - classical is concave in d with its peak at d = n_st / ln 2;
    // beyond the peak it is strictly decreasing.
    auto gap = [&](uint64_t d) {
        p.d = d;
        return algorithm_cost(algo, p, CostMode::Quantum) - algorithm_cost(algo, p, CostMode::Classical);
    };
    const uint64_t upper = uint64_t{1} << 60;
    uint64_t peak_lo = std::max<uint64_t>(1, static_cast<uint64_t>(std::floor(static_cast<double>(p.n_st) / std::log(2.0))));
    uint64_t peak_hi = peak_lo + 1;
    if (gap(peak_lo) < 0 && gap(peak_hi) < 0) {
        return 1;
    }
    if (gap(upper) >= 0) {
        return std::nullopt;
    }
    uint64_t lo = peak_hi, hi = upper;  // gap(lo) may be >= 0, gap(hi) < 0
    if (gap(lo) < 0) {
        return lo;
    }
    while (hi - lo > 1) {
        uint64_t mid = lo + (hi - lo) / 2;
        if (gap(mid) < 0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace qmlkit
