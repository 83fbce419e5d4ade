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

#include <cmath>
#include <memory>

#include "cli_internal.h"
#include "qmlkit/qcluster.h"

namespace qmlkit::cli {

namespace {

struct QuantumOptions {
    uint64_t shots = 10000;
    size_t qma_reps = 30;

    /// Zero in either field selects the exact counterpart.
    QuantumSettings settings() const {
        QuantumSettings s;
        if (shots > 0) {
            s.swap_test_shots = shots;
        }
        if (qma_reps > 0) {
            s.qma_repetitions = qma_reps;
        }
        return s;
    }
};

struct KnnOptions {
    std::string train;
    std::string test;
    size_t k = 5;
    QuantumOptions quantum;
};

struct KmeansOptions {
    std::string data;
    size_t k = 4;
    size_t max_iters = 30;
    QuantumOptions quantum;
};

struct CostOptions {
    std::string algo;
    CostModelParams params;
    unsigned max_log2_d = 24;
};

void add_quantum_options(Command &cmd, QuantumOptions &q) {
    cmd.option("--shots", q.shots, "SWAP-test shots per distance; 0 for exact distances");
    cmd.option("--qma-reps", q.qma_reps, "QMA repetitions per minimum; 0 for an exact scan");
}

std::vector<std::vector<std::string>> label_rows(const std::vector<std::vector<int>> &columns) {
    size_t n = 0;
    for (const auto &c : columns) {
        n = std::max(n, c.size());
    }
    std::vector<std::vector<std::string>> rows;
    for (size_t i = 0; i < n; ++i) {
        std::vector<std::string> row{cell(static_cast<uint64_t>(i))};
        for (const auto &c : columns) {
            row.push_back(c.empty() ? "" : cell(c[i]));
        }
        rows.push_back(row);
    }
    return rows;
}

CostAlgorithm parse_algo(const std::string &name) {
    if (name == "knn") {
        return CostAlgorithm::Knn;
    }
    if (name == "kmeans") {
        return CostAlgorithm::Kmeans;
    }
    throw std::invalid_argument("--algo must be knn or kmeans");
}

Json crossover_json(std::optional<uint64_t> d) {
    return d ? Json(*d) : Json();
}

}  // namespace

void add_cluster_commands(CLI::App &app, Registry &registry) {
    {
        Command &cmd = add_command(app, registry, "knn", "Quantum k-nearest-neighbours classification");
        auto o = std::make_shared<KnnOptions>();
        cmd.option("--train", o->train, "Training CSV (default: blob fixture from the seed)");
        cmd.option("--test", o->test, "Test CSV (default: blob fixture from the seed)");
        cmd.option("--k", o->k, "Neighbours per vote");
        add_quantum_options(cmd, o->quantum);
        cmd.run = [o](Context &ctx) {
            if (o->train.empty() != o->test.empty()) {
                throw std::invalid_argument("give both --train and --test, or neither");
            }
            DatasetSplit data = o->train.empty() ? blob_fixture(ctx.seed())
                                                 : DatasetSplit{load_dataset(o->train), load_dataset(o->test)};
            Rng rng = Rng(ctx.seed()).child(1);
            KnnResult q = qknn_classify(data.train, data.test, o->k, o->quantum.settings(), rng);
            KnnResult c = classical_knn(data.train, data.test, o->k);
            size_t same = 0;
            for (size_t i = 0; i < q.predictions.size(); ++i) {
                same += q.predictions[i] == c.predictions[i];
            }
            write_table(ctx.artifact("knn_predictions.csv"), {"index", "label", "quantum", "classical"},
                        label_rows({data.test.labels, q.predictions, c.predictions}));
            return Json{{"confusion", to_json(q.confusion)},
                        {"classical_confusion", to_json(c.confusion)},
                        {"agreement_with_classical",
                         static_cast<double>(same) / static_cast<double>(q.predictions.size())}};
        };
    }
    {
        Command &cmd = add_command(app, registry, "kmeans", "Quantum k-means clustering");
        auto o = std::make_shared<KmeansOptions>();
        cmd.option("--data", o->data, "Dataset CSV (default: blob fixture training set from the seed)");
        cmd.option("--k", o->k, "Number of clusters");
        cmd.option("--max-iters", o->max_iters, "Iteration cap");
        add_quantum_options(cmd, o->quantum);
        cmd.run = [o](Context &ctx) {
            LabeledDataset data = o->data.empty() ? blob_fixture(ctx.seed()).train : load_dataset(o->data);
            Rng qrng = Rng(ctx.seed()).child(1), crng = Rng(ctx.seed()).child(1);
            KmeansResult q = qkmeans_cluster(data.vectors, o->k, o->quantum.settings(), qrng, o->max_iters);
            KmeansResult c = classical_kmeans(data.vectors, o->k, crng, o->max_iters);
            write_table(ctx.artifact("kmeans_assignments.csv"), {"index", "label", "quantum", "classical"},
                        label_rows({data.labels, q.assignments, c.assignments}));
            Json results{{"iterations", q.iterations},
                         {"objective_history", q.objective_history},
                         {"agreement_with_classical", permutation_agreement(c.assignments, q.assignments, o->k)}};
            if (data.is_labeled() && data.class_count == o->k) {
                results["agreement_with_labels"] = permutation_agreement(data.labels, q.assignments, o->k);
                results["classical_agreement_with_labels"] = permutation_agreement(data.labels, c.assignments, o->k);
            }
            return results;
        };
    }
    {
        Command &cmd = add_command(app, registry, "cost", "Classical versus quantum cost curves and crossover");
        auto o = std::make_shared<CostOptions>();
        cmd.option("--algo", o->algo, "knn or kmeans")->required()->check(CLI::IsMember({"knn", "kmeans"}));
        cmd.option("--n", o->params.n, "Training set size");
        cmd.option("--m", o->params.m, "Test set size (knn)");
        cmd.option("--k", o->params.k, "Neighbours or clusters");
        cmd.option("--n-st", o->params.n_st, "SWAP-test shots per distance");
        cmd.option("--n-qma", o->params.n_qma, "QMA repetitions");
        cmd.option("--max-log2-d", o->max_log2_d, "Curve runs over d = 2^1 .. 2^max")->check(CLI::Range(1, 60));
        cmd.run = [o](Context &ctx) {
            CostAlgorithm algo = parse_algo(o->algo);
            o->params.validate();
            std::vector<std::vector<std::string>> rows;
            CostModelParams p = o->params;
            for (unsigned e = 1; e <= o->max_log2_d; ++e) {
                p.d = uint64_t{1} << e;
                rows.push_back({cell(p.d), cell(algorithm_cost(algo, p, CostMode::Classical)),
                                cell(algorithm_cost(algo, p, CostMode::Quantum))});
            }
            write_table(ctx.artifact("cost_" + o->algo + ".csv"), {"d", "classical", "quantum"}, rows);
            Json sweep = Json::array();
            for (double f : {0.25, 0.5, 1.0, 2.0, 4.0}) {
                p = o->params;
                p.n_st = std::max<uint64_t>(1, static_cast<uint64_t>(std::llround(f * static_cast<double>(p.n_st))));
                sweep.push_back(Json{{"n_st", p.n_st}, {"crossover_d", crossover_json(find_crossover(algo, p))}});
            }
            return Json{{"crossover_d", crossover_json(find_crossover(algo, o->params))}, {"n_st_sweep", sweep}};
        };
    }
}

}  // namespace qmlkit::cli
