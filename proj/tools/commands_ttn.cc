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

#include <memory>

#include "cli_internal.h"
#include "qmlkit/errors.h"
#include "qmlkit/qcluster.h"
#include "qmlkit/ttn.h"

namespace qmlkit::cli {

namespace {

struct TrainOptions {
    std::string data = "iris";
    std::vector<int> classes{0, 1};
    TrainConfig config;
    std::string output;
};

struct EvalOptions {
    std::string model;
};

struct ShotOptions {
    std::string model;
    std::vector<uint64_t> shots{1, 3, 5, 9, 21, 55, 201, 1001};
    size_t trials = 50;
};

void add_train_options(Command &cmd, TrainOptions &o) {
    cmd.option("--data", o.data, "\"iris\" or a labeled CSV");
    cmd.option("--lr", o.config.learning_rate, "Learning rate");
    cmd.option("--batch", o.config.batch_size, "Minibatch size");
    cmd.option("--epochs", o.config.epochs, "Training epochs");
    cmd.option("--train-fraction", o.config.train_fraction, "Stratified training share");
    cmd.option("-o,--output", o.output, "Model JSON path (default: <out-dir>/<command>_model.json)");
}

Json training_json(const TrainOptions &o, const TrainConfig &cfg, bool binary) {
    Json j{{"data", o.data},
           {"seed", cfg.seed},
           {"train_fraction", cfg.train_fraction},
           {"learning_rate", cfg.learning_rate},
           {"batch_size", cfg.batch_size},
           {"epochs", cfg.epochs}};
    if (binary) {
        j["classes"] = o.classes;
    }
    return j;
}

/// Rebuilds the train/test split recorded in a model document.
DatasetSplit recorded_split(const Json &model) {
    if (!model.contains("training")) {
        throw DataError("model has no training record; cannot rebuild its split");
    }
    const Json &t = model.at("training");
    try {
        LabeledDataset data = load_dataset(t.at("data").get<std::string>());
        if (t.contains("classes")) {
            data = select_classes(data, t.at("classes").get<std::vector<int>>());
        }
        TrainConfig cfg;
        cfg.seed = t.at("seed").get<uint64_t>();
        cfg.train_fraction = t.at("train_fraction").get<double>();
        return split_for_training(data, cfg);
    } catch (const Json::exception &e) {
        throw DataError(std::string("malformed training record: ") + e.what());
    }
}

std::string output_path(Context &ctx, const std::string &chosen, const std::string &fallback) {
    if (chosen.empty()) {
        return ctx.artifact(fallback);
    }
    ctx.record(chosen);
    return chosen;
}

void write_losses(const std::string &path, const std::vector<double> &loss, const std::vector<double> &discrete) {
    std::vector<std::vector<std::string>> rows;
    for (size_t e = 0; e < loss.size(); ++e) {
        std::vector<std::string> row{cell(static_cast<uint64_t>(e)), cell(loss[e])};
        if (!discrete.empty()) {
            row.push_back(cell(discrete[e]));
        }
        rows.push_back(row);
    }
    std::vector<std::string> header{"epoch", "loss"};
    if (!discrete.empty()) {
        header.push_back("discrete_loss");
    }
    write_table(path, header, rows);
}

ConfusionMatrix binary_confusion(const TtnModel &model, const LabeledDataset &data) {
    std::vector<int> pred;
    for (const auto &x : data.vectors) {
        pred.push_back(ttn_predict(ttn_forward(model, x)));
    }
    return ConfusionMatrix::from_predictions(data.labels, pred, 2);
}

ConfusionMatrix multiclass_confusion(const MulticlassTtnModel &model, const LabeledDataset &data) {
    std::vector<int> pred;
    for (const auto &x : data.vectors) {
        pred.push_back(multiclass_predict(model, x));
    }
    return ConfusionMatrix::from_predictions(data.labels, pred, model.class_count());
}

double accuracy(const ConfusionMatrix &m) {
    double total = 0;
    for (const auto &row : m.rows()) {
        for (double v : row) {
            total += v;
        }
    }
    return m.trace() / total;
}

}  // namespace

void add_ttn_commands(CLI::App &app, Registry &registry) {
    {
        Command &cmd = add_command(app, registry, "ttn-train", "Train a binary tree-tensor-network classifier");
        auto o = std::make_shared<TrainOptions>();
        add_train_options(cmd, *o);
        cmd.option("--classes", o->classes, "Two class ids; the second becomes label 1")->delimiter(',');
        cmd.run = [o](Context &ctx) {
            if (o->classes.size() != 2) {
                throw std::invalid_argument("--classes needs exactly two ids");
            }
            TrainConfig cfg = o->config;
            cfg.seed = ctx.seed();
            DatasetSplit split = split_for_training(select_classes(load_dataset(o->data), o->classes), cfg);
            TtnTrainResult r = ttn_train(split.train, cfg);
            Json model = to_json(r.model);
            model["training"] = training_json(*o, cfg, true);
            write_json_file(output_path(ctx, o->output, "ttn_model.json"), model);
            write_losses(ctx.artifact("ttn_loss.csv"), r.loss_history, r.discrete_loss_history);
            return Json{{"train_accuracy", ttn_accuracy(r.model, split.train)},
                        {"test_accuracy", ttn_accuracy(r.model, split.test)},
                        {"initial_loss", r.loss_history.front()},
                        {"final_loss", r.loss_history.back()},
                        {"thetas", model["thetas"]}};
        };
    }
    {
        Command &cmd = add_command(app, registry, "ttn-eval", "Evaluate a trained binary model on its test split");
        auto o = std::make_shared<EvalOptions>();
        cmd.option("--model", o->model, "Model JSON written by ttn-train")->required();
        cmd.run = [o](Context &) {
            Json doc = read_json_file(o->model);
            TtnModel model = ttn_model_from_json(doc);
            DatasetSplit split = recorded_split(doc);
            ConfusionMatrix test = binary_confusion(model, split.test);
            return Json{{"test_accuracy", accuracy(test)},
                        {"train_accuracy", ttn_accuracy(model, split.train)},
                        {"test_confusion", to_json(test)}};
        };
    }
    {
        Command &cmd = add_command(app, registry, "ttn-shots", "Accuracy of a binary model versus readout shots");
        auto o = std::make_shared<ShotOptions>();
        cmd.option("--model", o->model, "Model JSON written by ttn-train")->required();
        cmd.option("--shots", o->shots, "Odd shot counts")->delimiter(',');
        cmd.option("--trials", o->trials, "Trials averaged per shot count");
        cmd.run = [o](Context &ctx) {
            Json doc = read_json_file(o->model);
            TtnModel model = ttn_model_from_json(doc);
            DatasetSplit split = recorded_split(doc);
            auto curve = shot_accuracy_curve(model, split.test, o->shots, o->trials, ctx.seed());
            auto expected = expected_shot_accuracy(model, split.test, o->shots);
            std::vector<std::vector<std::string>> rows;
            for (size_t i = 0; i < o->shots.size(); ++i) {
                rows.push_back({cell(o->shots[i]), cell(curve[i]), cell(expected[i])});
            }
            write_table(ctx.artifact("ttn_shots.csv"), {"shots", "accuracy", "expected_accuracy"}, rows);
            bool monotone = std::is_sorted(curve.begin(), curve.end());
            return Json{{"shots", o->shots},
                        {"accuracy", curve},
                        {"expected_accuracy", expected},
                        {"exact_accuracy", ttn_accuracy(model, split.test)},
                        {"non_decreasing", monotone}};
        };
    }
    {
        Command &cmd = add_command(app, registry, "ttn-multi", "Train and evaluate the multiclass argmax classifier");
        auto o = std::make_shared<TrainOptions>();
        add_train_options(cmd, *o);
        cmd.run = [o](Context &ctx) {
            TrainConfig cfg = o->config;
            cfg.seed = ctx.seed();
            DatasetSplit split = split_for_training(load_dataset(o->data), cfg);
            MulticlassTrainResult r = multiclass_train(split.train, cfg);
            Json model = to_json(r.model);
            model["training"] = training_json(*o, cfg, false);
            write_json_file(output_path(ctx, o->output, "ttn_multi_model.json"), model);
            write_losses(ctx.artifact("ttn_multi_loss.csv"), r.loss_history, {});
            ConfusionMatrix test = multiclass_confusion(r.model, split.test);
            return Json{{"test_accuracy", accuracy(test)},
                        {"train_accuracy", accuracy(multiclass_confusion(r.model, split.train))},
                        {"test_confusion", to_json(test)},
                        {"class_names", split.test.class_names},
                        {"final_loss", r.loss_history.back()}};
        };
    }
}

}  // namespace qmlkit::cli
