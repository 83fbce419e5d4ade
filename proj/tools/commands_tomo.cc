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
#include "qmlkit/tomo.h"

namespace qmlkit::cli {

namespace {

struct TomoOptions {
    std::string noise = "none";
    double angle = 0.15;
    double angle_std = 0.15;
    double gamma = 0.1;
    double lambda = 0.1;
    std::vector<double> axis;
    TomographyConfig config;
};

NoiseChannel build_noise(const TomoOptions &o) {
    std::optional<BlochVector> axis;
    if (!o.axis.empty()) {
        if (o.axis.size() != 3) {
            throw std::invalid_argument("--axis needs three components");
        }
        axis = BlochVector{o.axis[0], o.axis[1], o.axis[2]};
    }
    switch (parse_noise_kind(o.noise)) {
        case NoiseKind::None:
            return NoiseChannel::none();
        case NoiseKind::SystematicUnitary:
            return NoiseChannel::systematic_unitary(axis.value_or(BlochVector{0, 1, 0}), o.angle);
        case NoiseKind::RandomUnitary:
            return NoiseChannel::random_unitary(axis, o.angle_std);
        case NoiseKind::AmplitudePhase:
            return NoiseChannel::amplitude_phase(o.gamma, o.lambda);
    }
    throw std::invalid_argument("unknown noise kind");
}

}  // namespace

void add_tomo_commands(CLI::App &app, Registry &registry) {
    Command &cmd = add_command(app, registry, "tomo-run", "Compare MLE and network tomography of single-qubit states");
    auto o = std::make_shared<TomoOptions>();
    TomographyConfig &c = o->config;
    cmd.option("--noise", o->noise, "none, systematic_unitary, random_unitary or amplitude_phase");
    cmd.option("--angle", o->angle, "Systematic rotation angle (rad)");
    cmd.option("--angle-std", o->angle_std, "Random rotation angle std (rad)");
    cmd.option("--gamma", o->gamma, "Amplitude damping probability");
    cmd.option("--lambda", o->lambda, "Phase damping probability");
    cmd.option("--axis", o->axis, "Rotation axis x,y,z (default y, or random for random_unitary)")->delimiter(',');
    cmd.option("--train-count", c.train_count, "Training tomograms");
    cmd.option("--eval-count", c.eval_count, "Evaluation tomograms");
    cmd.option("--sample-size", c.sample_size, "Shots per tomogram, split over X, Y, Z");
    cmd.option("--hidden", c.hidden_layers, "Hidden layer widths")->delimiter(',');
    cmd.flag("--per-outcome", c.per_outcome_inputs, "Feed +/- frequencies as 6 inputs");
    cmd.option("--epochs", c.training.epochs, "Network training epochs");
    cmd.option("--lr", c.training.learning_rate, "Network learning rate");
    cmd.option("--batch", c.training.batch_size, "Network minibatch size");
    cmd.run = [o](Context &ctx) {
        TomographyConfig cfg = o->config;
        cfg.seed = ctx.seed();
        cfg.noise = build_noise(*o);
        TomographyReport report = neurotomography_pipeline(cfg);

        std::vector<std::vector<std::string>> rows;
        for (const auto &e : report.experiments) {
            rows.push_back({cell(e.truth.theta), cell(e.truth.phi), cell(e.mle.theta), cell(e.mle.phi),
                            cell(e.network.theta), cell(e.network.phi), cell(e.mle_fidelity),
                            cell(e.network_fidelity)});
        }
        write_table(ctx.artifact("tomo_experiments.csv"),
                    {"theta", "phi", "mle_theta", "mle_phi", "network_theta", "network_phi", "mle_fidelity",
                     "network_fidelity"},
                    rows);
        std::vector<std::vector<std::string>> loss_rows;
        for (size_t e = 0; e < report.training_loss.size(); ++e) {
            loss_rows.push_back({cell(static_cast<uint64_t>(e)), cell(report.training_loss[e])});
        }
        write_table(ctx.artifact("tomo_loss.csv"), {"epoch", "loss"}, loss_rows);

        return Json{{"noise", to_json(report.noise)},
                    {"mle_infidelity", to_json(report.mle)},
                    {"network_infidelity", to_json(report.network)},
                    {"network_better", report.network.median < report.mle.median},
                    {"final_training_loss", report.training_loss.empty() ? 0.0 : report.training_loss.back()}};
    };
}

}  // namespace qmlkit::cli
