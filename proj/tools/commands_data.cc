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

namespace qmlkit::cli {

namespace {

struct BlobOptions {
    BlobSpec spec;
    std::string output;
};

}  // namespace

void add_data_commands(CLI::App &app, Registry &registry) {
    {
        Command &cmd = add_command(app, registry, "gen-blobs", "Generate a labeled Gaussian-blob dataset");
        auto o = std::make_shared<BlobOptions>();
        cmd.option("--classes", o->spec.classes, "Number of blobs")->check(CLI::Range(1, 1000));
        cmd.option("--per-class", o->spec.per_class, "Points per blob")->check(CLI::Range(1, 10000000));
        cmd.option("--sigma", o->spec.sigma, "Standard deviation of each blob");
        cmd.option("--radius", o->spec.radius, "Radius of the circle holding the blob centers");
        cmd.option("-o,--output", o->output, "CSV path (default: <out-dir>/blobs.csv)");
        cmd.run = [o](Context &ctx) {
            Rng rng(ctx.seed());
            LabeledDataset data = make_blobs(o->spec, rng);
            std::string path = o->output.empty() ? ctx.artifact("blobs.csv") : o->output;
            if (!o->output.empty()) {
                ctx.record(path);
            }
            write_csv_file(path, data);
            return Json{{"rows", data.size()}, {"classes", data.class_count}, {"output", path}};
        };
    }
    {
        Command &cmd = add_command(app, registry, "load-iris", "Write the bundled Iris dataset as CSV");
        auto output = std::make_shared<std::string>();
        cmd.option("-o,--output", *output, "CSV path (default: <out-dir>/iris.csv)");
        cmd.run = [output](Context &ctx) {
            LabeledDataset data = iris_dataset();
            std::string path = output->empty() ? ctx.artifact("iris.csv") : *output;
            if (!output->empty()) {
                ctx.record(path);
            }
            write_csv_file(path, data);
            return Json{{"rows", data.size()}, {"classes", data.class_names}, {"output", path}};
        };
    }
}

}  // namespace qmlkit::cli
