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

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qmlkit/dataset.h"
#include "qmlkit/serialize.h"

namespace qmlkit::cli {

/// Bad flag values or combinations; exits with the usage code.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class Context {
   public:
    Context(uint64_t seed, std::string out_dir) : seed_(seed), out_dir_(std::move(out_dir)) {
    }
    uint64_t seed() const {
        return seed_;
    }
    /// Path inside the output directory, recorded as an artifact.
    std::string artifact(const std::string &file_name);
    /// Records a path chosen by the user.
    void record(const std::string &path) {
        artifacts_.push_back(path);
    }
    const std::vector<std::string> &artifacts() const {
        return artifacts_;
    }

   private:
    uint64_t seed_;
    std::string out_dir_;
    std::vector<std::string> artifacts_;
};

/// Options of one subcommand, remembered so the resolved values can be
/// echoed into the report.
class Command {
   public:
    Command(CLI::App *app, std::string name);

    template <typename T>
    CLI::Option *option(const std::string &flags, T &target, const std::string &help) {
        CLI::Option *opt = app_->add_option(flags, target, help)->capture_default_str();
        echo_.emplace_back(opt, [&target] { return Json(target); });
        return opt;
    }
    CLI::Option *flag(const std::string &flags, bool &target, const std::string &help);

    CLI::App *app() const {
        return app_;
    }
    const std::string &name() const {
        return name_;
    }
    uint64_t seed() const {
        return seed_;
    }
    const std::string &out_dir() const {
        return out_dir_;
    }
    /// Fills options not given on the command line from a JSON object.
    void apply_config_file();
    Json resolved_config() const;

    std::function<Json(Context &)> run;

   private:
    CLI::App *app_;
    std::string name_;
    uint64_t seed_ = 0;
    std::string out_dir_ = ".";
    std::string config_path_;
    std::vector<std::pair<CLI::Option *, std::function<Json()>>> echo_;
};

using Registry = std::vector<std::unique_ptr<Command>>;

Command &add_command(CLI::App &app, Registry &registry, const std::string &name, const std::string &help);

/// "iris" selects the bundled dataset; anything else is read as CSV.
LabeledDataset load_dataset(const std::string &source);

/// Default blob fixture: 20 per class for training, 10 per class for testing.
DatasetSplit blob_fixture(uint64_t seed);

/// Writes rows of already formatted cells.
void write_table(const std::string &path, const std::vector<std::string> &header,
                 const std::vector<std::vector<std::string>> &rows);

std::string cell(double v);
std::string cell(int64_t v);
std::string cell(uint64_t v);
std::string cell(int v);

void add_data_commands(CLI::App &app, Registry &registry);
void add_qsub_commands(CLI::App &app, Registry &registry);
void add_cluster_commands(CLI::App &app, Registry &registry);
void add_ttn_commands(CLI::App &app, Registry &registry);
void add_tomo_commands(CLI::App &app, Registry &registry);

}  // namespace qmlkit::cli
