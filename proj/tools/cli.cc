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

#include "cli.h"

#include <filesystem>
#include <fstream>

#include "cli_internal.h"
#include "qmlkit/errors.h"

namespace qmlkit::cli {

namespace {

std::string config_scalar(const Json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number()) {
        return v.dump();
    }
    throw UsageError("unsupported config value " + v.dump());
}

void print_error(std::ostream &err, int code, const std::string &kind, const std::string &message) {
    Json line{{"error", kind}, {"exit_code", code}, {"message", message}};
    err << line.dump() << '\n';
}

std::string report_file_name(std::string command) {
    for (char &c : command) {
        if (c == '-') {
            c = '_';
        }
    }
    return command + "_report.json";
}

}  // namespace

std::string Context::artifact(const std::string &file_name) {
    std::string path = (std::filesystem::path(out_dir_) / file_name).string();
    artifacts_.push_back(path);
    return path;
}

Command::Command(CLI::App *app, std::string name) : app_(app), name_(std::move(name)) {
    option("--seed", seed_, "Master seed");
    option("--out-dir", out_dir_, "Directory for reports and artifacts");
    app_->add_option("--config", config_path_, "JSON file of option values; flags take precedence");
}

CLI::Option *Command::flag(const std::string &flags, bool &target, const std::string &help) {
    CLI::Option *opt = app_->add_flag(flags, target, help);
    echo_.emplace_back(opt, [&target] { return Json(target); });
    return opt;
}

void Command::apply_config_file() {
    if (config_path_.empty()) {
        return;
    }
    Json config = read_json_file(config_path_);
    if (!config.is_object()) {
        throw UsageError(config_path_ + ": config must be a JSON object");
    }
    for (const auto &[raw_key, value] : config.items()) {
        std::string key = raw_key;
        std::replace(key.begin(), key.end(), '_', '-');
        CLI::Option *opt = key == "config" ? nullptr : app_->get_option_no_throw("--" + key);
        if (opt == nullptr) {
            throw UsageError(config_path_ + ": unknown option '" + raw_key + "' for " + name_);
        }
        if (opt->count() > 0) {
            continue;
        }
        opt->clear();
        if (value.is_array()) {
            for (const auto &item : value) {
                opt->add_result(config_scalar(item));
            }
        } else {
            opt->add_result(config_scalar(value));
        }
        try {
            opt->run_callback();
        } catch (const CLI::ParseError &e) {
            throw UsageError(config_path_ + ": bad value for '" + raw_key + "': " + e.what());
        }
    }
}

Json Command::resolved_config() const {
    Json j = Json::object();
    for (const auto &[opt, value] : echo_) {
        std::string key = opt->get_lnames().empty() ? opt->get_single_name() : opt->get_lnames().front();
        std::replace(key.begin(), key.end(), '-', '_');
        j[key] = value();
    }
    return j;
}

Command &add_command(CLI::App &app, Registry &registry, const std::string &name, const std::string &help) {
    CLI::App *sub = app.add_subcommand(name, help);
    registry.push_back(std::make_unique<Command>(sub, name));
    return *registry.back();
}

LabeledDataset load_dataset(const std::string &source) {
    return source == "iris" ? iris_dataset() : read_csv_file(source);
}

DatasetSplit blob_fixture(uint64_t seed) {
    Rng rng(seed);
    BlobSpec spec;
    spec.per_class = 20;
    DatasetSplit split;
    split.train = make_blobs(spec, rng);
    spec.per_class = 10;
    split.test = make_blobs(spec, rng);
    return split;
}

void write_table(const std::string &path, const std::vector<std::string> &header,
                 const std::vector<std::vector<std::string>> &rows) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path + "'");
    }
    auto write_row = [&](const std::vector<std::string> &cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << cells[i];
        }
        out << '\n';
    };
    write_row(header);
    for (const auto &r : rows) {
        write_row(r);
    }
    if (!out) {
        throw DataError("failed writing '" + path + "'");
    }
}

std::string cell(double v) {
    return format_double(v);
}
std::string cell(int64_t v) {
    return std::to_string(v);
}
std::string cell(uint64_t v) {
    return std::to_string(v);
}
std::string cell(int v) {
    return std::to_string(v);
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum machine learning experiments on a state-vector simulator", "qmlkit"};
    app.require_subcommand(1);
    Registry registry;
    add_data_commands(app, registry);
    add_qsub_commands(app, registry);
    add_cluster_commands(app, registry);
    add_ttn_commands(app, registry);
    add_tomo_commands(app, registry);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        print_error(err, 2, "usage_error", e.what());
        return 2;
    }

    try {
        for (auto &cmd : registry) {
            if (!cmd->app()->parsed()) {
                continue;
            }
            cmd->apply_config_file();
            std::filesystem::create_directories(cmd->out_dir());
            Context ctx(cmd->seed(), cmd->out_dir());
            Json results = cmd->run(ctx);
            Json report;
            report["schema_version"] = kSchemaVersion;
            report["command"] = cmd->name();
            report["seed"] = cmd->seed();
            report["config"] = cmd->resolved_config();
            report["results"] = std::move(results);
            std::string report_path = (std::filesystem::path(cmd->out_dir()) / report_file_name(cmd->name())).string();
            report["artifacts"] = ctx.artifacts();
            write_json_file(report_path, report);
            out << report.dump(2) << '\n';
        }
        return 0;
    } catch (const UsageError &e) {
        print_error(err, 2, "usage_error", e.what());
        return 2;
    } catch (const std::invalid_argument &e) {
        print_error(err, 2, "usage_error", e.what());
        return 2;
    } catch (const std::out_of_range &e) {
        print_error(err, 2, "usage_error", e.what());
        return 2;
    } catch (const DataError &e) {
        print_error(err, 3, "data_error", e.what());
        return 3;
    } catch (const std::filesystem::filesystem_error &e) {
        print_error(err, 3, "data_error", e.what());
        return 3;
    } catch (const NumericalError &e) {
        print_error(err, 4, "numerical_error", e.what());
        return 4;
    } catch (const std::exception &e) {
        print_error(err, 1, "internal_error", e.what());
        return 1;
    }
}

}  // namespace qmlkit::cli
