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

#include "qmlkit/serialize.h"

#include <cmath>
#include <fstream>
#include <numbers>

#include "qmlkit/errors.h"

namespace qmlkit {

namespace {

void check_header(const Json &j, const std::string &kind) {
    if (!j.is_object()) {
        throw DataError("expected a JSON object for " + kind);
    }
    const Json *version = j.contains("schema_version") ? &j.at("schema_version") : nullptr;
    if (version == nullptr || !version->is_number_integer() || version->get<int>() != kSchemaVersion) {
        throw DataError("unsupported schema_version for " + kind);
    }
    std::string found = j.contains("kind") && j.at("kind").is_string() ? j.at("kind").get<std::string>() : "";
    if (found != kind) {
        throw DataError("expected kind '" + kind + "', got '" + found + "'");
    }
}

Json header(const std::string &kind) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

double wrap_angle(double t) {
    constexpr double two_pi = 2 * std::numbers::pi;
    double w = std::fmod(t, two_pi);
    if (w < 0) {
        w += two_pi;
    }
    return w >= two_pi ? 0.0 : w;
}

std::vector<double> wrapped(const std::vector<double> &thetas) {
    std::vector<double> out;
    for (double t : thetas) {
        out.push_back(wrap_angle(t));
    }
    return out;
}

/// Runs a conversion, turning JSON type errors into DataError.
template <typename F>
auto guarded(const std::string &what, F &&f) {
    try {
        return f();
    } catch (const Json::exception &e) {
        throw DataError("malformed " + what + ": " + e.what());
    } catch (const std::invalid_argument &e) {
        throw DataError("invalid " + what + ": " + e.what());
    }
}

}  // namespace

Json to_json(const RescaleParams &p) {
    return Json{{"min", p.min}, {"max", p.max}};
}

RescaleParams rescaler_from_json(const Json &j) {
    return guarded("rescaler", [&] {
        RescaleParams p;
        p.min = j.at("min").get<std::vector<double>>();
        p.max = j.at("max").get<std::vector<double>>();
        if (p.min.size() != p.max.size()) {
            throw DataError("rescaler min/max lengths differ");
        }
        return p;
    });
}

Json to_json(const TtnModel &m) {
    Json j = header("ttn");
    j["num_features"] = m.num_features;
    j["class_count"] = 2;
    j["thetas"] = wrapped(m.thetas);
    j["rescaler"] = to_json(m.rescaler);
    return j;
}

TtnModel ttn_model_from_json(const Json &j) {
    check_header(j, "ttn");
    return guarded("ttn model", [&] {
        TtnModel m;
        m.num_features = j.at("num_features").get<size_t>();
        m.thetas = j.at("thetas").get<std::vector<double>>();
        m.rescaler = rescaler_from_json(j.at("rescaler"));
        m.validate();
        return m;
    });
}

Json to_json(const MulticlassTtnModel &m) {
    Json j = header("ttn_multiclass");
    j["num_features"] = m.branches.empty() ? 0 : m.branches[0].num_features;
    j["class_count"] = m.class_count();
    Json thetas = Json::array();
    for (const auto &b : m.branches) {
        thetas.push_back(wrapped(b.thetas));
    }
    j["branch_thetas"] = thetas;
    j["rescaler"] = m.branches.empty() ? Json::object() : to_json(m.branches[0].rescaler);
    return j;
}

MulticlassTtnModel multiclass_model_from_json(const Json &j) {
    check_header(j, "ttn_multiclass");
    return guarded("multiclass model", [&] {
        MulticlassTtnModel m;
        RescaleParams rescaler = rescaler_from_json(j.at("rescaler"));
        size_t width = j.at("num_features").get<size_t>();
        for (const auto &t : j.at("branch_thetas")) {
            m.branches.push_back(TtnModel{width, t.get<std::vector<double>>(), rescaler});
        }
        if (m.class_count() != j.at("class_count").get<size_t>()) {
            throw DataError("class_count does not match the number of branches");
        }
        m.validate();
        return m;
    });
}

Json to_json(const Mlp &m) {
    Json j = header("mlp");
    j["layer_sizes"] = m.layer_sizes();
    j["hidden_activation"] = "tanh";
    j["output_activation"] = "linear";
    std::vector<double> params;
    for (size_t l = 0; l < m.layer_count(); ++l) {
        const auto &w = m.weights(l);
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            for (Eigen::Index c = 0; c < w.cols(); ++c) {
                params.push_back(w(r, c));
            }
        }
        for (Eigen::Index r = 0; r < m.biases(l).size(); ++r) {
            params.push_back(m.biases(l)(r));
        }
    }
    j["parameters"] = params;
    return j;
}

Mlp mlp_from_json(const Json &j) {
    check_header(j, "mlp");
    return guarded("mlp", [&] {
        Mlp m(j.at("layer_sizes").get<std::vector<size_t>>());
        auto params = j.at("parameters").get<std::vector<double>>();
        if (params.size() != m.parameter_count()) {
            throw DataError("mlp parameter count does not match layer sizes");
        }
        size_t k = 0;
        for (size_t l = 0; l < m.layer_count(); ++l) {
            auto &w = m.weights(l);
            for (Eigen::Index r = 0; r < w.rows(); ++r) {
                for (Eigen::Index c = 0; c < w.cols(); ++c) {
                    w(r, c) = params[k++];
                }
            }
            for (Eigen::Index r = 0; r < m.biases(l).size(); ++r) {
                m.biases(l)(r) = params[k++];
            }
        }
        m.validate();
        return m;
    });
}

Json to_json(const NoiseChannel &c) {
    Json j;
    j["kind"] = noise_kind_name(c.kind);
    switch (c.kind) {
        case NoiseKind::None:
            break;
        case NoiseKind::SystematicUnitary:
            j["axis"] = c.axis ? Json(*c.axis) : Json();
            j["angle"] = c.angle;
            break;
        case NoiseKind::RandomUnitary:
            j["axis"] = c.axis ? Json(*c.axis) : Json();
            j["angle_std"] = c.angle_std;
            break;
        case NoiseKind::AmplitudePhase:
            j["gamma"] = c.gamma;
            j["lambda"] = c.lambda;
            break;
    }
    return j;
}

NoiseChannel noise_from_json(const Json &j) {
    return guarded("noise channel", [&] {
        NoiseChannel c;
        c.kind = parse_noise_kind(j.at("kind").get<std::string>());
        if (j.contains("axis") && !j.at("axis").is_null()) {
            c.axis = j.at("axis").get<BlochVector>();
        }
        c.angle = j.value("angle", c.angle);
        c.angle_std = j.value("angle_std", c.angle_std);
        c.gamma = j.value("gamma", c.gamma);
        c.lambda = j.value("lambda", c.lambda);
        return c;
    });
}

Json to_json(const ConfusionMatrix &m) {
    return Json{{"counts", m.rows()}, {"normalized", m.normalized().rows()}, {"mean_diagonal", m.mean_diagonal()}};
}

Json to_json(const InfidelitySummary &s) {
    return Json{{"mean", s.mean}, {"median", s.median}, {"q1", s.q1}, {"q3", s.q3}};
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw DataError(path + ": " + e.what());
    }
}

void write_json_file(const std::string &path, const Json &j) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path + "'");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw DataError("failed writing '" + path + "'");
    }
}

}  // namespace qmlkit
