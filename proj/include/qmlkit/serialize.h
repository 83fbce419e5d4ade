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

#include <string>

#include "json.hpp"
#include "qmlkit/encode.h"
#include "qmlkit/mlp.h"
#include "qmlkit/qcluster.h"
#include "qmlkit/tomo.h"
#include "qmlkit/ttn.h"

namespace qmlkit {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

Json to_json(const RescaleParams &p);
RescaleParams rescaler_from_json(const Json &j);

/// Angles are written reduced into [0, 2 pi).
Json to_json(const TtnModel &m);
TtnModel ttn_model_from_json(const Json &j);

Json to_json(const MulticlassTtnModel &m);
MulticlassTtnModel multiclass_model_from_json(const Json &j);

/// Layer sizes plus all parameters flattened layer by layer: weights in
/// row-major order, then biases.
Json to_json(const Mlp &m);
Mlp mlp_from_json(const Json &j);

Json to_json(const NoiseChannel &c);
NoiseChannel noise_from_json(const Json &j);

Json to_json(const ConfusionMatrix &m);

Json to_json(const InfidelitySummary &s);

/// Parses a file; throws DataError when it is missing or malformed.
Json read_json_file(const std::string &path);
/// Writes with two-space indentation and a trailing newline.
void write_json_file(const std::string &path, const Json &j);

}  // namespace qmlkit
