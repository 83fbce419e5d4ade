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

#include "qmlkit/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qmlkit/errors.h"

namespace qmlkit {

namespace {

std::vector<std::string> split_fields(const std::string &line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    for (auto &f : fields) {
        auto first = f.find_first_not_of(" \t");
        auto last = f.find_last_not_of(" \t");
        f = first == std::string::npos ? std::string() : f.substr(first, last - first + 1);
    }
    return fields;
}

[[noreturn]] void fail(const std::string &source, size_t line, size_t column, const std::string &what) {
    throw DataError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what);
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void LabeledDataset::validate() const {
    if (vectors.empty()) {
        return;
    }
    size_t d = dimension();
    for (size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != d) {
            throw DataError("row " + std::to_string(i) + " has dimension " + std::to_string(vectors[i].size()) +
                            ", expected " + std::to_string(d));
        }
    }
    if (!labels.empty()) {
        if (labels.size() != vectors.size()) {
            throw DataError("label count does not match vector count");
        }
        for (int y : labels) {
            if (y < 0 || static_cast<size_t>(y) >= class_count) {
                throw DataError("label " + std::to_string(y) + " outside [0, " + std::to_string(class_count) + ")");
            }
        }
    }
}

LabeledDataset LabeledDataset::subset(const std::vector<size_t> &indices) const {
    LabeledDataset out;
    out.class_count = class_count;
    out.feature_names = feature_names;
    out.class_names = class_names;
    for (size_t i : indices) {
        out.vectors.push_back(vectors.at(i));
        if (is_labeled()) {
            out.labels.push_back(labels.at(i));
        }
    }
    return out;
}

DatasetSplit stratified_split(const LabeledDataset &data, double train_fraction, Rng &rng) {
    if (!(train_fraction > 0 && train_fraction < 1)) {
        throw std::invalid_argument("train_fraction must lie in (0, 1)");
    }
    if (!data.is_labeled()) {
        throw std::invalid_argument("stratified_split needs labels");
    }
    std::vector<size_t> train_idx, test_idx;
    for (size_t c = 0; c < data.class_count; ++c) {
        std::vector<size_t> members;
        for (size_t i = 0; i < data.size(); ++i) {
            if (data.labels[i] == static_cast<int>(c)) {
                members.push_back(i);
            }
        }
        for (size_t i = members.size(); i > 1; --i) {
            std::swap(members[i - 1], members[rng.index(i)]);
        }
        auto n_train = static_cast<size_t>(std::lround(train_fraction * static_cast<double>(members.size())));
        train_idx.insert(train_idx.end(), members.begin(), members.begin() + n_train);
        test_idx.insert(test_idx.end(), members.begin() + n_train, members.end());
    }
    return {data.subset(train_idx), data.subset(test_idx)};
}

LabeledDataset select_classes(const LabeledDataset &data, const std::vector<int> &classes) {
    if (classes.empty()) {
        throw std::invalid_argument("no classes selected");
    }
    LabeledDataset out;
    out.feature_names = data.feature_names;
    out.class_count = classes.size();
    for (int c : classes) {
        if (c < 0 || static_cast<size_t>(c) >= data.class_count) {
            throw std::invalid_argument("selected class " + std::to_string(c) + " does not exist");
        }
        if (static_cast<size_t>(c) < data.class_names.size()) {
            out.class_names.push_back(data.class_names[c]);
        }
    }
    for (size_t i = 0; i < data.size(); ++i) {
        auto it = std::find(classes.begin(), classes.end(), data.labels.at(i));
        if (it != classes.end()) {
            out.vectors.push_back(data.vectors[i]);
            out.labels.push_back(static_cast<int>(it - classes.begin()));
        }
    }
    return out;
}

LabeledDataset make_blobs(const BlobSpec &spec, Rng &rng) {
    if (spec.classes == 0 || spec.per_class == 0) {
        throw std::invalid_argument("blob generator needs at least one class and one point per class");
    }
    if (!spec.centers.empty() && spec.centers.size() != spec.classes) {
        throw std::invalid_argument("blob centers must match the class count");
    }
    if (!(spec.sigma >= 0)) {
        throw std::invalid_argument("blob sigma must be non-negative");
    }
    std::vector<std::array<double, 2>> centers = spec.centers;
    for (size_t c = 0; centers.size() < spec.classes; ++c) {
        double angle = std::numbers::pi / 4 + 2 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(spec.classes);
        centers.push_back({spec.offset[0] + spec.radius * std::cos(angle), spec.offset[1] + spec.radius * std::sin(angle)});
    }
    LabeledDataset ds;
    ds.feature_names = {"x0", "x1"};
    ds.class_count = spec.classes;
    for (size_t c = 0; c < spec.classes; ++c) {
        for (size_t i = 0; i < spec.per_class; ++i) {
            double x = rng.normal(centers[c][0], spec.sigma);
            double y = rng.normal(centers[c][1], spec.sigma);
            ds.vectors.push_back({x, y});
            ds.labels.push_back(static_cast<int>(c));
        }
    }
    return ds;
}

LabeledDataset read_csv(std::istream &in, const std::string &source_name) {
    std::string line;
    size_t line_no = 0;
    LabeledDataset ds;
    bool have_header = false;
    size_t columns = 0;
    bool any_labeled = false, any_unlabeled = false;
    int max_label = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto fields = split_fields(line);
        if (!have_header) {
            if (fields.size() < 2) {
                fail(source_name, line_no, 1, "header needs at least one feature column and a label column");
            }
            columns = fields.size();
            ds.feature_names.assign(fields.begin(), fields.end() - 1);
            have_header = true;
            continue;
        }
        if (fields.size() != columns) {
            fail(source_name, line_no, std::min(fields.size(), columns) + 1,
                 "expected " + std::to_string(columns) + " fields, found " + std::to_string(fields.size()));
        }
        FeatureVector row(columns - 1);
        for (size_t j = 0; j + 1 < columns; ++j) {
            const std::string &f = fields[j];
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), row[j]);
            if (f.empty() || ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(row[j])) {
                fail(source_name, line_no, j + 1, "invalid number '" + f + "'");
            }
        }
        const std::string &lab = fields.back();
        if (lab.empty()) {
            any_unlabeled = true;
        } else {
            int y = 0;
            auto [ptr, ec] = std::from_chars(lab.data(), lab.data() + lab.size(), y);
            if (ec != std::errc() || ptr != lab.data() + lab.size() || y < 0) {
                fail(source_name, line_no, columns, "invalid label '" + lab + "'");
            }
            any_labeled = true;
            max_label = std::max(max_label, y);
            ds.labels.push_back(y);
        }
        if (any_labeled && any_unlabeled) {
            fail(source_name, line_no, columns, "labels must be given for every row or for none");
        }
        ds.vectors.push_back(std::move(row));
    }
    if (!have_header) {
        throw DataError(source_name + ": empty CSV (missing header)");
    }
    ds.class_count = static_cast<size_t>(max_label + 1);
    return ds;
}

LabeledDataset read_csv_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path + "'");
    }
    return read_csv(in, path);
}

void write_csv(std::ostream &out, const LabeledDataset &data) {
    data.validate();
    size_t d = data.dimension();
    for (size_t j = 0; j < d; ++j) {
        out << (j < data.feature_names.size() ? data.feature_names[j] : "x" + std::to_string(j)) << ',';
    }
    out << "label\n";
    for (size_t i = 0; i < data.size(); ++i) {
        for (double v : data.vectors[i]) {
            out << format_double(v) << ',';
        }
        if (data.is_labeled()) {
            out << data.labels[i];
        }
        out << '\n';
    }
}

void write_csv_file(const std::string &path, const LabeledDataset &data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write '" + path + "'");
    }
    write_csv(out, data);
}

}  // namespace qmlkit
