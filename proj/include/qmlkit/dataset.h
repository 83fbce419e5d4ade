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

#include <array>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "qmlkit/encode.h"
#include "qmlkit/rng.h"

namespace qmlkit {

/// Feature vectors with integer class labels. `labels` is empty for an
/// unlabeled dataset; otherwise it has one entry per vector in
/// [0, class_count).
struct LabeledDataset {
    std::vector<FeatureVector> vectors;
    std::vector<int> labels;
    size_t class_count = 0;
    std::vector<std::string> feature_names;
    std::vector<std::string> class_names;

    size_t size() const {
        return vectors.size();
    }
    size_t dimension() const {
        return vectors.empty() ? 0 : vectors.front().size();
    }
    bool is_labeled() const {
        return !labels.empty();
    }
    /// Throws DataError on inconsistent lengths, dimensions or labels.
    void validate() const;
    /// Rows picked by index, keeping metadata.
    LabeledDataset subset(const std::vector<size_t> &indices) const;
};

struct DatasetSplit {
    LabeledDataset train;
    LabeledDataset test;
};

/// Per-class shuffle; round(train_fraction * class size) rows of each class go
/// to train, the rest to test. Row order within each part follows class id,
/// then shuffled position.
DatasetSplit stratified_split(const LabeledDataset &data, double train_fraction, Rng &rng);

/// Keeps only rows of the listed classes and relabels them 0..classes.size()-1
/// in the given order.
LabeledDataset select_classes(const LabeledDataset &data, const std::vector<int> &classes);

struct BlobSpec {
    size_t classes = 4;
    size_t per_class = 25;
    double sigma = 0.6;
    /// One center per class; if empty, classes are placed evenly on a circle
    /// of `radius` around `offset`.
    std::vector<std::array<double, 2>> centers;
    double radius = 2.8;
    std::array<double, 2> offset{4.0, 4.0};
};

/// Isotropic 2D Gaussian blobs, rows grouped by class.
LabeledDataset make_blobs(const BlobSpec &spec, Rng &rng);

/// Fisher's Iris: 150 rows, 4 features, classes setosa/versicolor/virginica.
LabeledDataset iris_dataset();

/// CSV with a header row of feature names followed by a final `label` column.
/// Labels may be blank for every row (unlabeled data). Diagnostics name the
/// source, line and column. Throws DataError.
LabeledDataset read_csv(std::istream &in, const std::string &source_name = "<csv>");
LabeledDataset read_csv_file(const std::string &path);
/// Values are written with 17 significant digits.
void write_csv(std::ostream &out, const LabeledDataset &data);
void write_csv_file(const std::string &path, const LabeledDataset &data);

/// printf("%.17g").
std::string format_double(double value);

}  // namespace qmlkit
