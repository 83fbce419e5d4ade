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

#include <gtest/gtest.h>

#include <numbers>
#include <sstream>

#include "qmlkit/errors.h"
#include "test_util.h"

using namespace qmlkit;

TEST(iris, shape) {
    LabeledDataset iris = iris_dataset();
    EXPECT_EQ(iris.size(), 150u);
    EXPECT_EQ(iris.dimension(), 4u);
    EXPECT_EQ(iris.class_count, 3u);
    for (int c = 0; c < 3; ++c) {
        EXPECT_EQ(std::count(iris.labels.begin(), iris.labels.end(), c), 50);
    }
    EXPECT_DOUBLE_EQ(iris.vectors[0][0], 5.1);
    EXPECT_NO_THROW(iris.validate());
}

TEST(split, stratified_seventy_thirty) {
    Rng rng(1);
    DatasetSplit s = stratified_split(iris_dataset(), 0.7, rng);
    EXPECT_EQ(s.train.size(), 105u);
    EXPECT_EQ(s.test.size(), 45u);
    for (int c = 0; c < 3; ++c) {
        EXPECT_EQ(std::count(s.train.labels.begin(), s.train.labels.end(), c), 35);
    }
}

TEST(split, deterministic_and_disjoint) {
    LabeledDataset iris = iris_dataset();
    Rng a(5), b(5);
    DatasetSplit s1 = stratified_split(iris, 0.7, a), s2 = stratified_split(iris, 0.7, b);
    EXPECT_EQ(s1.train.vectors, s2.train.vectors);
    for (const auto &x : s1.test.vectors) {
        EXPECT_EQ(std::count(s1.train.vectors.begin(), s1.train.vectors.end(), x), 0);
    }
}

TEST(split, rescaler_fit_on_train_clips_test) {
    Rng rng(2);
    DatasetSplit s = stratified_split(iris_dataset(), 0.7, rng);
    RescaleParams p = fit_rescaler(s.train.vectors);
    for (const auto &x : s.test.vectors) {
        for (double v : p.apply(x)) {
            EXPECT_GE(v, 0);
            EXPECT_LE(v, std::numbers::pi / 2);
        }
    }
}

TEST(select_classes, relabels_in_order) {
    LabeledDataset pair = select_classes(iris_dataset(), {2, 0});
    EXPECT_EQ(pair.size(), 100u);
    EXPECT_EQ(pair.class_count, 2u);
    EXPECT_EQ(pair.labels.front(), 1);  // setosa rows come first in the source
    EXPECT_EQ(pair.class_names, (std::vector<std::string>{"virginica", "setosa"}));
    EXPECT_THROW(select_classes(iris_dataset(), {3}), std::invalid_argument);
}

TEST(blobs, deterministic_with_requested_shape) {
    BlobSpec spec;
    spec.per_class = 10;
    Rng a(3), b(3);
    LabeledDataset x = make_blobs(spec, a), y = make_blobs(spec, b);
    EXPECT_EQ(x.size(), 40u);
    EXPECT_EQ(x.class_count, 4u);
    EXPECT_EQ(x.vectors, y.vectors);
}

TEST(csv, round_trip_is_lossless) {
    Rng rng(4);
    LabeledDataset ds;
    ds.class_count = 3;
    ds.feature_names = {"a", "b", "c"};
    for (int i = 0; i < 50; ++i) {
        ds.vectors.push_back(test_util::random_vector(3, rng, -1e6, 1e6));
        ds.vectors.back()[1] = rng.uniform() * 1e-300;
        ds.labels.push_back(static_cast<int>(rng.index(3)));
    }
    std::stringstream ss;
    write_csv(ss, ds);
    LabeledDataset back = read_csv(ss);
    EXPECT_EQ(back.vectors, ds.vectors);
    EXPECT_EQ(back.labels, ds.labels);
    EXPECT_EQ(back.feature_names, ds.feature_names);
}

TEST(csv, unlabeled_rows) {
    std::stringstream ss("x,y,label\n1,2,\n3,4,\n");
    LabeledDataset ds = read_csv(ss);
    EXPECT_EQ(ds.size(), 2u);
    EXPECT_FALSE(ds.is_labeled());
}

TEST(csv, diagnostics_name_line_and_column) {
    std::stringstream bad_number("x,y,label\n1,2,0\n1,abc,1\n");
    try {
        read_csv(bad_number, "data.csv");
        FAIL() << "expected DataError";
    } catch (const DataError &e) {
        EXPECT_EQ(std::string(e.what()), "data.csv:3:2: invalid number 'abc'");
    }
    std::stringstream short_row("x,y,label\n1,0\n");
    EXPECT_THROW(read_csv(short_row), DataError);
    std::stringstream mixed("x,label\n1,0\n2,\n");
    EXPECT_THROW(read_csv(mixed), DataError);
    std::stringstream bad_label("x,label\n1,-2\n");
    EXPECT_THROW(read_csv(bad_label), DataError);
    std::stringstream empty("");
    EXPECT_THROW(read_csv(empty), DataError);
    EXPECT_THROW(read_csv_file("/nonexistent/file.csv"), DataError);
}
