// Copyright 2026 The cqarank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

namespace cqarank {
namespace {

Resources toy_resources(const std::vector<Thread>& threads) {
  Resources res = load_resources(load_config(testing::toy_dir() + "/config.conf"));
  res.idf = build_corpus_idf(threads, res.lex);
  return res;
}

TEST(FieldPairs, PerSubtask) {
  EXPECT_EQ(field_pairs_for_subtask(Subtask::A).size(), 3u);
  EXPECT_EQ(field_pairs_for_subtask(Subtask::B).size(), 3u);
  auto c = field_pairs_for_subtask(Subtask::C);
  ASSERT_EQ(c.size(), 9u);
  EXPECT_EQ(field_pairs_for_subtask(Subtask::A)[2].name(), "relq.full~comment");
  EXPECT_EQ(field_pairs_for_subtask(Subtask::B)[0].name(), "orgq.subject~relq.subject");
  EXPECT_EQ(c[8].name(), "orgq.full~comment");
}

TEST(FeatureNames, CountsAndOrder) {
  auto ms = default_measures();
  EXPECT_EQ(ms.size(), 10u);
  EXPECT_EQ(feature_names(Subtask::A, ms).size(), 31u);
  EXPECT_EQ(feature_names(Subtask::B, ms).size(), 30u);
  EXPECT_EQ(feature_names(Subtask::C, ms).size(), 91u);
  auto names = feature_names(Subtask::C, ms);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), names.size());
}

TEST(Measures, NamesRoundTrip) {
  for (Measure m : kAllMeasures) EXPECT_EQ(parse_measure(measure_name(m)), m);
  EXPECT_FALSE(parse_measure("cosine").has_value());
}

TEST(ExtractFeatures, CountsAndSearchRank) {
  std::vector<Thread> threads = {testing::make_thread("Q1", 2, 2)};
  threads[0].related[1].search_rank.reset();
  auto res = toy_resources(threads);
  AnalyzedCorpus corpus(threads, res, 1);

  auto b = extract_features(corpus, find_instance(threads, Subtask::B, "Q1", "Q1_R1"), res);
  EXPECT_EQ(b.values.size(), 30u);
  EXPECT_FALSE(b.values.contains(kSearchRankFeature));

  auto a = extract_features(corpus, find_instance(threads, Subtask::A, "Q1_R1", "Q1_R1_C2"), res);
  EXPECT_EQ(a.values.size(), 31u);
  EXPECT_EQ(a.values.at(kSearchRankFeature), 1.0);

  auto c = extract_features(corpus, find_instance(threads, Subtask::C, "Q1", "Q1_R2_C1"), res);
  EXPECT_EQ(c.values.size(), 91u);
  EXPECT_EQ(c.values.at(kSearchRankFeature), 0.0);

  for (const auto& fv : {a, b, c}) {
    for (const auto& [name, v] : fv.values) {
      EXPECT_GE(v, 0.0) << name;
      EXPECT_LE(v, 1.0) << name;
    }
  }
}

TEST(ExtractFeatures, UnknownIdsNamed) {
  std::vector<Thread> threads = {testing::make_thread("Q1", 2, 2)};
  try {
    find_instance(threads, Subtask::B, "Q1", "Q1_R7");
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "unknown id Q1_R7");
  }
  try {
    find_instance(threads, Subtask::B, "Q9", "Q1_R1");
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "unknown id Q9");
  }
}

TEST(ExtractFeatures, IndependentOfJobs) {
  auto threads = load_corpus(testing::toy_dir() + "/dev.jsonl");
  auto res = toy_resources(threads);
  auto instances = enumerate_instances(threads, Subtask::C);
  AnalyzedCorpus serial(threads, res, 1);
  AnalyzedCorpus parallel(threads, res, 4);
  auto v1 = extract_all(serial, instances, res, 1);
  auto v4 = extract_all(parallel, instances, res, 4);
  ASSERT_EQ(v1.size(), v4.size());
  for (std::size_t i = 0; i < v1.size(); ++i) EXPECT_EQ(v1[i].values, v4[i].values);
}

FeatureVector fv(std::map<std::string, double> values) {
  FeatureVector v;
  v.instance.candidate_id = "c";
  v.values = std::move(values);
  return v;
}

TEST(Schema, FitAndNormalize) {
  std::vector<FeatureVector> two = {fv({{"f", 0.0}}), fv({{"f", 2.0}})};
  auto s = fit_schema(two);
  EXPECT_EQ(s.means[0], 1.0);
  EXPECT_EQ(s.stddevs[0], 1.0);
  EXPECT_EQ(normalize(fv({{"f", 1.0}}), s)[0], 0.0);
  EXPECT_EQ(normalize(fv({{"f", 2.0}}), s)[0], 1.0);

  std::vector<FeatureVector> one = {fv({{"f", 3.0}, {"g", 4.0}})};
  auto s1 = fit_schema(one);
  EXPECT_EQ(s1.stddevs, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(normalize(fv({{"f", 100.0}, {"g", -1.0}}), s1), (std::vector<double>{0.0, 0.0}));
}

TEST(Schema, NameMismatchListsDifference) {
  std::vector<FeatureVector> bad = {fv({{"f", 0.0}, {"g", 0.0}}), fv({{"f", 0.0}, {"h", 0.0}})};
  try {
    fit_schema(bad);
    FAIL();
  } catch (const Error& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("g, h"), std::string::npos) << msg;
  }
  EXPECT_THROW(fit_schema(std::span<const FeatureVector>{}), Error);
}

TEST(FeatureDump, Format) {
  FeatureVector v = fv({{"b", 0.25}, {"a", 1.0}});
  v.instance.query_id = "Q1";
  std::ostringstream out;
  write_feature_dump(std::span<const FeatureVector>(&v, 1), out);
  EXPECT_EQ(out.str(), "Q1\tc\ta\t1\nQ1\tc\tb\t0.25\n");
}

}  // namespace
}  // namespace cqarank
