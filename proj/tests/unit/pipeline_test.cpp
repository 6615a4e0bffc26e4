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

#include "test_support.hpp"

namespace cqarank {
namespace {

using testing::TempDir;

// Toy config with absolute resource paths plus `extra` lines.
std::string write_config(const TempDir& dir, const std::string& extra,
                         const std::string& embeddings = "") {
  std::string toy = testing::toy_dir();
  std::string text =
      "preprocess.stopwords_path = " + toy + "/stopwords.txt\n" +
      "preprocess.lemmas_path = " + toy + "/lemmas.tsv\n" +
      "preprocess.nouns_path = " + toy + "/nouns.txt\n" +
      "embeddings.path = " + (embeddings.empty() ? toy + "/vectors.txt" : embeddings) + "\n" +
      "kg.edges_path = " + toy + "/kg_edges.tsv\n" +
      "kg.senses_path = " + toy + "/kg_senses.tsv\n" +
      "frames.lexicon_path = " + toy + "/frames.tsv\n" + extra;
  return dir.write("config.conf", text);
}

Error config_error(const std::string& extra, const std::string& embeddings = "") {
  TempDir dir;
  try {
    load_config(write_config(dir, extra, embeddings));
  } catch (const Error& e) {
    return e;
  }
  return Error(ErrorKind::Data, "no error");
}

TEST(Config, ToyConfigResolvesRelativePaths) {
  auto cfg = load_config(testing::toy_dir() + "/config.conf");
  EXPECT_TRUE(std::filesystem::exists(cfg.embeddings_path));
  EXPECT_EQ(cfg.train.seed, 13u);
  EXPECT_EQ(cfg.measure_options.graph.depth, 2);
  EXPECT_EQ(cfg.cost_grid.size(), 17u);
  EXPECT_EQ(cfg.measures, default_measures());
}

TEST(Config, ParsesOptions) {
  TempDir dir;
  auto cfg = load_config(write_config(dir,
                                      "# tuned\nranker.grid = 0.5, 2\nkg.depth = 0\nkg.decay = 1\n"
                                      "ranker.threshold_metric = accuracy\ncwasa_denominator = all\n"
                                      "centroid_range = raw\nngram_multiset = true\nmeasures = cos_w1, kga\n"));
  EXPECT_EQ(cfg.cost_grid, (std::vector<double>{0.5, 2.0}));
  EXPECT_EQ(cfg.measure_options.graph.depth, 0);
  EXPECT_EQ(cfg.threshold_metric, ThresholdMetric::Accuracy);
  EXPECT_EQ(cfg.measure_options.cwasa_denominator, CwasaDenominator::All);
  EXPECT_EQ(cfg.measure_options.centroid_range, CentroidRange::Raw);
  EXPECT_TRUE(cfg.measure_options.ngram_multiset);
  EXPECT_EQ(cfg.measures, (std::vector<Measure>{Measure::CosWord1, Measure::Kga}));
}

TEST(Config, Errors) {
  auto missing = config_error("", "/nonexistent/vectors.txt");
  EXPECT_EQ(missing.kind(), ErrorKind::Io);
  EXPECT_NE(std::string(missing.what()).find("/nonexistent/vectors.txt"), std::string::npos);

  for (const char* bad : {"bogus.key = 1\n", "kg.depth = 4\n", "kg.decay = 0\n", "ranker.grid = -1\n",
                          "ranker.threshold_metric = auc\n", "measures = cos_w1, cos_w1\n",
                          "measures = nope\n", "no equals sign\n"}) {
    auto e = config_error(bad);
    EXPECT_EQ(e.kind(), ErrorKind::Io) << bad;
    EXPECT_NE(std::string(e.what()).find("line 8"), std::string::npos) << bad << ": " << e.what();
  }
}

TEST(Extract, ToySubtaskBWritesThirtyFeatures) {
  TempDir dir;
  auto cfg = load_config(testing::toy_dir() + "/config.conf");
  auto s = cmd_extract(cfg, testing::toy_dir() + "/dev.jsonl", Subtask::B, dir.file("f.tsv"), 2);
  EXPECT_EQ(s.features_per_instance, 30u);
  EXPECT_EQ(s.instances, 60u);
  std::size_t lines = 0;
  for_each_line(dir.file("f.tsv"), [&](std::size_t, std::string_view line) {
    EXPECT_EQ(split(line, '\t').size(), 4u);
    ++lines;
  });
  EXPECT_EQ(lines, 30u * 60u);
}

TEST(Extract, EmptyCorpusEmptyDump) {
  TempDir dir;
  auto cfg = load_config(testing::toy_dir() + "/config.conf");
  auto s = cmd_extract(cfg, dir.write("empty.jsonl", ""), Subtask::A, dir.file("f.tsv"));
  EXPECT_EQ(s.instances, 0u);
  EXPECT_EQ(testing::read_file(dir.file("f.tsv")), "");
}

TEST(TrainPredict, SingleCostGridWritesOneModel) {
  TempDir dir;
  auto cfg = load_config(write_config(dir, "ranker.grid = 1\nranker.epochs = 20\n"));
  std::string toy = testing::toy_dir();
  auto s = cmd_train(cfg, toy + "/train.jsonl", toy + "/dev.jsonl", Subtask::B, dir.file("m"));
  ASSERT_EQ(s.runs.size(), 1u);
  EXPECT_FALSE(s.warnings.empty());
  EXPECT_TRUE(std::filesystem::exists(dir.file("m.primary")));
  EXPECT_FALSE(std::filesystem::exists(dir.file("m.contr1")));
}

TEST(TrainPredict, UnlabeledDevNamesInstance) {
  TempDir dir;
  auto cfg = load_config(write_config(dir, "ranker.grid = 1\nranker.epochs = 5\n"));
  std::vector<Thread> dev = {testing::make_thread("D1", 3, 1)};
  dev[0].related[2].relevance_to_orgq.reset();
  write_corpus(dev, dir.file("dev.jsonl"));
  try {
    cmd_train(cfg, testing::toy_dir() + "/train.jsonl", dir.file("dev.jsonl"), Subtask::B, dir.file("m"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "unlabeled instance D1/D1_R3");
  }
}

TEST(TrainPredict, RoundTripAndSchemaMismatch) {
  TempDir dir;
  auto cfg = load_config(write_config(dir, "ranker.grid = 0.25, 1, 4\nranker.epochs = 30\n"));
  std::string toy = testing::toy_dir();
  auto s = cmd_train(cfg, toy + "/train.jsonl", toy + "/dev.jsonl", Subtask::B, dir.file("m"), 3);
  ASSERT_EQ(s.runs.size(), 3u);
  EXPECT_EQ(load_model(dir.file("m.contr1")), s.runs[1].model);

  auto n = cmd_predict(cfg, dir.file("m.primary"), toy + "/dev.jsonl", Subtask::B, dir.file("p.txt"));
  EXPECT_EQ(n, 60u);
  auto report = cmd_evaluate(toy + "/dev.jsonl", dir.file("p.txt"), Subtask::B);
  EXPECT_NEAR(report.map_score, s.runs[0].dev_map, 1e-12);

  try {
    cmd_predict(cfg, dir.file("m.primary"), toy + "/dev.jsonl", Subtask::C, dir.file("p2.txt"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("schema mismatch"), std::string::npos);
  }
  auto fewer = cfg;
  fewer.measures = {Measure::CosWord1};
  EXPECT_THROW(cmd_predict(fewer, dir.file("m.primary"), toy + "/dev.jsonl", Subtask::B, dir.file("p3.txt")),
               Error);
}

TEST(TrainPredict, SeedAndJobsDeterminism) {
  TempDir dir;
  auto cfg = load_config(write_config(dir, "ranker.grid = 1\nranker.epochs = 20\n"));
  std::string toy = testing::toy_dir();
  auto a = cmd_train(cfg, toy + "/train.jsonl", toy + "/dev.jsonl", Subtask::A, dir.file("a"), 1);
  auto b = cmd_train(cfg, toy + "/train.jsonl", toy + "/dev.jsonl", Subtask::A, dir.file("b"), 4);
  EXPECT_EQ(a.runs[0].model, b.runs[0].model);
  EXPECT_EQ(testing::read_file(dir.file("a.primary")), testing::read_file(dir.file("b.primary")));
}

}  // namespace
}  // namespace cqarank
