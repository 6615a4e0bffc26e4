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

// Configuration and the end-to-end commands behind the CLI: extract, train,
// predict and evaluate.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "cqarank/common.hpp"
#include "cqarank/corpus.hpp"
#include "cqarank/evaluation.hpp"
#include "cqarank/features.hpp"
#include "cqarank/ranker.hpp"

namespace cqarank {

struct Config {
  std::string stopwords_path;
  std::string lemmas_path;
  std::string nouns_path;
  std::string embeddings_path;
  std::string kg_edges_path;
  std::string kg_senses_path;
  std::string frames_lexicon_path;

  MeasureOptions measure_options;
  std::vector<Measure> measures = default_measures();

  std::vector<double> cost_grid = default_cost_grid();
  TrainOptions train;
  ThresholdMetric threshold_metric = ThresholdMetric::F1;
};

namespace detail {

inline std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  for (auto part : split(s, ',')) {
    part = trim(part);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

}  // namespace detail

// `key = value` lines; '#' starts a comment line. Relative paths resolve
// against the directory of the config file, and every path must exist.
inline Config load_config(const std::string& path) {
  namespace fs = std::filesystem;
  Config cfg;
  fs::path base = fs::path(path).parent_path();
  std::map<std::string, std::string*> path_keys = {
      {"preprocess.stopwords_path", &cfg.stopwords_path},
      {"preprocess.lemmas_path", &cfg.lemmas_path},
      {"preprocess.nouns_path", &cfg.nouns_path},
      {"embeddings.path", &cfg.embeddings_path},
      {"kg.edges_path", &cfg.kg_edges_path},
      {"kg.senses_path", &cfg.kg_senses_path},
      {"frames.lexicon_path", &cfg.frames_lexicon_path},
  };
  auto fail = [&](std::size_t lineno, const std::string& what) -> Error {
    return Error(ErrorKind::Io, path + ": line " + std::to_string(lineno) + ": " + what);
  };
  for_each_line(path, [&](std::size_t lineno, std::string_view line) {
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') return;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) throw fail(lineno, "expected key = value");
    std::string key(trim(t.substr(0, eq)));
    std::string value(trim(t.substr(eq + 1)));
    if (auto it = path_keys.find(key); it != path_keys.end()) {
      fs::path p(value);
      *it->second = (p.is_absolute() || base.empty() ? p : base / p).lexically_normal().string();
    } else if (key == "kg.depth") {
      long long d = 0;
      if (!parse_long(value, d) || d < 0 || d > kMaxGraphDepth)
        throw fail(lineno, "kg.depth must be an integer in [0, " + std::to_string(kMaxGraphDepth) + "]");
      cfg.measure_options.graph.depth = static_cast<int>(d);
    } else if (key == "kg.decay") {
      double g = 0.0;
      if (!parse_double(value, g) || !(g > 0.0 && g <= 1.0)) throw fail(lineno, "kg.decay must be in (0,1]");
      cfg.measure_options.graph.decay = g;
    } else if (key == "ranker.grid") {
      cfg.cost_grid.clear();
      for (auto item : detail::split_list(value)) {
        double c = 0.0;
        if (!parse_double(item, c) || !(c > 0.0) || !std::isfinite(c))
          throw fail(lineno, "ranker.grid values must be positive reals");
        cfg.cost_grid.push_back(c);
      }
      if (cfg.cost_grid.empty()) throw fail(lineno, "ranker.grid is empty");
    } else if (key == "ranker.epochs") {
      long long e = 0;
      if (!parse_long(value, e) || e < 1 || e > 1000000) throw fail(lineno, "ranker.epochs must be a positive integer");
      cfg.train.epochs = static_cast<int>(e);
    } else if (key == "ranker.seed") {
      long long s = 0;
      if (!parse_long(value, s) || s < 0) throw fail(lineno, "ranker.seed must be a non-negative integer");
      cfg.train.seed = static_cast<std::uint64_t>(s);
    } else if (key == "ranker.threshold_metric") {
      if (value == "f1") cfg.threshold_metric = ThresholdMetric::F1;
      else if (value == "accuracy") cfg.threshold_metric = ThresholdMetric::Accuracy;
      else throw fail(lineno, "ranker.threshold_metric must be f1 or accuracy");
    } else if (key == "cwasa_denominator") {
      if (value == "invocab") cfg.measure_options.cwasa_denominator = CwasaDenominator::InVocab;
      else if (value == "all") cfg.measure_options.cwasa_denominator = CwasaDenominator::All;
      else throw fail(lineno, "cwasa_denominator must be invocab or all");
    } else if (key == "centroid_range") {
      if (value == "unit") cfg.measure_options.centroid_range = CentroidRange::Unit;
      else if (value == "raw") cfg.measure_options.centroid_range = CentroidRange::Raw;
      else throw fail(lineno, "centroid_range must be unit or raw");
    } else if (key == "ngram_multiset") {
      if (value == "true") cfg.measure_options.ngram_multiset = true;
      else if (value == "false") cfg.measure_options.ngram_multiset = false;
      else throw fail(lineno, "ngram_multiset must be true or false");
    } else if (key == "measures") {
      cfg.measures.clear();
      for (auto item : detail::split_list(value)) {
        auto m = parse_measure(item);
        if (!m) throw fail(lineno, "unknown measure '" + std::string(item) + "'");
        if (std::find(cfg.measures.begin(), cfg.measures.end(), *m) != cfg.measures.end())
          throw fail(lineno, "measure '" + std::string(item) + "' listed twice");
        cfg.measures.push_back(*m);
      }
      if (cfg.measures.empty()) throw fail(lineno, "measures is empty");
    } else {
      throw fail(lineno, "unknown key '" + key + "'");
    }
  });
  for (const auto& [key, target] : path_keys) {
    if (target->empty()) throw io_error(path + ": missing required key " + key);
    if (!fs::exists(*target)) throw io_error(key + ": no such file " + *target);
  }
  return cfg;
}

// Loads every resource file named by the config. The idf table is left
// empty; it comes from the training corpus or the model.
inline Resources load_resources(const Config& cfg) {
  Resources res;
  res.lex = load_lex_resources(cfg.stopwords_path, cfg.lemmas_path, cfg.nouns_path);
  res.vectors = load_vectors(cfg.embeddings_path);
  res.network = load_network(cfg.kg_edges_path, cfg.kg_senses_path);
  res.frames = load_frame_lexicon(cfg.frames_lexicon_path);
  res.options = cfg.measure_options;
  res.measures = cfg.measures;
  return res;
}

// Query groups in first-appearance order with normalized vectors, graded
// targets and binary relevance.
inline std::vector<QueryGroup> build_groups(std::span<const FeatureVector> vectors,
                                            const FeatureSchema& schema) {
  std::vector<QueryGroup> groups;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& fv : vectors) {
    auto [it, inserted] = index.try_emplace(fv.instance.query_id, groups.size());
    if (inserted) groups.push_back({fv.instance.query_id, {}});
    GroupMember m;
    m.candidate_id = fv.instance.candidate_id;
    m.x = normalize(fv, schema);
    if (fv.instance.gold_label) {
      m.target = grade_label(*fv.instance.gold_label);
      m.relevant = binarize_label(*fv.instance.gold_label);
    }
    groups[it->second].members.push_back(std::move(m));
  }
  return groups;
}

// --- extract --------------------------------------------------------------

struct ExtractSummary {
  std::size_t instances = 0;
  std::size_t features_per_instance = 0;
};

inline ExtractSummary cmd_extract(const Config& cfg, const std::string& corpus_path, Subtask subtask,
                                  const std::string& out_path, unsigned jobs = 1) {
  Resources res = load_resources(cfg);
  std::vector<Thread> threads = load_corpus(corpus_path);
  if (!threads.empty()) res.idf = build_corpus_idf(threads, res.lex);
  AnalyzedCorpus analyzed(threads, res, jobs);
  auto instances = enumerate_instances(threads, subtask);
  auto vectors = extract_all(analyzed, instances, res, jobs);
  std::ostringstream buf;
  write_feature_dump(vectors, buf);
  std::ofstream out = open_output(out_path);
  out << buf.str();
  if (!out) throw io_error("write failed: " + out_path);
  ExtractSummary s;
  s.instances = vectors.size();
  s.features_per_instance = vectors.empty() ? feature_names(subtask, cfg.measures).size()
                                            : vectors.front().values.size();
  return s;
}

// --- train ----------------------------------------------------------------

struct TrainedRun {
  std::string name;  // primary, contr1, contr2
  std::string path;
  RankModel model;
  double dev_map = 0.0;
  double dev_threshold_metric = 0.0;
};

struct TrainSummary {
  std::vector<CostRun> grid;
  std::vector<TrainedRun> runs;
  std::vector<std::string> warnings;
};

inline TrainSummary cmd_train(const Config& cfg, const std::string& train_path,
                              const std::string& dev_path, Subtask subtask,
                              const std::string& out_prefix, unsigned jobs = 1) {
  Resources res = load_resources(cfg);
  std::vector<Thread> train_threads = load_corpus(train_path);
  std::vector<Thread> dev_threads = load_corpus(dev_path);
  auto train_instances = enumerate_instances(train_threads, subtask);
  auto dev_instances = enumerate_instances(dev_threads, subtask);
  require_labeled(train_instances);
  require_labeled(dev_instances);
  if (train_instances.empty()) throw data_error("training corpus has no instances");
  if (dev_instances.empty()) throw data_error("dev corpus has no instances");

  res.idf = build_corpus_idf(train_threads, res.lex);
  AnalyzedCorpus train_corpus(train_threads, res, jobs);
  AnalyzedCorpus dev_corpus(dev_threads, res, jobs);
  auto train_vectors = extract_all(train_corpus, train_instances, res, jobs);
  auto dev_vectors = extract_all(dev_corpus, dev_instances, res, jobs);

  FeatureSchema schema = fit_schema(train_vectors);
  auto train_groups = build_groups(train_vectors, schema);
  auto dev_groups = build_groups(dev_vectors, schema);

  CostSelection sel = tune_cost(train_groups, dev_groups, cfg.cost_grid, cfg.train, jobs);
  TrainSummary summary;
  summary.grid = sel.runs;
  summary.warnings = sel.warnings;

  static const char* kRunNames[] = {"primary", "contr1", "contr2"};
  for (std::size_t r = 0; r < sel.selected.size(); ++r) {
    const CostRun& run = sel.selected[r];
    std::vector<double> scores;
    std::vector<char> gold;
    for (const auto& g : dev_groups) {
      for (const auto& m : g.members) {
        scores.push_back(score(run.trained.w, m.x));
        gold.push_back(m.relevant ? 1 : 0);
      }
    }
    ThresholdResult th = calibrate_threshold(scores, gold, cfg.threshold_metric);
    if (th.warned) summary.warnings.push_back(std::string(kRunNames[r]) + ": no relevant dev instance, threshold set above the maximum score");

    TrainedRun tr;
    tr.name = kRunNames[r];
    tr.path = out_prefix + "." + kRunNames[r];
    tr.model.subtask = subtask;
    tr.model.w = run.trained.w;
    tr.model.schema = schema;
    tr.model.idf = res.idf;
    tr.model.cost = run.cost;
    tr.model.threshold = th.threshold;
    tr.model.train_seed = cfg.train.seed;
    tr.dev_map = run.dev_map;
    tr.dev_threshold_metric = th.value;
    save_model(tr.model, tr.path);
    summary.runs.push_back(std::move(tr));
  }
  return summary;
}

// --- predict --------------------------------------------------------------

// Scores every instance, labels it against the model threshold and orders
// candidates by score (ties by id) within each query; queries keep corpus
// order.
inline std::vector<Prediction> predict(const RankModel& model, const Config& cfg,
                                       std::span<const Thread> threads, Subtask subtask,
                                       unsigned jobs = 1) {
  if (model.subtask != subtask) {
    throw data_error(std::string("schema mismatch: model trained for subtask ") +
                     subtask_name(model.subtask) + ", requested " + subtask_name(subtask));
  }
  auto expected = feature_names(subtask, cfg.measures);
  if (expected != model.schema.names) {
    throw data_error("schema mismatch: configured measures do not produce the model's features");
  }
  Resources res = load_resources(cfg);
  res.idf = model.idf;
  AnalyzedCorpus analyzed(threads, res, jobs);
  auto instances = enumerate_instances(threads, subtask);
  auto vectors = extract_all(analyzed, instances, res, jobs);

  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<Prediction>> by_query;
  for (const auto& fv : vectors) {
    double s = model.score(normalize(fv, model.schema));
    auto [it, inserted] = by_query.try_emplace(fv.instance.query_id);
    if (inserted) order.push_back(fv.instance.query_id);
    it->second.push_back({fv.instance.query_id, fv.instance.candidate_id, s, model.label(s)});
  }
  std::vector<Prediction> out;
  for (const auto& q : order) {
    auto& preds = by_query[q];
    std::stable_sort(preds.begin(), preds.end(), [](const Prediction& a, const Prediction& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.candidate_id < b.candidate_id;
    });
    out.insert(out.end(), preds.begin(), preds.end());
  }
  return out;
}

inline std::size_t cmd_predict(const Config& cfg, const std::string& model_path,
                               const std::string& corpus_path, Subtask subtask,
                               const std::string& out_path, unsigned jobs = 1) {
  RankModel model = load_model(model_path);
  std::vector<Thread> threads = load_corpus(corpus_path);
  auto preds = predict(model, cfg, threads, subtask, jobs);
  export_predictions(preds, out_path);
  return preds.size();
}

// --- evaluate -------------------------------------------------------------

inline EvalReport cmd_evaluate(const std::string& gold_path, const std::string& pred_path,
                               Subtask subtask) {
  std::vector<Thread> gold = load_corpus(gold_path);
  std::vector<Prediction> preds = load_predictions(pred_path);
  return evaluate_run(gold, preds, subtask);
}

}  // namespace cqarank
