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

// Ranking measures truncated at the top 10 candidates (MAP, AvgRec, MRR) and
// binary classification measures (Acc, P, R, F1) over all instances.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "cqarank/common.hpp"
#include "cqarank/corpus.hpp"

namespace cqarank {

inline constexpr std::size_t kRankCutoff = 10;

struct RankedCandidate {
  std::string id;
  double score = 0.0;
  bool gold = false;
};

// Candidates sorted by score descending, ties by id ascending.
struct RankedQuery {
  std::string query_id;
  std::vector<RankedCandidate> candidates;

  std::size_t relevant_count() const {
    return static_cast<std::size_t>(
        std::count_if(candidates.begin(), candidates.end(), [](const auto& c) { return c.gold; }));
  }
};

inline RankedQuery make_ranked_query(std::string query_id, std::vector<RankedCandidate> candidates) {
  for (const auto& c : candidates) {
    if (!std::isfinite(c.score)) throw data_error("non-finite score for " + c.id);
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  return {std::move(query_id), std::move(candidates)};
}

// sum_{i<=min(k,n)} precision@i * rel_i / min(R, k). Requires R > 0.
inline double average_precision(const RankedQuery& q, std::size_t k = kRankCutoff) {
  std::size_t total = q.relevant_count();
  if (total == 0) return 0.0;
  std::size_t limit = std::min(k, q.candidates.size());
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < limit; ++i) {
    if (q.candidates[i].gold) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(std::min(total, k));
}

// Mean of recall@1..recall@k, recall against all R relevant candidates.
inline double average_recall(const RankedQuery& q, std::size_t k = kRankCutoff) {
  std::size_t total = q.relevant_count();
  if (total == 0) return 0.0;
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i < q.candidates.size() && q.candidates[i].gold) ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(total);
  }
  return sum / static_cast<double>(k);
}

inline double reciprocal_rank(const RankedQuery& q, std::size_t k = kRankCutoff) {
  std::size_t limit = std::min(k, q.candidates.size());
  for (std::size_t i = 0; i < limit; ++i) {
    if (q.candidates[i].gold) return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

struct RankingScores {
  double map = 0.0;
  double avg_rec = 0.0;
  double mrr = 0.0;
  std::size_t query_count = 0;
  std::size_t skipped_queries = 0;
};

// Averages over queries with at least one relevant candidate, in input order.
inline RankingScores ranking_scores(std::span<const RankedQuery> queries) {
  RankingScores s;
  for (const auto& q : queries) {
    if (q.relevant_count() == 0) {
      ++s.skipped_queries;
      continue;
    }
    ++s.query_count;
    s.map += average_precision(q);
    s.avg_rec += average_recall(q);
    s.mrr += reciprocal_rank(q);
  }
  if (s.query_count == 0) throw data_error("no evaluable queries");
  double n = static_cast<double>(s.query_count);
  s.map /= n;
  s.avg_rec /= n;
  s.mrr /= n;
  return s;
}

inline double map_score(std::span<const RankedQuery> queries) { return ranking_scores(queries).map; }
inline double avg_rec(std::span<const RankedQuery> queries) { return ranking_scores(queries).avg_rec; }
inline double mrr(std::span<const RankedQuery> queries) { return ranking_scores(queries).mrr; }

struct ClassificationScores {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct LabelPair {
  bool predicted = false;
  bool gold = false;
};

inline ClassificationScores classification_metrics(std::span<const LabelPair> pairs) {
  if (pairs.empty()) throw data_error("classification metrics need at least one instance");
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (const auto& p : pairs) {
    if (p.predicted && p.gold) ++tp;
    else if (p.predicted) ++fp;
    else if (p.gold) ++fn;
    else ++tn;
  }
  ClassificationScores s;
  s.accuracy = static_cast<double>(tp + tn) / static_cast<double>(pairs.size());
  s.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  s.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  s.f1 = s.precision + s.recall == 0.0
             ? 0.0
             : 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

struct EvalReport {
  double map_score = 0.0;
  double avg_rec = 0.0;
  double mrr = 0.0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t query_count = 0;
  std::size_t skipped_queries = 0;

  std::string to_text() const {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed;
    out << "MAP " << map_score << '\n'
        << "AvgRec " << avg_rec << '\n'
        << "MRR " << mrr << '\n'
        << "Acc " << accuracy << '\n'
        << "P " << precision << '\n'
        << "R " << recall << '\n'
        << "F1 " << f1 << '\n'
        << "queries " << query_count << '\n'
        << "skipped_queries " << skipped_queries << '\n';
    return out.str();
  }

  std::string to_json() const {
    nlohmann::json j = {{"MAP", map_score},     {"AvgRec", avg_rec},  {"MRR", mrr},
                        {"Acc", accuracy},      {"P", precision},     {"R", recall},
                        {"F1", f1},             {"queries", query_count},
                        {"skipped_queries", skipped_queries}};
    return j.dump();
  }
};

// Groups scored predictions by query in first-appearance order.
inline std::vector<RankedQuery> group_ranked(std::span<const Prediction> predictions,
                                             std::span<const char> gold) {
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<RankedCandidate>> by_query;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const auto& p = predictions[i];
    auto [it, inserted] = by_query.try_emplace(p.query_id);
    if (inserted) order.push_back(p.query_id);
    it->second.push_back({p.candidate_id, p.score, gold[i] != 0});
  }
  std::vector<RankedQuery> out;
  out.reserve(order.size());
  for (auto& q : order) out.push_back(make_ranked_query(q, std::move(by_query[q])));
  return out;
}

// Matches predictions to gold instances by (query_id, candidate_id); every
// gold instance must be predicted exactly once and nothing else.
inline EvalReport evaluate_run(std::span<const Thread> gold_corpus,
                               std::span<const Prediction> predictions, Subtask subtask) {
  std::vector<Instance> instances = enumerate_instances(gold_corpus, subtask);
  require_labeled(instances);
  std::map<std::pair<std::string, std::string>, std::size_t> gold_index;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    gold_index.emplace(std::make_pair(instances[i].query_id, instances[i].candidate_id), i);
  }
  std::vector<bool> seen(instances.size(), false);
  std::vector<Prediction> matched;
  std::vector<char> gold_flags;
  std::vector<LabelPair> labels;
  for (const auto& p : predictions) {
    auto it = gold_index.find({p.query_id, p.candidate_id});
    if (it == gold_index.end()) {
      throw data_error("prediction for unknown instance " + p.query_id + "/" + p.candidate_id);
    }
    if (seen[it->second]) {
      throw data_error("duplicate prediction for " + p.query_id + "/" + p.candidate_id);
    }
    seen[it->second] = true;
    bool gold = binarize_label(*instances[it->second].gold_label);
    matched.push_back(p);
    gold_flags.push_back(gold);
    labels.push_back({p.label, gold});
  }
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!seen[i]) {
      throw data_error("missing prediction for " + instances[i].query_id + "/" +
                       instances[i].candidate_id);
    }
  }
  auto queries = group_ranked(matched, gold_flags);
  RankingScores rs = ranking_scores(queries);
  ClassificationScores cs = classification_metrics(labels);
  EvalReport r;
  r.map_score = rs.map;
  r.avg_rec = rs.avg_rec;
  r.mrr = rs.mrr;
  r.query_count = rs.query_count;
  r.skipped_queries = rs.skipped_queries;
  r.accuracy = cs.accuracy;
  r.precision = cs.precision;
  r.recall = cs.recall;
  r.f1 = cs.f1;
  return r;
}

}  // namespace cqarank
