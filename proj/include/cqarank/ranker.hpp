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

// Linear pairwise ranking SVM trained by subgradient descent, the cost grid
// search that yields three distant runs, relevance threshold calibration,
// and the model file.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cqarank/common.hpp"
#include "cqarank/evaluation.hpp"
#include "cqarank/features.hpp"
#include "cqarank/lexical_sim.hpp"

namespace cqarank {

struct GroupMember {
  std::string candidate_id;
  std::vector<double> x;
  int target = 0;
  bool relevant = false;
};

struct QueryGroup {
  std::string query_id;
  std::vector<GroupMember> members;
};

// (better, worse) member indices within one group.
struct RankPair {
  std::size_t group;
  std::size_t better;
  std::size_t worse;
};

inline std::vector<RankPair> make_pairs(std::span<const QueryGroup> groups) {
  std::vector<RankPair> pairs;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& m = groups[g].members;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[i].target > m[j].target) pairs.push_back({g, i, j});
      }
    }
  }
  return pairs;
}

inline double dot_product(std::span<const double> w, std::span<const double> x) {
  if (w.size() != x.size()) {
    throw data_error("vector length " + std::to_string(x.size()) + " does not match model length " +
                     std::to_string(w.size()));
  }
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * x[k];
  return s;
}

// J(w) = 1/2 |w|^2 + C sum_pairs max(0, 1 - w.(x_better - x_worse)).
inline double ranking_objective(std::span<const double> w, std::span<const QueryGroup> groups,
                                std::span<const RankPair> pairs, double cost) {
  double reg = 0.5 * dot_product(w, w);
  double loss = 0.0;
  for (const auto& p : pairs) {
    const auto& m = groups[p.group].members;
    double margin = dot_product(w, m[p.better].x) - dot_product(w, m[p.worse].x);
    loss += std::max(0.0, 1.0 - margin);
  }
  return reg + cost * loss;
}

struct TrainOptions {
  int epochs = 200;
  std::uint64_t seed = 13;
};

struct TrainResult {
  std::vector<double> w;
  double objective = 0.0;
  double initial_objective = 0.0;
  int best_epoch = 0;
};

// Stochastic subgradient descent on sum_p [|w|^2 / (2|P|) + C hinge_p(w)],
// which sums to J(w). Step at update t is 1 / (1 + t/|P|); pairs are visited
// in a seeded shuffle each epoch. The iterate with the lowest J among the
// starting point and the end of every epoch is returned.
inline TrainResult train(std::span<const QueryGroup> groups, double cost, TrainOptions opts = {}) {
  if (!(cost > 0.0) || !std::isfinite(cost)) throw io_error("cost must be a positive real");
  if (opts.epochs < 0) throw io_error("epochs must be non-negative");
  std::size_t dim = 0;
  bool have_dim = false;
  for (const auto& g : groups) {
    for (const auto& m : g.members) {
      if (!have_dim) {
        dim = m.x.size();
        have_dim = true;
      } else if (m.x.size() != dim) {
        throw data_error("feature vectors in group " + g.query_id + " differ in length");
      }
    }
  }
  std::vector<RankPair> pairs = make_pairs(groups);
  if (pairs.empty()) throw data_error("no ranking signal");

  const double n_pairs = static_cast<double>(pairs.size());
  std::vector<double> w(dim, 0.0);
  TrainResult result;
  result.w = w;
  result.initial_objective = ranking_objective(w, groups, pairs, cost);
  result.objective = result.initial_objective;

  std::mt19937_64 rng(opts.seed);
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> diff(dim);
  std::uint64_t t = 0;
  for (int epoch = 1; epoch <= opts.epochs; ++epoch) {
    // Fisher-Yates with the raw engine output so the order is the same on
    // every standard library.
    for (std::size_t i = order.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(order[i - 1], order[j]);
    }
    for (std::size_t idx : order) {
      const RankPair& p = pairs[idx];
      const auto& m = groups[p.group].members;
      for (std::size_t k = 0; k < dim; ++k) diff[k] = m[p.better].x[k] - m[p.worse].x[k];
      double eta = 1.0 / (1.0 + static_cast<double>(t) / n_pairs);
      double margin = dot_product(w, diff);
      double shrink = 1.0 - eta / n_pairs;
      for (std::size_t k = 0; k < dim; ++k) w[k] *= shrink;
      if (margin < 1.0) {
        for (std::size_t k = 0; k < dim; ++k) w[k] += eta * cost * diff[k];
      }
      ++t;
    }
    double j = ranking_objective(w, groups, pairs, cost);
    if (j < result.objective) {
      result.objective = j;
      result.w = w;
      result.best_epoch = epoch;
    }
  }
  return result;
}

inline double score(std::span<const double> w, std::span<const double> x) { return dot_product(w, x); }

inline std::vector<RankedQuery> rank_groups(std::span<const double> w,
                                            std::span<const QueryGroup> groups) {
  std::vector<RankedQuery> out;
  for (const auto& g : groups) {
    std::vector<RankedCandidate> cands;
    for (const auto& m : g.members) cands.push_back({m.candidate_id, score(w, m.x), m.relevant});
    out.push_back(make_ranked_query(g.query_id, std::move(cands)));
  }
  return out;
}

// Mean AP over groups with a relevant member; 0 if none qualifies.
inline double groups_map(std::span<const double> w, std::span<const QueryGroup> groups) {
  auto ranked = rank_groups(w, groups);
  bool any = std::any_of(ranked.begin(), ranked.end(), [](const auto& q) { return q.relevant_count() > 0; });
  return any ? map_score(ranked) : 0.0;
}

// Fraction of ordered pairs (target_i > target_j) that the weights rank
// strictly correctly.
inline double pairwise_accuracy(std::span<const double> w, std::span<const QueryGroup> groups) {
  auto pairs = make_pairs(groups);
  if (pairs.empty()) return 1.0;
  std::size_t good = 0;
  for (const auto& p : pairs) {
    const auto& m = groups[p.group].members;
    if (score(w, m[p.better].x) > score(w, m[p.worse].x)) ++good;
  }
  return static_cast<double>(good) / static_cast<double>(pairs.size());
}

enum class ThresholdMetric { F1, Accuracy };

struct ThresholdResult {
  double threshold = 0.0;
  double value = 0.0;  // F1 or accuracy at the threshold
  bool warned = false;
};

inline double threshold_metric_value(std::span<const double> scores, std::span<const char> gold,
                                     double theta, ThresholdMetric metric) {
  std::vector<LabelPair> pairs(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) pairs[i] = {scores[i] >= theta, gold[i] != 0};
  auto cs = classification_metrics(pairs);
  return metric == ThresholdMetric::F1 ? cs.f1 : cs.accuracy;
}

// Candidates: min - 1, every midpoint of consecutive distinct scores, and
// max + 1. Returns the candidate with the best dev metric, smallest on ties.
// With no positive gold label the threshold is max + 1 and `warned` is set.
inline ThresholdResult calibrate_threshold(std::span<const double> scores, std::span<const char> gold,
                                           ThresholdMetric metric = ThresholdMetric::F1) {
  if (scores.empty() || scores.size() != gold.size()) {
    throw data_error("threshold calibration needs one gold label per dev score");
  }
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  bool any_positive = std::any_of(gold.begin(), gold.end(), [](char g) { return g != 0; });
  if (!any_positive) {
    double theta = sorted.back() + 1.0;
    return {theta, threshold_metric_value(scores, gold, theta, metric), true};
  }

  // Sweep ascending: predictions flip from true to false for every instance
  // whose score lies below the candidate.
  std::vector<std::pair<double, char>> items;
  for (std::size_t i = 0; i < scores.size(); ++i) items.emplace_back(scores[i], gold[i]);
  std::sort(items.begin(), items.end());
  std::size_t positives = 0;
  for (const auto& it : items) positives += it.second != 0;
  const std::size_t n = items.size();

  auto value_at = [&](std::size_t tp, std::size_t fp) {
    std::size_t fn = positives - tp;
    std::size_t tn = n - positives - fp;
    if (metric == ThresholdMetric::Accuracy) return static_cast<double>(tp + tn) / static_cast<double>(n);
    double p = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    double r = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
  };

  std::size_t tp = positives;
  std::size_t fp = n - positives;
  ThresholdResult best{sorted.front() - 1.0, value_at(tp, fp), false};
  std::size_t i = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    while (i < n && items[i].first == sorted[k]) {
      if (items[i].second) --tp;
      else --fp;
      ++i;
    }
    double theta = k + 1 < sorted.size() ? sorted[k] + (sorted[k + 1] - sorted[k]) / 2.0 : sorted[k] + 1.0;
    double v = value_at(tp, fp);
    if (v > best.value) best = {theta, v, false};
  }
  return best;
}

// Exhaustive check used by tests and diagnostics: the same candidate set,
// each evaluated from scratch.
inline std::vector<double> threshold_candidates(std::span<const double> scores) {
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<double> out;
  if (sorted.empty()) return out;
  out.push_back(sorted.front() - 1.0);
  for (std::size_t k = 0; k + 1 < sorted.size(); ++k) out.push_back(sorted[k] + (sorted[k + 1] - sorted[k]) / 2.0);
  out.push_back(sorted.back() + 1.0);
  return out;
}

struct RankModel {
  Subtask subtask = Subtask::A;
  std::vector<double> w;
  FeatureSchema schema;
  IdfTable idf;
  double cost = 1.0;
  double threshold = 0.0;
  std::uint64_t train_seed = 0;

  bool operator==(const RankModel&) const = default;

  double score(std::span<const double> x) const { return cqarank::score(w, x); }
  bool label(double s) const { return s >= threshold; }
};

inline std::vector<double> default_cost_grid() {
  std::vector<double> grid;
  for (int k = -8; k <= 8; ++k) grid.push_back(std::ldexp(1.0, k));
  return grid;
}

struct CostRun {
  double cost = 0.0;
  double dev_map = 0.0;
  TrainResult trained;
};

struct CostSelection {
  std::vector<CostRun> runs;      // every grid point, grid order
  std::vector<CostRun> selected;  // primary, contrastive 1, contrastive 2
  std::vector<std::string> warnings;
};

inline constexpr double kMinCostRatio = 4.0;

// Trains one model per grid value, orders them by dev MAP (descending, ties
// by smaller C) and greedily keeps up to three whose costs are pairwise at
// least a factor of 4 apart.
inline CostSelection tune_cost(std::span<const QueryGroup> train_groups,
                               std::span<const QueryGroup> dev_groups, std::span<const double> grid,
                               TrainOptions opts = {}, unsigned jobs = 1) {
  if (grid.empty()) throw io_error("cost grid is empty");
  CostSelection sel;
  sel.runs.resize(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    CostRun run;
    run.cost = grid[i];
    run.trained = train(train_groups, grid[i], opts);
    run.dev_map = groups_map(run.trained.w, dev_groups);
    sel.runs[i] = std::move(run);
  });
  std::vector<CostRun> ordered = sel.runs;
  std::stable_sort(ordered.begin(), ordered.end(), [](const CostRun& a, const CostRun& b) {
    if (a.dev_map != b.dev_map) return a.dev_map > b.dev_map;
    return a.cost < b.cost;
  });
  for (const auto& run : ordered) {
    if (sel.selected.size() == 3) break;
    bool distant = std::all_of(sel.selected.begin(), sel.selected.end(), [&](const CostRun& s) {
      return std::max(run.cost, s.cost) / std::min(run.cost, s.cost) >= kMinCostRatio;
    });
    if (distant) sel.selected.push_back(run);
  }
  if (sel.selected.size() < 3) {
    sel.warnings.push_back("only " + std::to_string(sel.selected.size()) +
                           " cost value(s) satisfy the distance rule");
  }
  return sel;
}

// --- model file -----------------------------------------------------------

inline constexpr const char* kModelMagic = "cqarank-model";
inline constexpr int kModelVersion = 1;

inline void save_model(const RankModel& m, std::ostream& out) {
  out << kModelMagic << " v" << kModelVersion << '\n';
  out << "[meta]\n";
  out << "subtask\t" << subtask_name(m.subtask) << '\n';
  out << "cost\t" << format_exact(m.cost) << '\n';
  out << "threshold\t" << format_exact(m.threshold) << '\n';
  out << "seed\t" << m.train_seed << '\n';
  out << "features\t" << m.schema.size() << '\n';
  out << "idf_docs\t" << m.idf.doc_count << '\n';
  out << "idf_terms\t" << m.idf.df.size() << '\n';
  out << "[schema]\n";
  for (std::size_t k = 0; k < m.schema.size(); ++k) {
    out << m.schema.names[k] << '\t' << format_exact(m.schema.means[k]) << '\t'
        << format_exact(m.schema.stddevs[k]) << '\n';
  }
  out << "[weights]\n";
  for (std::size_t k = 0; k < m.w.size(); ++k) out << format_exact(m.w[k]) << '\n';
  out << "[idf]\n";
  std::vector<std::pair<std::string, std::size_t>> terms(m.idf.df.begin(), m.idf.df.end());
  std::sort(terms.begin(), terms.end());
  for (const auto& [term, df] : terms) out << term << '\t' << df << '\n';
  out << "[end]\n";
}

inline void save_model(const RankModel& m, const std::string& path) {
  std::ofstream out = open_output(path);
  save_model(m, out);
  if (!out) throw io_error("write failed: " + path);
}

namespace detail {

class ModelReader {
 public:
  explicit ModelReader(std::istream& in) : in_(in) {}

  RankModel read() {
    std::string line = next("header");
    std::string expected = std::string(kModelMagic) + " v" + std::to_string(kModelVersion);
    if (line != expected) {
      throw Error(ErrorKind::Io, "model version mismatch: expected '" + expected + "', found '" + line + "'");
    }
    RankModel m;
    expect("[meta]");
    m.subtask = parse_enum(value("subtask"));
    m.cost = real(value("cost"));
    m.threshold = real(value("threshold"));
    m.train_seed = static_cast<std::uint64_t>(integer(value("seed")));
    std::size_t features = static_cast<std::size_t>(integer(value("features")));
    m.idf.doc_count = static_cast<std::size_t>(integer(value("idf_docs")));
    std::size_t terms = static_cast<std::size_t>(integer(value("idf_terms")));
    expect("[schema]");
    for (std::size_t k = 0; k < features; ++k) {
      auto cols = columns(next("schema row"), 3);
      m.schema.names.push_back(cols[0]);
      m.schema.means.push_back(real(cols[1]));
      m.schema.stddevs.push_back(real(cols[2]));
    }
    expect("[weights]");
    for (std::size_t k = 0; k < features; ++k) m.w.push_back(real(next("weight")));
    expect("[idf]");
    for (std::size_t k = 0; k < terms; ++k) {
      auto cols = columns(next("idf row"), 2);
      m.idf.df[cols[0]] = static_cast<std::size_t>(integer(cols[1]));
    }
    expect("[end]");
    return m;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Io, "model parse error at line " + std::to_string(lineno_) +
                                   " (byte offset " + std::to_string(offset_) + "): " + what);
  }

  std::string next(const char* what) {
    offset_ = consumed_;
    std::string line;
    if (!std::getline(in_, line)) {
      ++lineno_;
      fail(std::string("unexpected end of file, expected ") + what);
    }
    ++lineno_;
    consumed_ += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  void expect(const char* section) {
    if (next(section) != section) fail(std::string("expected ") + section);
  }

  std::string value(const char* key) {
    auto cols = columns(next(key), 2);
    if (cols[0] != key) fail(std::string("expected key ") + key);
    return cols[1];
  }

  std::vector<std::string> columns(const std::string& line, std::size_t n) {
    auto parts = split(line, '\t');
    if (parts.size() != n) fail("expected " + std::to_string(n) + " columns");
    return {parts.begin(), parts.end()};
  }

  double real(const std::string& s) {
    double v = 0.0;
    if (!parse_double(s, v) || !std::isfinite(v)) fail("invalid number '" + s + "'");
    return v;
  }

  long long integer(const std::string& s) {
    long long v = 0;
    if (!parse_long(s, v) || v < 0) fail("invalid count '" + s + "'");
    return v;
  }

  Subtask parse_enum(const std::string& s) {
    auto st = parse_subtask(s);
    if (!st) fail("invalid subtask '" + s + "'");
    return *st;
  }

  std::istream& in_;
  std::size_t lineno_ = 0;
  std::size_t consumed_ = 0;
  std::size_t offset_ = 0;
};

}  // namespace detail

inline RankModel load_model(std::istream& in) { return detail::ModelReader(in).read(); }

inline RankModel load_model(const std::string& path) {
  std::ifstream in = open_input(path);
  return load_model(in);
}

}  // namespace cqarank
