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

// Feature assembly: every enabled similarity measure is evaluated on every
// field pair of a subtask, giving features named `<measure>:<query
// field>~<candidate field>`. Subtasks A and C also get `search_rank`.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "cqarank/common.hpp"
#include "cqarank/corpus.hpp"
#include "cqarank/embeddings.hpp"
#include "cqarank/frames.hpp"
#include "cqarank/knowledge_graph.hpp"
#include "cqarank/lexical_sim.hpp"
#include "cqarank/preprocess.hpp"

namespace cqarank {

enum class Measure {
  CosWord1,
  CosWord2,
  CosChar3,
  CosTfidf,
  NounOverlap,
  NgramOverlap,  // mean of the n = 1, 2, 3 overlaps
  WordOverlap,
  NgramOverlap1,
  NgramOverlap2,
  NgramOverlap3,
  Centroid,
  Cwasa,
  Kga,
  Frames,
};

inline constexpr std::array<Measure, 14> kAllMeasures = {
    Measure::CosWord1,      Measure::CosWord2,      Measure::CosChar3,    Measure::CosTfidf,
    Measure::NounOverlap,   Measure::NgramOverlap,  Measure::WordOverlap, Measure::NgramOverlap1,
    Measure::NgramOverlap2, Measure::NgramOverlap3, Measure::Centroid,    Measure::Cwasa,
    Measure::Kga,           Measure::Frames,
};

inline const std::vector<Measure>& default_measures() {
  static const std::vector<Measure> measures = {
      Measure::CosWord1,    Measure::CosWord2,     Measure::CosChar3, Measure::CosTfidf,
      Measure::NounOverlap, Measure::NgramOverlap, Measure::Centroid, Measure::Cwasa,
      Measure::Kga,         Measure::Frames,
  };
  return measures;
}

inline const char* measure_name(Measure m) {
  switch (m) {
    case Measure::CosWord1: return "cos_w1";
    case Measure::CosWord2: return "cos_w2";
    case Measure::CosChar3: return "cos_c3";
    case Measure::CosTfidf: return "cos_tfidf";
    case Measure::NounOverlap: return "noun_ovl";
    case Measure::NgramOverlap: return "ngram_ovl";
    case Measure::WordOverlap: return "word_ovl";
    case Measure::NgramOverlap1: return "ngram_ovl1";
    case Measure::NgramOverlap2: return "ngram_ovl2";
    case Measure::NgramOverlap3: return "ngram_ovl3";
    case Measure::Centroid: return "centroid";
    case Measure::Cwasa: return "cwasa";
    case Measure::Kga: return "kga";
    case Measure::Frames: return "frames";
  }
  return "?";
}

inline std::optional<Measure> parse_measure(std::string_view s) {
  for (Measure m : kAllMeasures) {
    if (s == measure_name(m)) return m;
  }
  return std::nullopt;
}

struct MeasureOptions {
  CentroidRange centroid_range = CentroidRange::Unit;
  CwasaDenominator cwasa_denominator = CwasaDenominator::InVocab;
  GraphParams graph;
  bool ngram_multiset = false;
};

// Everything a measure may consult. The idf table comes from the training
// corpus and travels with the model.
struct Resources {
  LexResources lex;
  VectorStore vectors;
  SemanticNetwork network;
  FrameLexicon frames;
  IdfTable idf;
  MeasureOptions options;
  std::vector<Measure> measures = default_measures();
};

// The preprocessed forms of one text field.
struct AnalyzedText {
  TextView stemmed;
  TextView unstemmed;
  KnowledgeGraph graph;
};

inline AnalyzedText analyze_text(std::string_view raw, const Resources& res) {
  AnalyzedText t;
  t.stemmed = build_view(raw, res.lex, ViewVariant::Stemmed);
  t.unstemmed = build_view(raw, res.lex, ViewVariant::Unstemmed);
  t.graph = build_graph(t.unstemmed, res.network, res.options.graph);
  return t;
}

// Lexical measures read the stemmed view; embedding, graph and frame
// measures read the unstemmed view's lemmas.
inline double compute_measure(Measure m, const AnalyzedText& a, const AnalyzedText& b,
                              const Resources& res) {
  const auto& opt = res.options;
  switch (m) {
    case Measure::CosWord1: return cosine_word_ngrams(a.stemmed, b.stemmed, 1);
    case Measure::CosWord2: return cosine_word_ngrams(a.stemmed, b.stemmed, 2);
    case Measure::CosChar3: return cosine_char_3grams(a.stemmed, b.stemmed);
    case Measure::CosTfidf: return cosine_tfidf(a.stemmed, b.stemmed, res.idf);
    case Measure::NounOverlap: return noun_overlap(a.stemmed, b.stemmed, res.lex);
    case Measure::NgramOverlap:
      return (ngram_overlap(a.stemmed, b.stemmed, 1, opt.ngram_multiset) +
              ngram_overlap(a.stemmed, b.stemmed, 2, opt.ngram_multiset) +
              ngram_overlap(a.stemmed, b.stemmed, 3, opt.ngram_multiset)) /
             3.0;
    case Measure::WordOverlap: return word_overlap(a.stemmed, b.stemmed);
    case Measure::NgramOverlap1: return ngram_overlap(a.stemmed, b.stemmed, 1, opt.ngram_multiset);
    case Measure::NgramOverlap2: return ngram_overlap(a.stemmed, b.stemmed, 2, opt.ngram_multiset);
    case Measure::NgramOverlap3: return ngram_overlap(a.stemmed, b.stemmed, 3, opt.ngram_multiset);
    case Measure::Centroid:
      return centroid_similarity(a.unstemmed, b.unstemmed, res.vectors, opt.centroid_range);
    case Measure::Cwasa:
      return cwasa_similarity(a.unstemmed, b.unstemmed, res.vectors, opt.cwasa_denominator);
    case Measure::Kga: return kga_similarity(a.graph, b.graph);
    case Measure::Frames: return frame_overlap_similarity(a.unstemmed, b.unstemmed, res.frames);
  }
  return 0.0;
}

enum class Role { OrgQuestion, RelQuestion, Comment };
enum class Field { Subject, Body, Full, Text };

struct FieldRef {
  Role role;
  Field field;

  std::string name() const {
    if (role == Role::Comment) return "comment";
    std::string r = role == Role::OrgQuestion ? "orgq." : "relq.";
    return r + (field == Field::Subject ? "subject" : field == Field::Body ? "body" : "full");
  }
};

struct FieldPair {
  FieldRef query;
  FieldRef candidate;

  std::string name() const { return query.name() + "~" + candidate.name(); }
};

inline std::vector<FieldPair> field_pairs_for_subtask(Subtask subtask) {
  constexpr Field levels[] = {Field::Subject, Field::Body, Field::Full};
  std::vector<FieldPair> a, b, c;
  for (Field f : levels) a.push_back({{Role::RelQuestion, f}, {Role::Comment, Field::Text}});
  for (Field f : levels) b.push_back({{Role::OrgQuestion, f}, {Role::RelQuestion, f}});
  for (Field f : levels) c.push_back({{Role::OrgQuestion, f}, {Role::Comment, Field::Text}});
  switch (subtask) {
    case Subtask::A: return a;
    case Subtask::B: return b;
    case Subtask::C: {
      std::vector<FieldPair> all = a;
      all.insert(all.end(), b.begin(), b.end());
      all.insert(all.end(), c.begin(), c.end());
      return all;
    }
  }
  return {};
}

inline constexpr const char* kSearchRankFeature = "search_rank";

inline bool uses_search_rank(Subtask s) { return s == Subtask::A || s == Subtask::C; }

// Analyzed subject/body/full for every question and text for every comment.
class AnalyzedCorpus {
 public:
  struct Question {
    AnalyzedText subject, body, full;

    const AnalyzedText& get(Field f) const {
      return f == Field::Subject ? subject : f == Field::Body ? body : full;
    }
  };
  struct Related {
    Question question;
    std::vector<AnalyzedText> comments;
  };
  struct AnalyzedThread {
    Question question;
    std::vector<Related> related;
  };

  AnalyzedCorpus(std::span<const Thread> threads, const Resources& res, unsigned jobs = 1)
      : threads_(threads.begin(), threads.end()) {
    analyzed_.resize(threads_.size());
    parallel_for(threads_.size(), jobs, [&](std::size_t i) {
      const Thread& t = threads_[i];
      AnalyzedThread& at = analyzed_[i];
      at.question = analyze_question(t.subject, t.body, res);
      for (const auto& rq : t.related) {
        Related r;
        r.question = analyze_question(rq.subject, rq.body, res);
        for (const auto& c : rq.comments) r.comments.push_back(analyze_text(c.text, res));
        at.related.push_back(std::move(r));
      }
    });
  }

  std::span<const Thread> threads() const { return threads_; }
  const AnalyzedThread& thread(std::size_t i) const { return analyzed_[i]; }

  const AnalyzedText& text(const Instance& inst, FieldRef ref) const {
    const AnalyzedThread& t = analyzed_.at(inst.thread);
    switch (ref.role) {
      case Role::OrgQuestion: return t.question.get(ref.field);
      case Role::RelQuestion: return t.related.at(inst.related).question.get(ref.field);
      case Role::Comment: return t.related.at(inst.related).comments.at(inst.comment);
    }
    throw data_error("invalid field reference");
  }

 private:
  static Question analyze_question(const std::string& subject, const std::string& body,
                                   const Resources& res) {
    return {analyze_text(subject, res), analyze_text(body, res),
            analyze_text(subject + " " + body, res)};
  }

  std::vector<Thread> threads_;
  std::vector<AnalyzedThread> analyzed_;
};

// Idf statistics over every subject, body and comment field of a corpus
// (the derived "full" field is not a separate document).
inline IdfTable build_corpus_idf(std::span<const Thread> threads, const LexResources& lex) {
  std::vector<TextView> docs;
  for (const auto& t : threads) {
    docs.push_back(build_view(t.subject, lex, ViewVariant::Stemmed));
    docs.push_back(build_view(t.body, lex, ViewVariant::Stemmed));
    for (const auto& rq : t.related) {
      docs.push_back(build_view(rq.subject, lex, ViewVariant::Stemmed));
      docs.push_back(build_view(rq.body, lex, ViewVariant::Stemmed));
      for (const auto& c : rq.comments) docs.push_back(build_view(c.text, lex, ViewVariant::Stemmed));
    }
  }
  return build_idf(docs);
}

struct FeatureVector {
  Instance instance;
  std::map<std::string, double> values;
};

inline std::string feature_name(Measure m, const FieldPair& p) {
  return std::string(measure_name(m)) + ":" + p.name();
}

// Names produced for a subtask under the given measure list, sorted.
inline std::vector<std::string> feature_names(Subtask subtask, std::span<const Measure> measures) {
  std::vector<std::string> names;
  for (const auto& p : field_pairs_for_subtask(subtask)) {
    for (Measure m : measures) names.push_back(feature_name(m, p));
  }
  if (uses_search_rank(subtask)) names.push_back(kSearchRankFeature);
  std::sort(names.begin(), names.end());
  return names;
}

inline FeatureVector extract_features(const AnalyzedCorpus& corpus, const Instance& inst,
                                      const Resources& res) {
  FeatureVector fv;
  fv.instance = inst;
  for (const auto& pair : field_pairs_for_subtask(inst.subtask)) {
    const AnalyzedText& q = corpus.text(inst, pair.query);
    const AnalyzedText& c = corpus.text(inst, pair.candidate);
    for (Measure m : res.measures) {
      double v = compute_measure(m, q, c, res);
      if (!std::isfinite(v)) {
        throw data_error("non-finite feature " + feature_name(m, pair) + " for " + inst.candidate_id);
      }
      fv.values[feature_name(m, pair)] = v;
    }
  }
  if (uses_search_rank(inst.subtask)) {
    const auto& rank = corpus.threads()[inst.thread].related[inst.related].search_rank;
    fv.values[kSearchRankFeature] = rank ? 1.0 / static_cast<double>(*rank) : 0.0;
  }
  return fv;
}

// Looks an instance up by id; throws naming the id that is not found.
inline Instance find_instance(std::span<const Thread> threads, Subtask subtask,
                              const std::string& query_id, const std::string& candidate_id) {
  bool query_found = false;
  for (const auto& inst : enumerate_instances(threads, subtask)) {
    if (inst.query_id != query_id) continue;
    query_found = true;
    if (inst.candidate_id == candidate_id) return inst;
  }
  throw data_error("unknown id " + (query_found ? candidate_id : query_id));
}

inline std::vector<FeatureVector> extract_all(const AnalyzedCorpus& corpus,
                                              std::span<const Instance> instances,
                                              const Resources& res, unsigned jobs = 1) {
  std::vector<FeatureVector> out(instances.size());
  parallel_for(instances.size(), jobs, [&](std::size_t i) {
    out[i] = extract_features(corpus, instances[i], res);
  });
  return out;
}

// Population statistics per feature, names in lexicographic order.
struct FeatureSchema {
  std::vector<std::string> names;
  std::vector<double> means;
  std::vector<double> stddevs;

  std::size_t size() const { return names.size(); }
  bool operator==(const FeatureSchema&) const = default;
};

inline FeatureSchema fit_schema(std::span<const FeatureVector> train) {
  if (train.empty()) throw data_error("cannot fit a feature schema on an empty training set");
  FeatureSchema schema;
  for (const auto& [name, v] : train.front().values) schema.names.push_back(name);
  std::set<std::string> reference(schema.names.begin(), schema.names.end());
  for (const auto& fv : train) {
    std::set<std::string> names;
    for (const auto& [name, v] : fv.values) names.insert(name);
    if (names == reference) continue;
    std::vector<std::string> diff;
    std::set_symmetric_difference(reference.begin(), reference.end(), names.begin(), names.end(),
                                  std::back_inserter(diff));
    std::string listed;
    for (const auto& d : diff) listed += (listed.empty() ? "" : ", ") + d;
    throw data_error("inconsistent feature names at " + fv.instance.candidate_id + ": " + listed);
  }
  std::size_t d = schema.names.size();
  double n = static_cast<double>(train.size());
  schema.means.assign(d, 0.0);
  schema.stddevs.assign(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    double sum = 0.0;
    for (const auto& fv : train) sum += fv.values.at(schema.names[k]);
    double mean = sum / n;
    double ss = 0.0;
    for (const auto& fv : train) {
      double dx = fv.values.at(schema.names[k]) - mean;
      ss += dx * dx;
    }
    schema.means[k] = mean;
    schema.stddevs[k] = std::sqrt(ss / n);
  }
  return schema;
}

// z-scores in schema order; features unknown to the schema are ignored and
// missing ones read as raw 0.
inline std::vector<double> normalize(const FeatureVector& v, const FeatureSchema& schema) {
  std::vector<double> out(schema.size(), 0.0);
  for (std::size_t k = 0; k < schema.size(); ++k) {
    auto it = v.values.find(schema.names[k]);
    double x = it == v.values.end() ? 0.0 : it->second;
    out[k] = schema.stddevs[k] == 0.0 ? 0.0 : (x - schema.means[k]) / schema.stddevs[k];
  }
  return out;
}

// Feature dump: `query_id TAB candidate_id TAB name TAB value`.
inline void write_feature_dump(std::span<const FeatureVector> vectors, std::ostream& out) {
  for (const auto& fv : vectors) {
    for (const auto& [name, v] : fv.values) {
      out << fv.instance.query_id << '\t' << fv.instance.candidate_id << '\t' << name << '\t'
          << format_exact(v) << '\n';
    }
  }
}

}  // namespace cqarank
