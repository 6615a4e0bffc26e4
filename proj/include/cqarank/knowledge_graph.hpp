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

// Knowledge-graph relatedness: every lemma of a text activates its candidate
// concepts in a semantic network, activation spreads along weighted directed
// edges with a per-hop decay, and two texts are compared by the cosine of
// their concept activations.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cqarank/common.hpp"
#include "cqarank/lexical_sim.hpp"
#include "cqarank/preprocess.hpp"

namespace cqarank {

inline constexpr int kMaxGraphDepth = 3;

class SemanticNetwork {
 public:
  struct Edge {
    std::size_t target;
    std::string relation;
    double weight;
  };

  std::size_t concept_count() const { return names_.size(); }
  const std::string& concept_name(std::size_t id) const { return names_[id]; }

  std::optional<std::size_t> find_concept(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<Edge>& edges(std::size_t id) const { return edges_[id]; }

  // Candidate concepts of a lemma in insertion order; empty when unknown.
  const std::vector<std::size_t>& senses(const std::string& lemma) const {
    static const std::vector<std::size_t> none;
    auto it = senses_.find(lemma);
    return it == senses_.end() ? none : it->second;
  }

  std::size_t intern(const std::string& name) {
    auto [it, inserted] = ids_.emplace(name, names_.size());
    if (inserted) {
      names_.push_back(name);
      edges_.emplace_back();
    }
    return it->second;
  }

  void add_edge(const std::string& src, const std::string& relation, const std::string& dst,
                double weight) {
    if (!(weight > 0.0 && weight <= 1.0)) throw data_error("weight must be in (0,1]");
    std::size_t s = intern(src);
    std::size_t d = intern(dst);
    edges_[s].push_back({d, relation, weight});
  }

  void add_sense(const std::string& lemma, const std::string& concept_name) {
    senses_[lemma].push_back(intern(concept_name));
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> ids_;
  std::vector<std::vector<Edge>> edges_;
  std::unordered_map<std::string, std::vector<std::size_t>> senses_;
};

// Edges: `src TAB relation TAB dst TAB weight`. Senses: `lemma TAB concept`.
// Concepts are declared by appearing in either file.
inline SemanticNetwork load_network(const std::string& edges_path, const std::string& senses_path) {
  SemanticNetwork net;
  for_each_line(edges_path, [&](std::size_t lineno, std::string_view line) {
    if (trim(line).empty() || line.front() == '#') return;
    auto cols = split(line, '\t');
    if (cols.size() != 4) throw line_error(ErrorKind::Data, lineno, "expected 4 columns");
    double w = 0.0;
    if (!parse_double(cols[3], w)) {
      throw line_error(ErrorKind::Data, lineno, "invalid weight '" + std::string(cols[3]) + "'");
    }
    if (!(w > 0.0 && w <= 1.0)) throw line_error(ErrorKind::Data, lineno, "weight must be in (0,1]");
    if (trim(cols[0]).empty() || trim(cols[2]).empty())
      throw line_error(ErrorKind::Data, lineno, "empty concept id");
    net.add_edge(std::string(trim(cols[0])), std::string(trim(cols[1])), std::string(trim(cols[2])), w);
  });
  for_each_line(senses_path, [&](std::size_t lineno, std::string_view line) {
    if (trim(line).empty() || line.front() == '#') return;
    auto cols = split(line, '\t');
    if (cols.size() != 2 || trim(cols[0]).empty() || trim(cols[1]).empty()) {
      throw line_error(ErrorKind::Data, lineno, "expected 2 columns");
    }
    net.add_sense(std::string(trim(cols[0])), std::string(trim(cols[1])));
  });
  return net;
}

struct KnowledgeGraph {
  std::map<std::string, double> weights;
  std::string source_text_id;

  bool empty() const { return weights.empty(); }
};

struct GraphParams {
  int depth = 2;
  double decay = 0.5;
};

// Each lemma occurrence with k senses seeds 1/k on each sense. A path of j
// edges with weights w1..wj adds seed * decay^j * prod(w) to its endpoint;
// all paths of length <= depth are summed, cycles included.
inline KnowledgeGraph build_graph(const TextView& view, const SemanticNetwork& net,
                                  GraphParams params = {}, std::string source_text_id = {}) {
  if (params.depth < 0 || params.depth > kMaxGraphDepth) {
    throw io_error("kg.depth must be in [0, " + std::to_string(kMaxGraphDepth) + "]");
  }
  if (!(params.decay > 0.0 && params.decay <= 1.0)) throw io_error("kg.decay must be in (0,1]");

  std::map<std::size_t, double> frontier;
  for (const auto& lemma : view.lemmas) {
    const auto& senses = net.senses(lemma);
    if (senses.empty()) continue;
    double seed = 1.0 / static_cast<double>(senses.size());
    for (std::size_t c : senses) frontier[c] += seed;
  }
  std::map<std::size_t, double> total = frontier;
  for (int hop = 1; hop <= params.depth && !frontier.empty(); ++hop) {
    std::map<std::size_t, double> next;
    for (const auto& [c, act] : frontier) {
      for (const auto& e : net.edges(c)) next[e.target] += act * params.decay * e.weight;
    }
    for (const auto& [c, act] : next) total[c] += act;
    frontier = std::move(next);
  }
  KnowledgeGraph g;
  g.source_text_id = std::move(source_text_id);
  for (const auto& [c, act] : total) {
    if (act > 0.0) g.weights.emplace(net.concept_name(c), act);
  }
  return g;
}

inline double kga_similarity(const KnowledgeGraph& g1, const KnowledgeGraph& g2) {
  return sparse_cosine(g1.weights, g2.weights);
}

}  // namespace cqarank
