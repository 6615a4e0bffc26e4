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

// Lexical similarity measures over stemmed text views. Every measure maps a
// pair of views to [0, 1] and is exactly symmetric: sparse vectors are keyed
// by ordered maps so both argument orders sum in the same sequence.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cqarank/common.hpp"
#include "cqarank/preprocess.hpp"

namespace cqarank {

using SparseVector = std::map<std::string, double>;

// Unit separator; cannot occur inside a token.
inline constexpr char kNgramJoiner = '\x1f';

inline std::vector<std::string> word_ngrams(std::span<const std::string> tokens, std::size_t n) {
  std::vector<std::string> out;
  if (n == 0 || tokens.size() < n) return out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string g = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      g.push_back(kNgramJoiner);
      g += tokens[i + k];
    }
    out.push_back(std::move(g));
  }
  return out;
}

// Byte-level windows over the tokens joined by single spaces.
inline std::vector<std::string> char_trigrams(std::span<const std::string> tokens) {
  std::string joined;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) joined.push_back(' ');
    joined += tokens[i];
  }
  std::vector<std::string> out;
  if (joined.size() < 3) return out;
  for (std::size_t i = 0; i + 3 <= joined.size(); ++i) out.push_back(joined.substr(i, 3));
  return out;
}

inline SparseVector count_vector(std::span<const std::string> items) {
  SparseVector v;
  for (const auto& s : items) v[s] += 1.0;
  return v;
}

// dot / sqrt(|u|^2 |v|^2); 0 when either vector is zero. Clipped to [0, 1]
// because all sparse vectors here are non-negative.
inline double sparse_cosine(const SparseVector& u, const SparseVector& v) {
  double nu = 0.0;
  double nv = 0.0;
  for (const auto& [k, x] : u) nu += x * x;
  for (const auto& [k, x] : v) nv += x * x;
  if (nu == 0.0 || nv == 0.0) return 0.0;
  double dot = 0.0;
  auto a = u.begin();
  auto b = v.begin();
  while (a != u.end() && b != v.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      dot += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return std::clamp(dot / std::sqrt(nu * nv), 0.0, 1.0);
}

inline double cosine_word_ngrams(const TextView& a, const TextView& b, std::size_t n) {
  return sparse_cosine(count_vector(word_ngrams(a.tokens, n)),
                       count_vector(word_ngrams(b.tokens, n)));
}

inline double cosine_char_3grams(const TextView& a, const TextView& b) {
  return sparse_cosine(count_vector(char_trigrams(a.tokens)),
                       count_vector(char_trigrams(b.tokens)));
}

struct IdfTable {
  std::size_t doc_count = 0;
  std::unordered_map<std::string, std::size_t> df;

  std::size_t frequency(const std::string& term) const {
    auto it = df.find(term);
    return it == df.end() ? 0 : it->second;
  }

  // Smoothed: ln((N + 1) / (df + 1)) + 1, always >= 1 for df <= N.
  double idf(const std::string& term) const {
    return std::log((static_cast<double>(doc_count) + 1.0) /
                    (static_cast<double>(frequency(term)) + 1.0)) +
           1.0;
  }

  bool operator==(const IdfTable&) const = default;
};

inline IdfTable build_idf(std::span<const TextView> corpus) {
  if (corpus.empty()) throw data_error("cannot build idf table from an empty corpus");
  IdfTable table;
  table.doc_count = corpus.size();
  for (const auto& view : corpus) {
    std::unordered_set<std::string> seen(view.tokens.begin(), view.tokens.end());
    for (const auto& t : seen) ++table.df[t];
  }
  return table;
}

inline SparseVector tfidf_vector(const TextView& view, const IdfTable& idf) {
  SparseVector v = count_vector(view.tokens);
  for (auto& [term, w] : v) w *= idf.idf(term);
  return v;
}

inline double cosine_tfidf(const TextView& a, const TextView& b, const IdfTable& idf) {
  return sparse_cosine(tfidf_vector(a, idf), tfidf_vector(b, idf));
}

// |A n B| / ((|A| + |B|) / 2); 0 when both sets are empty.
template <typename Set>
double set_overlap(const Set& a, const Set& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  return static_cast<double>(common) / ((static_cast<double>(a.size()) + b.size()) / 2.0);
}

inline double word_overlap(const TextView& a, const TextView& b) {
  std::set<std::string> sa(a.tokens.begin(), a.tokens.end());
  std::set<std::string> sb(b.tokens.begin(), b.tokens.end());
  return set_overlap(sa, sb);
}

inline double noun_overlap(const TextView& a, const TextView& b, const LexResources& res) {
  return set_overlap(tag_nouns(a, res), tag_nouns(b, res));
}

// Set semantics by default; with `multiset` the intersection counts
// min(count_a, count_b) and sizes count repeats.
inline double ngram_overlap(const TextView& a, const TextView& b, std::size_t n,
                            bool multiset = false) {
  auto ga = word_ngrams(a.tokens, n);
  auto gb = word_ngrams(b.tokens, n);
  if (!multiset) {
    std::set<std::string> sa(ga.begin(), ga.end());
    std::set<std::string> sb(gb.begin(), gb.end());
    return set_overlap(sa, sb);
  }
  if (ga.empty() && gb.empty()) return 0.0;
  SparseVector ca = count_vector(ga);
  SparseVector cb = count_vector(gb);
  double common = 0.0;
  for (const auto& [g, x] : ca) {
    auto it = cb.find(g);
    if (it != cb.end()) common += std::min(x, it->second);
  }
  return common / ((static_cast<double>(ga.size()) + gb.size()) / 2.0);
}

}  // namespace cqarank
