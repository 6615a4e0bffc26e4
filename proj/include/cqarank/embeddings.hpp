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

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cqarank/common.hpp"
#include "cqarank/preprocess.hpp"

namespace cqarank {

// Word vectors, L2-normalized at insertion so that cosine is a dot product.
class VectorStore {
 public:
  VectorStore() = default;
  explicit VectorStore(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return index_.size(); }
  std::size_t duplicates() const { return duplicates_; }

  // Normalizes and stores `v`; a repeated word overwrites the earlier vector.
  // Returns false for a zero or non-finite vector.
  bool insert(const std::string& word, std::span<const double> v) {
    if (v.size() != dim_) throw data_error("vector for '" + word + "' has wrong dimension");
    double norm2 = 0.0;
    for (double x : v) {
      if (!std::isfinite(x)) return false;
      norm2 += x * x;
    }
    if (norm2 == 0.0 || !std::isfinite(norm2)) return false;
    double norm = std::sqrt(norm2);
    std::size_t row;
    if (auto it = index_.find(word); it != index_.end()) {
      row = it->second;
      ++duplicates_;
    } else {
      row = index_.size();
      index_.emplace(word, row);
      data_.resize(data_.size() + dim_);
    }
    for (std::size_t i = 0; i < dim_; ++i) data_[row * dim_ + i] = v[i] / norm;
    return true;
  }

  std::optional<std::span<const double>> find(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return std::span<const double>(data_.data() + it->second * dim_, dim_);
  }

  bool contains(const std::string& word) const { return index_.contains(word); }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> data_;
  std::size_t duplicates_ = 0;
};

// Textual word2vec format: `<vocab_size> <dim>` header, then one
// `<word> <v1> ... <vd>` line per word.
inline VectorStore load_vectors(const std::string& path) {
  std::optional<VectorStore> store;
  std::size_t declared = 0;
  std::size_t rows = 0;
  std::vector<double> buf;
  auto fields = [](std::string_view line) {
    std::vector<std::string_view> out;
    for (auto f : split(trim(line), ' ')) {
      if (!f.empty()) out.push_back(f);
    }
    return out;
  };
  for_each_line(path, [&](std::size_t lineno, std::string_view line) {
    if (!store) {
      auto head = fields(line);
      long long n = 0;
      long long d = 0;
      if (head.size() != 2 || !parse_long(head[0], n) || !parse_long(head[1], d) || n < 0 ||
          d <= 0) {
        throw line_error(ErrorKind::Data, lineno, "expected header '<vocab_size> <dim>'");
      }
      declared = static_cast<std::size_t>(n);
      store.emplace(static_cast<std::size_t>(d));
      buf.resize(store->dim());
      return;
    }
    if (trim(line).empty()) return;
    auto cols = fields(line);
    if (cols.size() != store->dim() + 1) {
      throw line_error(ErrorKind::Data, lineno,
                       "expected " + std::to_string(store->dim()) + " components");
    }
    for (std::size_t i = 0; i < store->dim(); ++i) {
      if (!parse_double(cols[i + 1], buf[i]) || !std::isfinite(buf[i])) {
        throw line_error(ErrorKind::Data, lineno,
                         "non-numeric component '" + std::string(cols[i + 1]) + "'");
      }
    }
    std::string word(cols[0]);
    if (!store->insert(word, buf)) throw line_error(ErrorKind::Data, lineno, "zero vector for '" + word + "'");
    ++rows;
  });
  if (!store) throw data_error(path + ": missing header");
  if (rows != declared) {
    throw data_error(path + ": header declares " + std::to_string(declared) + " vectors, found " +
                     std::to_string(rows));
  }
  return std::move(*store);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

enum class CentroidRange { Raw, Unit };

// Cosine of the mean normalized vectors of the in-vocabulary lemmas. Raw
// range is [-1, 1]; Unit maps it to (cos + 1) / 2. Zero when either side has
// no in-vocabulary lemma.
inline double centroid_similarity(const TextView& a, const TextView& b, const VectorStore& store,
                                  CentroidRange range = CentroidRange::Raw) {
  auto centroid = [&](const TextView& v, std::vector<double>& c) {
    c.assign(store.dim(), 0.0);
    std::size_t n = 0;
    for (const auto& lemma : v.lemmas) {
      auto vec = store.find(lemma);
      if (!vec) continue;
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += (*vec)[i];
      ++n;
    }
    for (double& x : c) x /= static_cast<double>(std::max<std::size_t>(n, 1));
    return n;
  };
  std::vector<double> ca;
  std::vector<double> cb;
  if (centroid(a, ca) == 0 || centroid(b, cb) == 0) return 0.0;
  double na = dot(ca, ca);
  double nb = dot(cb, cb);
  double cos = (na == 0.0 || nb == 0.0) ? 0.0 : std::clamp(dot(ca, cb) / std::sqrt(na * nb), -1.0, 1.0);
  return range == CentroidRange::Unit ? (cos + 1.0) / 2.0 : cos;
}

enum class CwasaDenominator { InVocab, All };

// Best-match cosines of each in-vocabulary lemma of one text against the
// other, negatives clipped to 0.
struct CwasaAlignment {
  std::vector<double> best_a;
  std::vector<double> best_b;
};

inline CwasaAlignment cwasa_alignment(const TextView& a, const TextView& b,
                                      const VectorStore& store) {
  struct Word {
    const std::string* lemma;
    std::span<const double> vec;
  };
  auto collect = [&](const TextView& v) {
    std::vector<Word> out;
    for (const auto& lemma : v.lemmas) {
      if (auto vec = store.find(lemma)) out.push_back({&lemma, *vec});
    }
    return out;
  };
  std::vector<Word> wa = collect(a);
  std::vector<Word> wb = collect(b);
  CwasaAlignment al;
  al.best_a.assign(wa.size(), 0.0);
  al.best_b.assign(wb.size(), 0.0);
  for (std::size_t i = 0; i < wa.size(); ++i) {
    for (std::size_t j = 0; j < wb.size(); ++j) {
      // A word aligned with itself has cosine exactly 1.
      double c = *wa[i].lemma == *wb[j].lemma ? 1.0 : std::clamp(dot(wa[i].vec, wb[j].vec), 0.0, 1.0);
      al.best_a[i] = std::max(al.best_a[i], c);
      al.best_b[j] = std::max(al.best_b[j], c);
    }
  }
  return al;
}

// Bidirectional alignment: (sum of best matches from a + from b) divided by
// the number of aligned lemmas (or all lemmas with CwasaDenominator::All).
inline double cwasa_similarity(const TextView& a, const TextView& b, const VectorStore& store,
                               CwasaDenominator denom = CwasaDenominator::InVocab) {
  CwasaAlignment al = cwasa_alignment(a, b, store);
  if (al.best_a.empty() || al.best_b.empty()) return 0.0;
  double sa = 0.0;
  double sb = 0.0;
  for (double x : al.best_a) sa += x;
  for (double x : al.best_b) sb += x;
  double n = denom == CwasaDenominator::InVocab
                 ? static_cast<double>(al.best_a.size() + al.best_b.size())
                 : static_cast<double>(a.lemmas.size() + b.lemmas.size());
  return std::clamp((sa + sb) / n, 0.0, 1.0);
}

}  // namespace cqarank
