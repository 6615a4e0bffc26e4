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

using testing::view_of;

TEST(CosineWordNgrams, Examples) {
  EXPECT_EQ(cosine_word_ngrams(view_of({"x", "y", "z"}), view_of({"x", "y", "z"}), 1), 1.0);
  EXPECT_NEAR(cosine_word_ngrams(view_of({"a", "b", "c"}), view_of({"b", "c", "d"}), 1), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(cosine_word_ngrams(view_of({"a"}), view_of({"a", "b"}), 2), 0.0);
}

TEST(CosineWordNgrams, BigramsDoNotCrossJoinerBoundaries) {
  // "a b" + "c" and "a" + "b c" must not collide as bigram strings.
  EXPECT_EQ(cosine_word_ngrams(view_of({"a b", "c"}), view_of({"a", "b c"}), 2), 0.0);
}

TEST(CosineChar3, Examples) {
  auto v = view_of({"hello", "world"});
  EXPECT_EQ(cosine_char_3grams(v, v), 1.0);
  EXPECT_EQ(cosine_char_3grams(view_of({"ab"}), view_of({"cd"})), 0.0);
  // "abc" -> {abc}; "abc abc" -> {abc:2, "bc ":1, "c a":1, " ab":1}.
  double expected = 2.0 / std::sqrt(1.0 * (4.0 + 1.0 + 1.0 + 1.0));
  EXPECT_NEAR(cosine_char_3grams(view_of({"abc"}), view_of({"abc", "abc"})), expected, 1e-15);
}

TEST(CosineTfidf, HandComputedWeights) {
  IdfTable idf;
  idf.doc_count = 10;
  idf.df = {{"x", 1}, {"y", 9}};
  double wx = std::log(11.0 / 2.0) + 1.0;
  double wy = std::log(11.0 / 10.0) + 1.0;
  double expected = wx * wx / (std::sqrt(wx * wx + wy * wy) * wx);
  EXPECT_NEAR(cosine_tfidf(view_of({"x", "y"}), view_of({"x"}), idf), expected, 1e-15);
  EXPECT_EQ(cosine_tfidf(view_of({"x", "y"}), view_of({"x", "y"}), idf), 1.0);
  EXPECT_EQ(cosine_tfidf(view_of({"x"}), view_of({"y"}), idf), 0.0);
  // Unseen terms get df = 0.
  EXPECT_NEAR(idf.idf("unseen"), std::log(11.0) + 1.0, 1e-15);
}

TEST(BuildIdf, Counting) {
  std::vector<TextView> docs = {view_of({"x"}), view_of({"x", "y", "y"})};
  auto idf = build_idf(docs);
  EXPECT_EQ(idf.doc_count, 2u);
  EXPECT_EQ(idf.frequency("x"), 2u);
  EXPECT_EQ(idf.frequency("y"), 1u);

  std::vector<TextView> one_empty = {TextView{}};
  auto e = build_idf(one_empty);
  EXPECT_EQ(e.doc_count, 1u);
  EXPECT_TRUE(e.df.empty());

  EXPECT_THROW(build_idf(std::span<const TextView>{}), Error);
}

TEST(Overlap, Examples) {
  EXPECT_NEAR(word_overlap(view_of({"cat", "sat"}), view_of({"cat", "sat", "mat"})), 0.8, 1e-15);
  EXPECT_EQ(word_overlap(view_of({"a", "b"}), view_of({"b", "a"})), 1.0);
  EXPECT_EQ(word_overlap(view_of({"a"}), view_of({"b"})), 0.0);

  LexResources res;
  res.noun_lexicon = {"cat", "dog"};
  EXPECT_NEAR(noun_overlap(view_of({"cat", "run"}), view_of({"cat", "dog"}), res), 1.0 / 1.5, 1e-15);
  EXPECT_EQ(noun_overlap(view_of({"dog", "cat"}), view_of({"cat", "dog"}), res), 1.0);
  EXPECT_EQ(noun_overlap(view_of({"run"}), view_of({"cat"}), res), 0.0);

  auto abc = view_of({"a", "b", "c"});
  EXPECT_EQ(ngram_overlap(abc, abc, 3), 1.0);
  EXPECT_EQ(ngram_overlap(abc, view_of({"b", "c", "d"}), 2), 0.5);
  EXPECT_EQ(ngram_overlap(view_of({"a", "b"}), view_of({"a", "b"}), 3), 0.0);
}

TEST(Overlap, MultisetVariant) {
  auto a = view_of({"a", "a", "b"});
  auto b = view_of({"a", "b", "b"});
  // Set: {a,b} vs {a,b} -> 1. Multiset: min counts 1+1 = 2 over (3+3)/2.
  EXPECT_EQ(ngram_overlap(a, b, 1, false), 1.0);
  EXPECT_NEAR(ngram_overlap(a, b, 1, true), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(ngram_overlap(a, a, 1, true), 1.0);
}

// Brute-force oracle and invariants on random token sequences.
TEST(LexicalProperties, RandomizedAgainstOracle) {
  std::mt19937_64 rng(2016);
  IdfTable idf;
  idf.doc_count = 50;
  for (int k = 0; k < 12; ++k) idf.df["w" + std::to_string(k)] = static_cast<std::size_t>(1 + k * 4);
  for (int i = 0; i < 1000; ++i) {
    auto ta = testing::random_words(rng, 8, 12);
    auto tb = testing::random_words(rng, 8, 12);
    auto a = view_of(ta);
    auto b = view_of(tb);
    for (std::size_t n : {1u, 2u}) {
      double got = cosine_word_ngrams(a, b, n);
      EXPECT_NEAR(got, testing::brute_cosine(word_ngrams(ta, n), word_ngrams(tb, n)), 1e-12);
      EXPECT_EQ(got, cosine_word_ngrams(b, a, n));
    }
    double c3 = cosine_char_3grams(a, b);
    EXPECT_NEAR(c3, testing::brute_cosine(char_trigrams(ta), char_trigrams(tb)), 1e-12);
    EXPECT_EQ(c3, cosine_char_3grams(b, a));
    double t = cosine_tfidf(a, b, idf);
    EXPECT_GE(t, 0.0);
    EXPECT_LE(t, 1.0);
    EXPECT_EQ(t, cosine_tfidf(b, a, idf));
    for (std::size_t n : {1u, 2u, 3u}) {
      double o = ngram_overlap(a, b, n);
      EXPECT_GE(o, 0.0);
      EXPECT_LE(o, 1.0);
      EXPECT_EQ(o, ngram_overlap(b, a, n));
      if (ta.size() >= n) {
        EXPECT_EQ(ngram_overlap(a, a, n), 1.0);
      }
    }
    if (!ta.empty()) {
      EXPECT_EQ(cosine_word_ngrams(a, a, 1), 1.0);
      EXPECT_EQ(cosine_tfidf(a, a, idf), 1.0);
    }
  }
}

}  // namespace
}  // namespace cqarank
