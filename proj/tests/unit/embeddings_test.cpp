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

std::string load_error(const std::string& content) {
  testing::TempDir dir;
  try {
    load_vectors(dir.write("v.txt", content));
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(LoadVectors, ValidFileIsNormalized) {
  testing::TempDir dir;
  auto store = load_vectors(dir.write("v.txt", "2 3\nfoo 3 0 4\nbar 0 2 0\n"));
  EXPECT_EQ(store.dim(), 3u);
  EXPECT_EQ(store.size(), 2u);
  auto foo = store.find("foo");
  ASSERT_TRUE(foo);
  EXPECT_NEAR((*foo)[0], 0.6, 1e-15);
  EXPECT_NEAR((*foo)[2], 0.8, 1e-15);
  EXPECT_NEAR(dot(*foo, *foo), 1.0, 1e-15);
}

TEST(LoadVectors, Errors) {
  EXPECT_EQ(load_error("2 3\nfoo 1 2\nbar 1 2 3\n"), "line 2: expected 3 components");
  EXPECT_NE(load_error("1 2\nfoo 1 x\n").find("line 2"), std::string::npos);
  EXPECT_NE(load_error("1 2\nfoo 0 0\n").find("foo"), std::string::npos);
  EXPECT_NE(load_error("two 3\n").find("line 1"), std::string::npos);
  EXPECT_FALSE(load_error("3 2\nfoo 1 0\n").empty());
}

TEST(LoadVectors, DuplicateLastWins) {
  testing::TempDir dir;
  auto store = load_vectors(dir.write("v.txt", "2 2\na 1 0\na 0 1\n"));
  EXPECT_EQ(store.size(), 1u);
  EXPECT_EQ(store.duplicates(), 1u);
  EXPECT_EQ((*store.find("a"))[1], 1.0);
}

VectorStore store_from(const std::map<std::string, std::vector<double>>& vecs) {
  VectorStore s(vecs.begin()->second.size());
  for (const auto& [w, v] : vecs) s.insert(w, v);
  return s;
}

TEST(Centroid, Examples) {
  auto store = store_from({{"u", {1, 0, 0}}, {"v", {0.5, std::sqrt(0.75), 0}}, {"x", {0, 0, 1}}});
  auto a = view_of({"u", "x"});
  EXPECT_NEAR(centroid_similarity(a, a, store), 1.0, 1e-15);
  EXPECT_EQ(centroid_similarity(a, view_of({"oov"}), store), 0.0);
  EXPECT_NEAR(centroid_similarity(view_of({"u"}), view_of({"v"}), store), 0.5, 1e-15);
  // Unit range maps [-1, 1] onto [0, 1].
  auto opp = store_from({{"p", {1, 0}}, {"q", {-1, 0}}});
  EXPECT_EQ(centroid_similarity(view_of({"p"}), view_of({"q"}), opp, CentroidRange::Raw), -1.0);
  EXPECT_EQ(centroid_similarity(view_of({"p"}), view_of({"q"}), opp, CentroidRange::Unit), 0.0);
}

TEST(Cwasa, Examples) {
  // cos(u,v) = 0.9, cos(u,w) = 0.1 in the plane.
  auto store = store_from({{"u", {1, 0}},
                           {"v", {0.9, std::sqrt(1 - 0.81)}},
                           {"w", {0.1, std::sqrt(1 - 0.01)}}});
  auto a = view_of({"u"});
  auto b = view_of({"v", "w"});
  EXPECT_NEAR(cwasa_similarity(a, b, store), (0.9 + 0.9 + 0.1) / 3.0, 1e-12);
  EXPECT_EQ(cwasa_similarity(a, TextView{}, store), 0.0);
  EXPECT_EQ(cwasa_similarity(b, b, store), 1.0);
}

TEST(Cwasa, NegativeCosinesClipToZero) {
  auto store = store_from({{"p", {1, 0}}, {"q", {-1, 0}}});
  EXPECT_EQ(cwasa_similarity(view_of({"p"}), view_of({"q"}), store), 0.0);
}

TEST(Cwasa, DenominatorVariants) {
  auto store = store_from({{"p", {1, 0}}});
  auto a = view_of({"p", "oov"});
  auto b = view_of({"p"});
  EXPECT_EQ(cwasa_similarity(a, b, store, CwasaDenominator::InVocab), 1.0);
  EXPECT_NEAR(cwasa_similarity(a, b, store, CwasaDenominator::All), 2.0 / 3.0, 1e-15);
}

}  // namespace
}  // namespace cqarank
