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

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "cqarank/cqarank.hpp"

namespace cqarank::testing {

inline std::string toy_dir() { return CQARANK_TOY_DIR; }
inline std::string test_data_dir() { return CQARANK_TEST_DATA_DIR; }

// Removed with its contents on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("cqarank_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::string p = file(name);
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// A view whose tokens and lemmas are both `words`.
inline TextView view_of(std::vector<std::string> words) {
  TextView v;
  v.tokens = words;
  v.lemmas = std::move(words);
  return v;
}

inline std::vector<std::string> random_words(std::mt19937_64& rng, std::size_t max_len,
                                             std::size_t vocab, std::size_t min_len = 0) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, vocab - 1);
  std::vector<std::string> out(len(rng));
  for (auto& w : out) w = "w" + std::to_string(pick(rng));
  return out;
}

// Brute-force cosine over explicit count tables, summed in first-seen
// order to stay independent of the library's map-based summation.
inline double brute_cosine(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> keys;
  std::vector<double> ca, cb;
  auto index = [&](const std::string& k) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i] == k) return i;
    }
    keys.push_back(k);
    ca.push_back(0.0);
    cb.push_back(0.0);
    return keys.size() - 1;
  };
  for (const auto& k : a) ca[index(k)] += 1.0;
  for (const auto& k : b) cb[index(k)] += 1.0;
  double d = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    d += ca[i] * cb[i];
    na += ca[i] * ca[i];
    nb += cb[i] * cb[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return d / (std::sqrt(na) * std::sqrt(nb));
}

inline Thread make_thread(const std::string& id, int related, int comments_per_related) {
  Thread t;
  t.id = id;
  t.subject = "how to renew visa";
  t.body = "my visa expires soon";
  for (int r = 1; r <= related; ++r) {
    RelatedQuestion rq;
    rq.id = id + "_R" + std::to_string(r);
    rq.subject = "visa renewal";
    rq.body = r % 2 ? "renew the visa at the office" : "buy a car";
    rq.relevance_to_orgq = r % 2 ? Label::Relevant : Label::Irrelevant;
    rq.search_rank = r;
    for (int c = 1; c <= comments_per_related; ++c) {
      Comment cm;
      cm.id = rq.id + "_C" + std::to_string(c);
      cm.text = c % 2 ? "go to the visa office" : "thanks";
      cm.relevance_to_relq = c % 2 ? Label::Good : Label::Bad;
      cm.relevance_to_orgq = c % 2 ? Label::PotentiallyUseful : Label::Bad;
      rq.comments.push_back(cm);
    }
    t.related.push_back(rq);
  }
  return t;
}

}  // namespace cqarank::testing
