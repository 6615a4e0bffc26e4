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

#include <map>
#include <set>
#include <string>
#include <unordered_map>

#include "cqarank/common.hpp"
#include "cqarank/preprocess.hpp"

namespace cqarank {

struct FrameLexicon {
  std::unordered_map<std::string, std::set<std::string>> evokes;

  bool operator==(const FrameLexicon&) const = default;
};

// `lemma TAB frame` rows; repeated rows collapse.
inline FrameLexicon load_frame_lexicon(const std::string& path) {
  FrameLexicon lex;
  for_each_line(path, [&](std::size_t lineno, std::string_view line) {
    if (trim(line).empty() || line.front() == '#') return;
    auto cols = split(line, '\t');
    if (cols.size() != 2) throw line_error(ErrorKind::Data, lineno, "expected 2 columns");
    std::string_view lemma = trim(cols[0]);
    std::string_view frame = trim(cols[1]);
    if (lemma.empty()) throw line_error(ErrorKind::Data, lineno, "blank lemma");
    if (frame.empty()) throw line_error(ErrorKind::Data, lineno, "blank frame");
    lex.evokes[std::string(lemma)].emplace(frame);
  });
  return lex;
}

using FrameMap = std::map<std::string, std::set<std::string>>;

// frame -> lemmas of the view that evoke it.
inline FrameMap extract_frames(const TextView& view, const FrameLexicon& lex) {
  FrameMap frames;
  for (const auto& lemma : view.lemmas) {
    auto it = lex.evokes.find(lemma);
    if (it == lex.evokes.end()) continue;
    for (const auto& f : it->second) frames[f].insert(lemma);
  }
  return frames;
}

// Over frames evoked by both texts: sum of |common evoking lemmas| divided by
// sum of |union of evoking lemmas|.
inline double frame_overlap_similarity(const TextView& a, const TextView& b,
                                       const FrameLexicon& lex) {
  FrameMap fa = extract_frames(a, lex);
  FrameMap fb = extract_frames(b, lex);
  std::size_t common = 0;
  std::size_t total = 0;
  for (const auto& [frame, la] : fa) {
    auto it = fb.find(frame);
    if (it == fb.end()) continue;
    const auto& lb = it->second;
    std::size_t inter = 0;
    for (const auto& l : la) inter += lb.count(l);
    common += inter;
    total += la.size() + lb.size() - inter;
  }
  return total == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(total);
}

}  // namespace cqarank
