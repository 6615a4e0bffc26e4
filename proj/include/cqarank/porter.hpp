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

// The original Porter (1980) suffix-stripping algorithm, without the later
// departures of the reference C release (bli->ble, logi->log, the short-word
// guard).

#pragma once

#include <string>
#include <string_view>

namespace cqarank {

namespace porter_detail {

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

inline bool is_consonant(std::string_view w, std::size_t i) {
  switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return false;
    case 'y':
      return i == 0 ? true : !is_consonant(w, i - 1);
    default:
      return true;
  }
}

// m in [C](VC)^m[V].
inline int measure(std::string_view stem) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < stem.size(); ++i) {
    bool vowel = !is_consonant(stem, i);
    if (prev_vowel && !vowel) ++m;
    prev_vowel = vowel;
  }
  return m;
}

inline bool contains_vowel(std::string_view stem) {
  for (std::size_t i = 0; i < stem.size(); ++i) {
    if (!is_consonant(stem, i)) return true;
  }
  return false;
}

inline bool ends_double_consonant(std::string_view w) {
  std::size_t n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: stem ends cvc where the final c is not w, x or y.
inline bool ends_cvc(std::string_view w) {
  std::size_t n = w.size();
  if (n < 3) return false;
  if (!is_consonant(w, n - 3) || is_consonant(w, n - 2) || !is_consonant(w, n - 1)) return false;
  char c = w[n - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

inline bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

// First rule whose suffix matches decides; when its condition on the stem
// fails the word is left alone.
template <typename Cond>
bool apply_first(std::string& w, std::initializer_list<Rule> rules, Cond cond) {
  for (const Rule& r : rules) {
    if (!ends_with(w, r.suffix)) continue;
    std::string_view stem = std::string_view(w).substr(0, w.size() - r.suffix.size());
    if (cond(stem)) {
      w.resize(stem.size());
      w.append(r.replacement);
      return true;
    }
    return false;
  }
  return false;
}

inline void step1a(std::string& w) {
  if (ends_with(w, "sses")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ies")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ss")) {
    // unchanged
  } else if (ends_with(w, "s")) {
    w.pop_back();
  }
}

inline void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    if (measure(std::string_view(w).substr(0, w.size() - 3)) > 0) w.pop_back();
    return;
  }
  bool stripped = false;
  for (std::string_view suffix : {std::string_view("ed"), std::string_view("ing")}) {
    if (ends_with(w, suffix) &&
        contains_vowel(std::string_view(w).substr(0, w.size() - suffix.size()))) {
      w.resize(w.size() - suffix.size());
      stripped = true;
      break;
    }
  }
  if (!stripped) return;
  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w.push_back('e');
  } else if (ends_double_consonant(w)) {
    char c = w.back();
    if (c != 'l' && c != 's' && c != 'z') w.pop_back();
  } else if (measure(w) == 1 && ends_cvc(w)) {
    w.push_back('e');
  }
}

inline void step1c(std::string& w) {
  if (ends_with(w, "y") && contains_vowel(std::string_view(w).substr(0, w.size() - 1))) {
    w.back() = 'i';
  }
}

inline void step2(std::string& w) {
  apply_first(w,
              {{"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
               {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},    {"entli", "ent"},
               {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
               {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
               {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"}},
              [](std::string_view stem) { return measure(stem) > 0; });
}

inline void step3(std::string& w) {
  apply_first(w,
              {{"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
               {"ical", "ic"},  {"ful", ""},   {"ness", ""}},
              [](std::string_view stem) { return measure(stem) > 0; });
}

inline void step4(std::string& w) {
  if (ends_with(w, "ion")) {
    std::string_view stem = std::string_view(w).substr(0, w.size() - 3);
    // "ion" is the only candidate ending in 'n'; no other rule can match.
    if (measure(stem) > 1 && !stem.empty() && (stem.back() == 's' || stem.back() == 't')) {
      w.resize(stem.size());
    }
    return;
  }
  apply_first(w,
              {{"al", ""},   {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
               {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
               {"ent", ""},  {"ou", ""},   {"ism", ""},  {"ate", ""}, {"iti", ""},
               {"ous", ""},  {"ive", ""},  {"ize", ""}},
              [](std::string_view stem) { return measure(stem) > 1; });
}

inline void step5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  std::string_view stem = std::string_view(w).substr(0, w.size() - 1);
  int m = measure(stem);
  if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
}

inline void step5b(std::string& w) {
  if (ends_with(w, "ll") && measure(w) > 1) w.pop_back();
}

}  // namespace porter_detail

// Stems a lowercase token. Tokens containing bytes outside [a-z0-9'] are
// returned unchanged so multi-byte UTF-8 sequences are never split.
inline std::string porter_stem(std::string_view token) {
  for (char c : token) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'';
    if (!ok) return std::string(token);
  }
  std::string w(token);
  if (w.empty()) return w;
  using namespace porter_detail;
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5a(w);
  step5b(w);
  return w;
}

}  // namespace cqarank
