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

#include <clocale>
#include <cwctype>
#include <locale.h>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>
#include <wctype.h>

#include "cqarank/common.hpp"
#include "cqarank/porter.hpp"

namespace cqarank {

enum class ViewVariant { Stemmed, Unstemmed };

// A preprocessed text field. `lemmas[i]` is the lemma of the i-th surviving
// token; `tokens[i]` is the surface token, or the Porter stem of the lemma in
// the stemmed variant.
struct TextView {
  std::vector<std::string> tokens;
  std::vector<std::string> lemmas;
  bool stemmed = false;
  bool stopwords_removed = false;

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
};

struct LexResources {
  std::unordered_set<std::string> stopwords;
  std::unordered_map<std::string, std::string> lemma_table;
  std::unordered_set<std::string> noun_lexicon;
};

namespace utf8 {

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Decodes the code point starting at s[i] and advances i. Malformed
// sequences decode to U+FFFD, consuming one byte.
inline char32_t next(std::string_view s, std::size_t& i) {
  auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char b0 = byte(i);
  int len = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    ++i;
    return b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    unsigned char b = byte(i + k);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

}  // namespace utf8

namespace detail {

inline locale_t utf8_locale() {
  static locale_t loc = [] {
    locale_t l = newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(0));
    if (l == static_cast<locale_t>(0)) l = newlocale(LC_CTYPE_MASK, "C", static_cast<locale_t>(0));
    return l;
  }();
  return loc;
}

inline bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == U'’'; }

inline bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  }
  return iswalnum_l(static_cast<wint_t>(cp), utf8_locale()) != 0;
}

inline char32_t to_lower(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  return static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), utf8_locale()));
}

}  // namespace detail

// Lowercased maximal runs of letters, digits and apostrophes. Apostrophes
// only survive inside a token: leading and trailing ones are dropped.
inline std::vector<std::string> tokenize(std::string_view raw) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    std::size_t b = 0;
    std::size_t e = current.size();
    // Apostrophes are ASCII ' (1 byte) or U+2019 (3 bytes).
    auto strip_front = [&] {
      if (b < e && current[b] == '\'') { ++b; return true; }
      if (e - b >= 3 && current.compare(b, 3, "\xE2\x80\x99") == 0) { b += 3; return true; }
      return false;
    };
    auto strip_back = [&] {
      if (e > b && current[e - 1] == '\'') { --e; return true; }
      if (e - b >= 3 && current.compare(e - 3, 3, "\xE2\x80\x99") == 0) { e -= 3; return true; }
      return false;
    };
    while (strip_front()) {}
    while (strip_back()) {}
    if (e > b) out.push_back(current.substr(b, e - b));
    current.clear();
  };
  std::size_t i = 0;
  while (i < raw.size()) {
    char32_t cp = utf8::next(raw, i);
    if (detail::is_word_char(cp) || detail::is_apostrophe(cp)) {
      utf8::append(current, detail::to_lower(cp));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

// tokenize -> drop stopwords -> lemma lookup (identity on misses) ->
// optional Porter stem of the lemma.
inline TextView build_view(std::string_view raw, const LexResources& res, ViewVariant variant) {
  TextView view;
  view.stemmed = variant == ViewVariant::Stemmed;
  view.stopwords_removed = true;
  for (std::string& tok : tokenize(raw)) {
    if (res.stopwords.contains(tok)) continue;
    auto it = res.lemma_table.find(tok);
    std::string lemma = it == res.lemma_table.end() ? tok : it->second;
    if (view.stemmed) {
      std::string stem = porter_stem(lemma);
      // Porter can strip a one-letter token to nothing ("s").
      view.tokens.push_back(stem.empty() ? lemma : std::move(stem));
    } else {
      view.tokens.push_back(std::move(tok));
    }
    view.lemmas.push_back(std::move(lemma));
  }
  return view;
}

// Set of view lemmas found in the noun lexicon.
inline std::set<std::string> tag_nouns(const TextView& view, const LexResources& res) {
  std::set<std::string> nouns;
  for (const auto& lemma : view.lemmas) {
    if (res.noun_lexicon.contains(lemma)) nouns.insert(lemma);
  }
  return nouns;
}

namespace detail {

inline void check_lowercase(std::size_t lineno, std::string_view s, const std::string& path) {
  std::size_t i = 0;
  while (i < s.size()) {
    char32_t cp = utf8::next(s, i);
    if (to_lower(cp) != cp) {
      throw Error(ErrorKind::Io, path + ": line " + std::to_string(lineno) + ": entry '" +
                                     std::string(s) + "' is not lowercase");
    }
  }
}

}  // namespace detail

// One token per line; blank lines and lines starting with '#' are ignored.
inline std::unordered_set<std::string> load_word_list(const std::string& path) {
  std::unordered_set<std::string> words;
  for_each_line(path, [&](std::size_t lineno, std::string_view line) {
    std::string_view w = trim(line);
    if (w.empty() || w.front() == '#') return;
    detail::check_lowercase(lineno, w, path);
    words.emplace(w);
  });
  return words;
}

// `token TAB lemma` per line.
inline std::unordered_map<std::string, std::string> load_lemma_table(const std::string& path) {
  std::unordered_map<std::string, std::string> table;
  for_each_line(path, [&](std::size_t lineno, std::string_view line) {
    if (trim(line).empty() || line.front() == '#') return;
    auto cols = split(line, '\t');
    if (cols.size() != 2 || trim(cols[0]).empty() || trim(cols[1]).empty()) {
      throw Error(ErrorKind::Io, path + ": line " + std::to_string(lineno) + ": expected 2 columns");
    }
    std::string_view token = trim(cols[0]);
    std::string_view lemma = trim(cols[1]);
    detail::check_lowercase(lineno, token, path);
    detail::check_lowercase(lineno, lemma, path);
    table[std::string(token)] = std::string(lemma);
  });
  return table;
}

inline LexResources load_lex_resources(const std::string& stopwords_path,
                                       const std::string& lemmas_path,
                                       const std::string& nouns_path) {
  LexResources res;
  res.stopwords = load_word_list(stopwords_path);
  res.lemma_table = load_lemma_table(lemmas_path);
  res.noun_lexicon = load_word_list(nouns_path);
  return res;
}

}  // namespace cqarank
