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

// Forum threads, relevance labels, per-subtask instances and the
// tab-separated prediction file.

#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "cqarank/common.hpp"

namespace cqarank {

// Question scale: PerfectMatch, Relevant, Irrelevant.
// Comment scale: Good, PotentiallyUseful, Bad.
enum class Label { PerfectMatch, Relevant, Irrelevant, Good, PotentiallyUseful, Bad };

inline const char* label_name(Label l) {
  switch (l) {
    case Label::PerfectMatch: return "PerfectMatch";
    case Label::Relevant: return "Relevant";
    case Label::Irrelevant: return "Irrelevant";
    case Label::Good: return "Good";
    case Label::PotentiallyUseful: return "PotentiallyUseful";
    case Label::Bad: return "Bad";
  }
  return "?";
}

inline std::optional<Label> parse_label(std::string_view s) {
  for (Label l : {Label::PerfectMatch, Label::Relevant, Label::Irrelevant, Label::Good,
                  Label::PotentiallyUseful, Label::Bad}) {
    if (s == label_name(l)) return l;
  }
  return std::nullopt;
}

inline bool is_question_scale(Label l) {
  return l == Label::PerfectMatch || l == Label::Relevant || l == Label::Irrelevant;
}

// Binary relevance used at test time: PerfectMatch/Relevant and Good are
// true; Irrelevant, PotentiallyUseful and Bad are false.
inline bool binarize_label(Label l) {
  switch (l) {
    case Label::PerfectMatch:
    case Label::Relevant:
    case Label::Good:
      return true;
    case Label::Irrelevant:
    case Label::PotentiallyUseful:
    case Label::Bad:
      return false;
  }
  return false;
}

// Ordinal training target.
inline int grade_label(Label l) {
  switch (l) {
    case Label::PerfectMatch: return 2;
    case Label::Relevant: return 1;
    case Label::Irrelevant: return 0;
    case Label::Good: return 2;
    case Label::PotentiallyUseful: return 1;
    case Label::Bad: return 0;
  }
  return 0;
}

struct Comment {
  std::string id;
  std::string text;
  std::optional<Label> relevance_to_relq;
  std::optional<Label> relevance_to_orgq;

  bool operator==(const Comment&) const = default;
};

struct RelatedQuestion {
  std::string id;
  std::string subject;
  std::string body;
  std::optional<Label> relevance_to_orgq;
  std::optional<int> search_rank;
  std::vector<Comment> comments;

  bool operator==(const RelatedQuestion&) const = default;
};

struct Thread {
  std::string id;
  std::string subject;
  std::string body;
  std::vector<RelatedQuestion> related;

  bool operator==(const Thread&) const = default;
};

enum class Subtask { A, B, C };

inline const char* subtask_name(Subtask s) {
  switch (s) {
    case Subtask::A: return "A";
    case Subtask::B: return "B";
    case Subtask::C: return "C";
  }
  return "?";
}

inline std::optional<Subtask> parse_subtask(std::string_view s) {
  if (s == "A") return Subtask::A;
  if (s == "B") return Subtask::B;
  if (s == "C") return Subtask::C;
  return std::nullopt;
}

// One (query, candidate) pair. The index fields locate the candidate inside
// the corpus it was enumerated from; `comment` is npos for subtask B.
struct Instance {
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  std::string query_id;
  std::string candidate_id;
  Subtask subtask = Subtask::A;
  std::optional<Label> gold_label;
  std::size_t thread = 0;
  std::size_t related = 0;
  std::size_t comment = npos;
};

namespace detail {

class ThreadParser {
 public:
  explicit ThreadParser(std::size_t lineno) : lineno_(lineno) {}

  Thread parse(const nlohmann::json& j) const {
    require_object(j, "");
    Thread t;
    t.id = get_id(j, "");
    t.subject = get_string(j, "", "subject");
    t.body = get_string(j, "", "body");
    const auto& related = get_array(j, "", "related");
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < related.size(); ++i) {
      std::string prefix = "related[" + std::to_string(i) + "].";
      RelatedQuestion rq = parse_related(related[i], prefix);
      if (!seen.insert(rq.id).second) fail("duplicate related question id " + rq.id);
      t.related.push_back(std::move(rq));
    }
    return t;
  }

 private:
  RelatedQuestion parse_related(const nlohmann::json& j, const std::string& prefix) const {
    require_object(j, prefix);
    RelatedQuestion rq;
    rq.id = get_id(j, prefix);
    rq.subject = get_string(j, prefix, "subject");
    rq.body = get_string(j, prefix, "body");
    rq.relevance_to_orgq = get_label(j, prefix, "relevance_to_orgq", true);
    if (auto it = j.find("search_rank"); it != j.end() && !it->is_null()) {
      if (!it->is_number_integer()) fail("field " + prefix + "search_rank must be an integer");
      long long r = it->get<long long>();
      if (r < 1 || r > std::numeric_limits<int>::max())
        fail("field " + prefix + "search_rank must be >= 1");
      rq.search_rank = static_cast<int>(r);
    }
    const auto& comments = get_array(j, prefix, "comments");
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < comments.size(); ++i) {
      std::string cprefix = prefix + "comments[" + std::to_string(i) + "].";
      const auto& cj = comments[i];
      require_object(cj, cprefix);
      Comment c;
      c.id = get_id(cj, cprefix);
      c.text = get_string(cj, cprefix, "text");
      c.relevance_to_relq = get_label(cj, cprefix, "relevance_to_relq", false);
      c.relevance_to_orgq = get_label(cj, cprefix, "relevance_to_orgq", false);
      if (!seen.insert(c.id).second) fail("duplicate comment id " + c.id);
      rq.comments.push_back(std::move(c));
    }
    return rq;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw line_error(ErrorKind::Data, lineno_, what);
  }

  void require_object(const nlohmann::json& j, const std::string& prefix) const {
    if (!j.is_object()) {
      fail(prefix.empty() ? std::string("expected a JSON object")
                          : "field " + prefix.substr(0, prefix.size() - 1) + " must be an object");
    }
  }

  const nlohmann::json& get_field(const nlohmann::json& j, const std::string& prefix,
                                  const char* name) const {
    auto it = j.find(name);
    if (it == j.end()) fail("missing field " + prefix + name);
    return *it;
  }

  std::string get_string(const nlohmann::json& j, const std::string& prefix,
                         const char* name) const {
    const auto& v = get_field(j, prefix, name);
    if (!v.is_string()) fail("field " + prefix + name + " must be a string");
    return v.get<std::string>();
  }

  std::string get_id(const nlohmann::json& j, const std::string& prefix) const {
    std::string id = get_string(j, prefix, "id");
    if (id.empty()) fail("field " + prefix + "id must be non-empty");
    return id;
  }

  const nlohmann::json& get_array(const nlohmann::json& j, const std::string& prefix,
                                  const char* name) const {
    const auto& v = get_field(j, prefix, name);
    if (!v.is_array()) fail("field " + prefix + name + " must be an array");
    return v;
  }

  std::optional<Label> get_label(const nlohmann::json& j, const std::string& prefix,
                                 const char* name, bool question_scale) const {
    auto it = j.find(name);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) fail("field " + prefix + name + " must be a string");
    auto label = parse_label(it->get<std::string>());
    if (!label || is_question_scale(*label) != question_scale) {
      fail("invalid label '" + it->get<std::string>() + "' in field " + prefix + name);
    }
    return label;
  }

  std::size_t lineno_;
};

inline nlohmann::json label_json(const std::optional<Label>& l) {
  return l ? nlohmann::json(label_name(*l)) : nlohmann::json();
}

}  // namespace detail

// Parses one JSON object per line. Blank lines are skipped but still counted
// for error messages.
inline std::vector<Thread> load_corpus(const std::string& path) {
  std::vector<Thread> threads;
  std::unordered_map<std::string, std::size_t> first_line;
  for_each_line(path, [&](std::size_t lineno, std::string_view line) {
    if (trim(line).empty()) return;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw line_error(ErrorKind::Data, lineno, std::string("malformed JSON: ") + e.what());
    }
    Thread t = detail::ThreadParser(lineno).parse(j);
    auto [it, inserted] = first_line.emplace(t.id, lineno);
    if (!inserted) {
      throw data_error("duplicate thread id " + t.id + " (lines " + std::to_string(it->second) +
                       " and " + std::to_string(lineno) + ")");
    }
    threads.push_back(std::move(t));
  });
  return threads;
}

inline nlohmann::json thread_to_json(const Thread& t) {
  nlohmann::json related = nlohmann::json::array();
  for (const auto& rq : t.related) {
    nlohmann::json comments = nlohmann::json::array();
    for (const auto& c : rq.comments) {
      nlohmann::json cj = {{"id", c.id}, {"text", c.text}};
      if (c.relevance_to_relq) cj["relevance_to_relq"] = detail::label_json(c.relevance_to_relq);
      if (c.relevance_to_orgq) cj["relevance_to_orgq"] = detail::label_json(c.relevance_to_orgq);
      comments.push_back(std::move(cj));
    }
    nlohmann::json rj = {{"id", rq.id}, {"subject", rq.subject}, {"body", rq.body}};
    if (rq.relevance_to_orgq) rj["relevance_to_orgq"] = detail::label_json(rq.relevance_to_orgq);
    if (rq.search_rank) rj["search_rank"] = *rq.search_rank;
    rj["comments"] = std::move(comments);
    related.push_back(std::move(rj));
  }
  return {{"id", t.id}, {"subject", t.subject}, {"body", t.body}, {"related", std::move(related)}};
}

inline void write_corpus(std::span<const Thread> threads, const std::string& path) {
  std::ofstream out = open_output(path);
  for (const auto& t : threads) out << thread_to_json(t).dump() << '\n';
  if (!out) throw io_error("write failed: " + path);
}

// Enumerates the instances of one subtask in corpus order.
//   A: query = related question, candidates = its comments.
//   B: query = original question, candidates = related questions.
//   C: query = original question, candidates = all comments of all
//      related questions.
inline std::vector<Instance> enumerate_instances(std::span<const Thread> threads, Subtask subtask) {
  std::vector<Instance> out;
  for (std::size_t ti = 0; ti < threads.size(); ++ti) {
    const Thread& t = threads[ti];
    for (std::size_t ri = 0; ri < t.related.size(); ++ri) {
      const RelatedQuestion& rq = t.related[ri];
      if (subtask == Subtask::B) {
        out.push_back({t.id, rq.id, subtask, rq.relevance_to_orgq, ti, ri, Instance::npos});
        continue;
      }
      for (std::size_t ci = 0; ci < rq.comments.size(); ++ci) {
        const Comment& c = rq.comments[ci];
        if (subtask == Subtask::A) {
          out.push_back({rq.id, c.id, subtask, c.relevance_to_relq, ti, ri, ci});
        } else {
          out.push_back({t.id, c.id, subtask, c.relevance_to_orgq, ti, ri, ci});
        }
      }
    }
  }
  return out;
}

// Throws naming the first instance without a gold label.
inline void require_labeled(std::span<const Instance> instances) {
  for (const auto& inst : instances) {
    if (!inst.gold_label) {
      throw data_error("unlabeled instance " + inst.query_id + "/" + inst.candidate_id);
    }
  }
}

struct Prediction {
  std::string query_id;
  std::string candidate_id;
  double score = 0.0;
  bool label = false;
};

// At least six significant digits in plain decimal notation.
inline std::string format_score(double score) {
  int decimals = 6;
  if (score != 0.0) {
    int exponent = static_cast<int>(std::floor(std::log10(std::fabs(score))));
    decimals = std::max(6, 5 - exponent);
  }
  char buf[512];
  if (decimals > 24) {
    std::snprintf(buf, sizeof(buf), "%.6e", score);
  } else {
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, score);
  }
  return buf;
}

inline void write_predictions(std::span<const Prediction> predictions, std::ostream& out) {
  for (const auto& p : predictions) {
    if (!std::isfinite(p.score)) throw data_error("non-finite score for " + p.candidate_id);
  }
  for (const auto& p : predictions) {
    out << p.query_id << '\t' << p.candidate_id << "\t0\t" << format_score(p.score) << '\t'
        << (p.label ? "true" : "false") << '\n';
  }
}

// Writes `query_id TAB candidate_id TAB 0 TAB score TAB true|false` lines in
// input order. Nothing is written if any score is non-finite.
inline void export_predictions(std::span<const Prediction> predictions, const std::string& path) {
  std::ostringstream buf;
  write_predictions(predictions, buf);
  std::ofstream out = open_output(path);
  out << buf.str();
  if (!out) throw io_error("write failed: " + path);
}

inline std::vector<Prediction> load_predictions(const std::string& path) {
  std::vector<Prediction> out;
  for_each_line(path, [&](std::size_t lineno, std::string_view line) {
    if (trim(line).empty()) return;
    auto cols = split(line, '\t');
    if (cols.size() != 5) {
      throw line_error(ErrorKind::Io, lineno,
                       "expected 5 tab-separated columns, found " + std::to_string(cols.size()));
    }
    Prediction p;
    p.query_id = std::string(cols[0]);
    p.candidate_id = std::string(cols[1]);
    if (p.query_id.empty() || p.candidate_id.empty())
      throw line_error(ErrorKind::Io, lineno, "empty id");
    if (!parse_double(cols[3], p.score) || !std::isfinite(p.score))
      throw line_error(ErrorKind::Io, lineno, "invalid score '" + std::string(cols[3]) + "'");
    if (cols[4] == "true") {
      p.label = true;
    } else if (cols[4] == "false") {
      p.label = false;
    } else {
      throw line_error(ErrorKind::Io, lineno, "label must be true or false");
    }
    out.push_back(std::move(p));
  });
  return out;
}

}  // namespace cqarank
