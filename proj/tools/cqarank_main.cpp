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

// cqarank: feature extraction, training, prediction and evaluation for
// community question answering ranking.
//
// Exit codes: 0 success, 1 data/validation error, 2 configuration/IO error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cqarank/cqarank.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string subtask;
  unsigned jobs = 1;
  std::optional<long long> seed;
};

cqarank::Subtask subtask_or_throw(const std::string& s) {
  auto st = cqarank::parse_subtask(s);
  if (!st) throw cqarank::io_error("--subtask must be A, B or C");
  return *st;
}

cqarank::Config config_from(const CommonFlags& f) {
  cqarank::Config cfg = cqarank::load_config(f.config);
  if (f.seed) {
    if (*f.seed < 0) throw cqarank::io_error("--seed must be non-negative");
    cfg.train.seed = static_cast<std::uint64_t>(*f.seed);
  }
  return cfg;
}

void add_common(CLI::App* cmd, CommonFlags& f, bool needs_config) {
  if (needs_config) cmd->add_option("--config", f.config, "Config file (key = value)")->required();
  cmd->add_option("--subtask", f.subtask, "Subtask A, B or C")
      ->required()
      ->check(CLI::IsMember({"A", "B", "C"}));
  cmd->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--seed", f.seed, "Training seed (overrides ranker.seed)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community question answering ranking with similarity features"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string corpus, out, train_path, dev_path, model_path, gold_path, pred_path;

  auto* extract = app.add_subcommand("extract", "Write the feature dump for a corpus");
  add_common(extract, flags, true);
  extract->add_option("--corpus", corpus, "Corpus (JSON lines)")->required();
  extract->add_option("--out", out, "Feature dump (TSV)")->required();

  auto* train = app.add_subcommand("train", "Train the three runs (primary, contr1, contr2)");
  add_common(train, flags, true);
  train->add_option("--train", train_path, "Training corpus")->required();
  train->add_option("--dev", dev_path, "Development corpus")->required();
  train->add_option("--out", out, "Model path prefix")->required();

  auto* predict = app.add_subcommand("predict", "Write a prediction file");
  add_common(predict, flags, true);
  predict->add_option("--model", model_path, "Model file")->required();
  predict->add_option("--corpus", corpus, "Corpus (JSON lines)")->required();
  predict->add_option("--out", out, "Prediction file")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Score a prediction file against gold labels");
  add_common(evaluate, flags, false);
  evaluate->add_option("--gold", gold_path, "Gold corpus (JSON lines)")->required();
  evaluate->add_option("--pred", pred_path, "Prediction file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cqarank::Subtask subtask = subtask_or_throw(flags.subtask);
    if (*extract) {
      auto cfg = config_from(flags);
      auto s = cqarank::cmd_extract(cfg, corpus, subtask, out, flags.jobs);
      std::cout << "instances " << s.instances << "\nfeatures_per_instance "
                << s.features_per_instance << '\n';
    } else if (*train) {
      auto cfg = config_from(flags);
      auto s = cqarank::cmd_train(cfg, train_path, dev_path, subtask, out, flags.jobs);
      for (const auto& run : s.grid) {
        std::printf("grid C=%g dev_MAP=%.6f J=%.6g\n", run.cost, run.dev_map, run.trained.objective);
      }
      for (const auto& run : s.runs) {
        std::printf("%s C=%g dev_MAP=%.6f threshold=%.6g -> %s\n", run.name.c_str(), run.model.cost,
                    run.dev_map, run.model.threshold, run.path.c_str());
      }
      for (const auto& w : s.warnings) std::cerr << "cqarank: warning: " << w << '\n';
    } else if (*predict) {
      auto cfg = config_from(flags);
      auto n = cqarank::cmd_predict(cfg, model_path, corpus, subtask, out, flags.jobs);
      std::cout << "predictions " << n << '\n';
    } else if (*evaluate) {
      auto report = cqarank::cmd_evaluate(gold_path, pred_path, subtask);
      std::cout << report.to_text() << report.to_json() << '\n';
    }
  } catch (const cqarank::Error& e) {
    std::cerr << "cqarank: error: " << e.what() << '\n';
    return e.kind() == cqarank::ErrorKind::Data ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "cqarank: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
