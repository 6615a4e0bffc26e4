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

#include "cqarank/common.hpp"
#include "cqarank/corpus.hpp"
#include "cqarank/embeddings.hpp"
#include "cqarank/evaluation.hpp"
#include "cqarank/features.hpp"
#include "cqarank/frames.hpp"
#include "cqarank/knowledge_graph.hpp"
#include "cqarank/lexical_sim.hpp"
#include "cqarank/pipeline.hpp"
#include "cqarank/porter.hpp"
#include "cqarank/preprocess.hpp"
#include "cqarank/ranker.hpp"
