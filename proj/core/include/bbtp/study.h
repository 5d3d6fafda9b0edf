// Copyright 2026 The bbtp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BBTP_STUDY_H_
#define BBTP_STUDY_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bbtp/combiner.h"
#include "bbtp/io.h"
#include "bbtp/model.h"

namespace bbtp {

struct BlockOutcome {
  std::filesystem::path path;
  std::optional<Prediction> prediction;  // unset when loading or analysis failed
  std::string error;
  double seconds = 0.0;  // analysis time, excluding file loading
};

// Loads and predicts every block, fanning out over `jobs` worker threads.
// Results come back in input order regardless of scheduling.
std::vector<BlockOutcome> PredictCorpus(std::span<const std::filesystem::path> paths,
                                        const InstructionDatabase& db,
                                        const MicroArchConfig& cfg, Mode mode,
                                        const PredictOptions& options = {},
                                        unsigned jobs = 1);

// Sorted *.json files directly inside `dir`.
std::vector<std::filesystem::path> ListCorpus(const std::filesystem::path& dir);

std::map<Component, std::size_t> PrimaryBottleneckCounts(
    std::span<const Prediction> predictions);

// (bottleneck on the first arch, bottleneck on the second) -> block count.
// The spans are paired by index.
std::map<std::pair<Component, Component>, std::size_t> BottleneckTransitions(
    std::span<const Prediction> from, std::span<const Prediction> to);

struct SpeedupSummary {
  std::size_t count = 0;
  double arithmetic_mean = 0.0;
  double geometric_mean = 0.0;
  double median = 0.0;
};

SpeedupSummary SummarizeSpeedups(std::span<const double> speedups);

}  // namespace bbtp

#endif  // BBTP_STUDY_H_
