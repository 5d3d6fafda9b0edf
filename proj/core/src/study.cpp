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

#include "bbtp/study.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "bbtp/error.h"

namespace bbtp {

std::vector<BlockOutcome> PredictCorpus(std::span<const std::filesystem::path> paths,
                                        const InstructionDatabase& db,
                                        const MicroArchConfig& cfg, Mode mode,
                                        const PredictOptions& options, unsigned jobs) {
  std::vector<BlockOutcome> outcomes(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < paths.size(); i = next++) {
      BlockOutcome& out = outcomes[i];
      out.path = paths[i];
      try {
        const BasicBlock block = LoadBlock(paths[i], db);
        const auto start = std::chrono::steady_clock::now();
        out.prediction = Predict(block, cfg, mode, options);
        out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      } catch (const std::exception& e) {
        out.error = e.what();
      }
    }
  };

  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(paths.size(), 1)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  return outcomes;
}

std::vector<std::filesystem::path> ListCorpus(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::directory_iterator it(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot list " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> out;
  for (const auto& entry : it) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::map<Component, std::size_t> PrimaryBottleneckCounts(
    std::span<const Prediction> predictions) {
  std::map<Component, std::size_t> counts;
  for (const auto& p : predictions) ++counts[p.primary_bottleneck];
  return counts;
}

std::map<std::pair<Component, Component>, std::size_t> BottleneckTransitions(
    std::span<const Prediction> from, std::span<const Prediction> to) {
  if (from.size() != to.size()) {
    throw Error(ErrorCode::kNotApplicable, "transition sets differ in size");
  }
  std::map<std::pair<Component, Component>, std::size_t> counts;
  for (std::size_t i = 0; i < from.size(); ++i) {
    ++counts[{from[i].primary_bottleneck, to[i].primary_bottleneck}];
  }
  return counts;
}

SpeedupSummary SummarizeSpeedups(std::span<const double> speedups) {
  SpeedupSummary s;
  s.count = speedups.size();
  if (speedups.empty()) return s;
  double sum = 0.0, log_sum = 0.0;
  for (double v : speedups) {
    sum += v;
    log_sum += std::log(v);
  }
  const double n = static_cast<double>(speedups.size());
  s.arithmetic_mean = sum / n;
  s.geometric_mean = std::exp(log_sum / n);
  std::vector<double> sorted(speedups.begin(), speedups.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
  return s;
}

}  // namespace bbtp
