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

#include "bbtp/combiner.h"

#include <algorithm>
#include <cstdint>
#include <string>

#include "bbtp/backend.h"
#include "bbtp/error.h"
#include "bbtp/frontend.h"
#include "bbtp/precedence.h"

namespace bbtp {
namespace {

constexpr std::int64_t kJccBoundary = 32;

void AddFrontEndDecoders(const BasicBlock& block, const MicroArchConfig& cfg, Mode mode,
                         const PredictOptions& options,
                         std::vector<ComponentResult>& components) {
  components.push_back(options.simple_predec ? SimplePredec(block)
                                             : Predec(block, cfg, mode));
  components.push_back(options.simple_dec ? SimpleDec(block, cfg) : Dec(block, cfg));
}

void AddBackEnd(const BasicBlock& block, const MicroArchConfig& cfg,
                const PredictOptions& options, std::vector<ComponentResult>& components) {
  components.push_back(Issue(block, cfg));
  components.push_back(Ports(block));
  components.push_back(
      Precedence(block, GraphOptions{options.model_memory_dependencies}));
}

std::vector<std::string> PrecedenceNotes(const std::vector<ComponentResult>& components) {
  for (const auto& c : components) {
    if (const auto* d = std::get_if<PrecedenceDetail>(&c.detail)) return d->notes;
  }
  return {};
}

}  // namespace

Prediction Combine(Mode mode, std::vector<ComponentResult> components,
                   std::vector<std::string> notes) {
  if (components.empty()) {
    throw Error(ErrorCode::kNotApplicable, "no components to combine");
  }
  Prediction p;
  p.mode = mode;
  p.notes = std::move(notes);
  for (auto& c : components) {
    p.throughput = std::max(p.throughput, c.bound);
    p.components.insert_or_assign(c.component, std::move(c));
  }
  // std::map iterates in Component declaration order, i.e. front end first.
  for (const auto& [component, result] : p.components) {
    if (result.bound == p.throughput) p.bottlenecks.push_back(component);
  }
  p.primary_bottleneck = p.bottlenecks.front();
  return p;
}

bool JccAffected(const BasicBlock& block, const MicroArchConfig& cfg) {
  if (!cfg.jcc_erratum) return false;
  const auto base = static_cast<std::int64_t>(block.base_address());
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (block.IsFusedSecond(i)) continue;
    const bool fused = block.IsFusedFirst(i);
    const bool jump = block[i].is_branch || (fused && block[i + 1].is_branch);
    if (!jump) continue;
    const std::int64_t start = base + block.Offset(i);
    const std::int64_t len =
        block[i].length_bytes + (fused ? block[i + 1].length_bytes : 0);
    const std::int64_t end = start + len;
    if (start / kJccBoundary != (end - 1) / kJccBoundary || end % kJccBoundary == 0) {
      return true;
    }
  }
  return false;
}

Prediction PredictUnroll(const BasicBlock& block, const MicroArchConfig& cfg,
                         const PredictOptions& options) {
  std::vector<ComponentResult> components;
  AddFrontEndDecoders(block, cfg, Mode::kUnroll, options, components);
  AddBackEnd(block, cfg, options, components);
  auto notes = PrecedenceNotes(components);
  return Combine(Mode::kUnroll, std::move(components), std::move(notes));
}

Prediction PredictLoop(const BasicBlock& block, const MicroArchConfig& cfg,
                       const PredictOptions& options) {
  std::vector<std::string> notes;
  const std::size_t last = block.size() - 1;
  const bool ends_in_branch =
      block[last].is_branch || (block.IsFusedSecond(last) && block[last - 1].is_branch);
  if (!ends_in_branch) notes.push_back("block does not end in a branch");

  std::vector<ComponentResult> components;
  if (JccAffected(block, cfg)) {
    notes.push_back("JCC erratum: front end served by predecoder and decoders");
    AddFrontEndDecoders(block, cfg, Mode::kLoop, options, components);
  } else if (LsdEligible(block, cfg)) {
    components.push_back(Lsd(block, cfg));
  } else {
    components.push_back(Dsb(block, cfg));
  }
  AddBackEnd(block, cfg, options, components);
  for (auto& note : PrecedenceNotes(components)) notes.push_back(std::move(note));
  return Combine(Mode::kLoop, std::move(components), std::move(notes));
}

Prediction Predict(const BasicBlock& block, const MicroArchConfig& cfg, Mode mode,
                   const PredictOptions& options) {
  return mode == Mode::kUnroll ? PredictUnroll(block, cfg, options)
                               : PredictLoop(block, cfg, options);
}

Counterfactual Idealize(const Prediction& baseline, Component idealized) {
  if (!baseline.Has(idealized)) {
    throw Error(ErrorCode::kNotApplicable,
                std::string(ComponentName(idealized)) + " is not part of this " +
                    std::string(ModeName(baseline.mode)) + " prediction");
  }
  std::vector<ComponentResult> components;
  for (const auto& [component, result] : baseline.components) {
    components.push_back(result);
    if (component == idealized) {
      components.back().bound = Rational(0);
      components.back().detail = std::monostate{};
    }
  }
  Counterfactual cf{Combine(baseline.mode, std::move(components), baseline.notes), Rational(1)};
  if (cf.prediction.throughput == Rational(0)) {
    if (baseline.throughput != Rational(0)) {
      throw Error(ErrorCode::kNotApplicable,
                  "idealizing " + std::string(ComponentName(idealized)) +
                      " leaves the throughput unbounded");
    }
    return cf;
  }
  cf.speedup = baseline.throughput / cf.prediction.throughput;
  return cf;
}

Counterfactual RunCounterfactual(const BasicBlock& block, const MicroArchConfig& cfg,
                                 Mode mode, Component idealized,
                                 const PredictOptions& options) {
  return Idealize(Predict(block, cfg, mode, options), idealized);
}

}  // namespace bbtp
