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

#ifndef BBTP_COMBINER_H_
#define BBTP_COMBINER_H_

#include <string>
#include <vector>

#include "bbtp/model.h"

namespace bbtp {

struct PredictOptions {
  // Swap in the one-block-per-cycle predecoder / width-only decoder models.
  bool simple_predec = false;
  bool simple_dec = false;
  bool model_memory_dependencies = false;
};

// Throughput is the exact maximum of the component bounds. Bottlenecks are
// every component attaining it, ordered front end first; the primary one is
// the first of those.
Prediction Combine(Mode mode, std::vector<ComponentResult> components,
                   std::vector<std::string> notes = {});

// Whether some jump (or macro-fused compare-and-jump, taken as one unit)
// crosses or ends on a 32-byte boundary on a machine with the mitigation.
bool JccAffected(const BasicBlock& block, const MicroArchConfig& cfg);

Prediction PredictUnroll(const BasicBlock& block, const MicroArchConfig& cfg,
                         const PredictOptions& options = {});
Prediction PredictLoop(const BasicBlock& block, const MicroArchConfig& cfg,
                       const PredictOptions& options = {});
Prediction Predict(const BasicBlock& block, const MicroArchConfig& cfg, Mode mode,
                   const PredictOptions& options = {});

struct Counterfactual {
  Prediction prediction;
  Rational speedup{1};
};

// Re-combines `baseline` with the given component's bound set to zero.
// Throws kNotApplicable if the component is not part of the prediction, or
// if removing it leaves nothing bounding the throughput.
Counterfactual Idealize(const Prediction& baseline, Component idealized);

Counterfactual RunCounterfactual(const BasicBlock& block, const MicroArchConfig& cfg,
                                 Mode mode, Component idealized,
                                 const PredictOptions& options = {});

}  // namespace bbtp

#endif  // BBTP_COMBINER_H_
