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

#ifndef BBTP_FRONTEND_H_
#define BBTP_FRONTEND_H_

#include "bbtp/model.h"

namespace bbtp {

// Number of block iterations after which the predecoder's 16-byte fetch
// pattern repeats: lcm(l, 16) / l when unrolled, 1 for loops.
int PredecodePeriod(const BasicBlock& block, Mode mode);

// Predecoder bound over one predecode period. Each aligned 16-byte block
// costs ceil((L + O) / predecode_width) cycles plus the LCP penalty that the
// previous block's predecoding does not hide.
ComponentResult Predec(const BasicBlock& block, const MicroArchConfig& cfg, Mode mode);

// Unrolled predecoder bound evaluated over `copies` back-to-back copies of
// the block. `copies * l` must be a multiple of 16 (any multiple of the
// predecode period qualifies); otherwise throws kNotApplicable.
ComponentResult PredecOverCopies(const BasicBlock& block, const MicroArchConfig& cfg,
                                 int copies);

// One 16-byte block per cycle: l / 16.
ComponentResult SimplePredec(const BasicBlock& block);

// Simulates decoder allocation until the block's first instruction lands on
// the same decoder a second time, then divides the complex-decoder
// activations in between by the number of iterations.
ComponentResult Dec(const BasicBlock& block, const MicroArchConfig& cfg);

// max(n / d, c) over decode units (fused pairs count once).
ComponentResult SimpleDec(const BasicBlock& block, const MicroArchConfig& cfg);

// n / w, rounded up to whole cycles for blocks shorter than 32 bytes.
ComponentResult Dsb(const BasicBlock& block, const MicroArchConfig& cfg);

bool LsdEligible(const BasicBlock& block, const MicroArchConfig& cfg);

// ceil(n * u / i) / u with u from the configuration's unroll table.
// Throws kLsdNotApplicable when !LsdEligible.
ComponentResult Lsd(const BasicBlock& block, const MicroArchConfig& cfg);

}  // namespace bbtp

#endif  // BBTP_FRONTEND_H_
