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

#include "bbtp/frontend.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbtp/error.h"

namespace bbtp {
namespace {

constexpr std::int64_t kPredecodeBlockBytes = 16;
constexpr int kLcpPenaltyCycles = 3;

std::int64_t CeilDiv(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Lays out `copies` copies of the block and accumulates L/O/LCP per 16-byte
// block. With `periodic`, block indices wrap modulo the period so that the
// trailing partial block merges with the leading one, as in steady state.
ComponentResult ComputePredec(const BasicBlock& block, const MicroArchConfig& cfg,
                              int copies, bool periodic) {
  const std::int64_t l = block.total_length();
  const std::int64_t base = static_cast<std::int64_t>(block.base_address());
  const std::int64_t span = l * copies;
  const std::int64_t first_block = base / kPredecodeBlockBytes;
  std::int64_t n_blocks = 0;
  if (periodic) {
    if (span % kPredecodeBlockBytes != 0) {
      throw Error(ErrorCode::kNotApplicable,
                  "unrolled predecode layout needs a multiple of 16 bytes, got " +
                      std::to_string(span));
    }
    n_blocks = span / kPredecodeBlockBytes;
  } else {
    n_blocks = (base + span - 1) / kPredecodeBlockBytes - first_block + 1;
  }

  auto index_of = [&](std::int64_t address) {
    const std::int64_t rel = address / kPredecodeBlockBytes - first_block;
    return static_cast<std::size_t>(periodic ? rel % n_blocks : rel);
  };

  std::vector<PredecodeBlockStats> stats(static_cast<std::size_t>(n_blocks));
  for (std::size_t b = 0; b < stats.size(); ++b) stats[b].block_index = static_cast<int>(b);

  for (int c = 0; c < copies; ++c) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      const Instruction& instr = block[i];
      const std::int64_t start = base + c * l + block.Offset(i);
      const std::int64_t last = start + instr.length_bytes - 1;
      const std::int64_t opcode = start + instr.opcode_offset;
      stats[index_of(last)].last_byte_count++;
      if (opcode / kPredecodeBlockBytes != last / kPredecodeBlockBytes) {
        stats[index_of(opcode)].opcode_only_count++;
      }
      if (instr.has_lcp) stats[index_of(opcode)].lcp_count++;
    }
  }

  for (auto& s : stats) {
    s.cycles_nlcp = static_cast<int>(
        CeilDiv(s.last_byte_count + s.opcode_only_count, cfg.predecode_width));
  }
  std::int64_t total = 0;
  for (std::size_t b = 0; b < stats.size(); ++b) {
    const auto& prev = stats[(b + stats.size() - 1) % stats.size()];
    stats[b].cycles_lcp =
        std::max(0, kLcpPenaltyCycles * stats[b].lcp_count - (prev.cycles_nlcp - 1));
    total += stats[b].cycles_nlcp + stats[b].cycles_lcp;
  }

  return {Component::kPredec, Rational(total, copies), PredecDetail{copies, std::move(stats)}};
}

struct DecodeUnit {
  std::size_t index;
  bool complex;
  int available_after_complex;
  bool macro_fusible;
  bool branch;
};

// Macro-fused pairs decode as one unit carrying the first instruction's
// decoder class and either member's branch flag.
std::vector<DecodeUnit> DecodeUnits(const BasicBlock& block, const MicroArchConfig& cfg) {
  std::vector<DecodeUnit> units;
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (block.IsFusedSecond(i)) continue;
    const Instruction& instr = block[i];
    const int avail = std::clamp(
        instr.n_available_simple_decoders.value_or(cfg.n_decoders - 1), 0,
        cfg.n_decoders - 1);
    bool branch = instr.is_branch;
    if (block.IsFusedFirst(i)) branch = branch || block[i + 1].is_branch;
    units.push_back({i, instr.requires_complex_decoder, avail,
                     instr.macro_fusible_with_next, branch});
  }
  return units;
}

}  // namespace

int PredecodePeriod(const BasicBlock& block, Mode mode) {
  if (mode == Mode::kLoop) return 1;
  const int l = block.total_length();
  return std::lcm(l, static_cast<int>(kPredecodeBlockBytes)) / l;
}

ComponentResult Predec(const BasicBlock& block, const MicroArchConfig& cfg, Mode mode) {
  return ComputePredec(block, cfg, PredecodePeriod(block, mode), mode == Mode::kUnroll);
}

ComponentResult PredecOverCopies(const BasicBlock& block, const MicroArchConfig& cfg,
                                 int copies) {
  if (copies < 1) throw Error(ErrorCode::kNotApplicable, "copies must be positive");
  return ComputePredec(block, cfg, copies, /*periodic=*/true);
}

ComponentResult SimplePredec(const BasicBlock& block) {
  return {Component::kSimplePredec,
          Rational(block.total_length(), kPredecodeBlockBytes), {}};
}

ComponentResult Dec(const BasicBlock& block, const MicroArchConfig& cfg) {
  const int n_decoders = cfg.n_decoders;
  const std::vector<DecodeUnit> units = DecodeUnits(block, cfg);

  int cur_dec = n_decoders - 1;
  int n_available = 0;
  // Index 0 unused so that indices match iteration numbers.
  std::vector<int> complex_in_iteration{0};
  std::vector<int> first_on_decoder(static_cast<std::size_t>(n_decoders), -1);
  int iteration = 0;

  while (true) {
    ++iteration;
    complex_in_iteration.push_back(0);
    for (std::size_t k = 0; k < units.size(); ++k) {
      const DecodeUnit& unit = units[k];
      if (unit.complex) {
        cur_dec = 0;
        n_available = unit.available_after_complex;
      } else if (n_available == 0 ||
                 (cur_dec + 1 == n_decoders - 1 && unit.macro_fusible &&
                  !cfg.macro_fusible_on_last_decoder)) {
        cur_dec = 0;
        n_available = n_decoders - 1;
      } else {
        ++cur_dec;
        --n_available;
      }
      if (unit.branch) n_available = 0;
      if (cur_dec == 0) ++complex_in_iteration[static_cast<std::size_t>(iteration)];

      if (k != 0) continue;
      const int f = first_on_decoder[static_cast<std::size_t>(cur_dec)];
      if (f >= 0) {
        DecDetail detail;
        detail.first_iteration = f;
        detail.final_iteration = iteration;
        detail.unroll = iteration - f;
        detail.complex_per_iteration.assign(complex_in_iteration.begin() + f,
                                            complex_in_iteration.begin() + iteration);
        const int cycles = std::accumulate(detail.complex_per_iteration.begin(),
                                           detail.complex_per_iteration.end(), 0);
        return {Component::kDec, Rational(cycles, detail.unroll), std::move(detail)};
      }
      first_on_decoder[static_cast<std::size_t>(cur_dec)] = iteration;
    }
    // The first unit occupies one of n_decoders slots per iteration, so a
    // repeat is guaranteed by iteration n_decoders + 1.
    if (iteration > n_decoders + 1) {
      throw std::logic_error("decoder simulation failed to reach steady state");
    }
  }
}

ComponentResult SimpleDec(const BasicBlock& block, const MicroArchConfig& cfg) {
  const auto units = DecodeUnits(block, cfg);
  const auto complex = std::count_if(units.begin(), units.end(),
                                     [](const DecodeUnit& u) { return u.complex; });
  const Rational width_bound(static_cast<std::int64_t>(units.size()), cfg.n_decoders);
  return {Component::kSimpleDec, std::max(width_bound, Rational(complex)), {}};
}

ComponentResult Dsb(const BasicBlock& block, const MicroArchConfig& cfg) {
  const std::int64_t n = block.fused_uop_count();
  const Rational bound = block.total_length() < 32 ? Rational(CeilDiv(n, cfg.dsb_width))
                                                   : Rational(n, cfg.dsb_width);
  return {Component::kDsb, bound, {}};
}

bool LsdEligible(const BasicBlock& block, const MicroArchConfig& cfg) {
  return cfg.lsd_enabled && block.fused_uop_count() <= cfg.idq_width;
}

ComponentResult Lsd(const BasicBlock& block, const MicroArchConfig& cfg) {
  if (!LsdEligible(block, cfg)) {
    throw Error(ErrorCode::kLsdNotApplicable,
                cfg.lsd_enabled ? "loop does not fit into the IDQ"
                                : "LSD is disabled on " + cfg.name);
  }
  const std::int64_t n = block.fused_uop_count();
  const std::int64_t u = cfg.LsdUnrollFactor(static_cast<int>(n));
  return {Component::kLsd, Rational(CeilDiv(n * u, cfg.issue_width), u), {}};
}

}  // namespace bbtp
