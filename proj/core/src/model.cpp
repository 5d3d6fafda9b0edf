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

#include "bbtp/model.h"

#include <algorithm>
#include <bit>
#include <string>

#include "bbtp/error.h"

namespace bbtp {

PortSet::PortSet(std::initializer_list<int> ports)
    : PortSet(FromPorts(std::span<const int>(ports.begin(), ports.size()))) {}

PortSet PortSet::FromPorts(std::span<const int> ports) {
  std::uint32_t mask = 0;
  for (int p : ports) {
    if (p < 0 || p > kMaxPort) {
      throw Error(ErrorCode::kInvalidInstruction,
                  "port index " + std::to_string(p) + " out of range");
    }
    mask |= 1U << p;
  }
  return PortSet(mask);
}

int PortSet::size() const { return std::popcount(mask_); }

std::vector<int> PortSet::ports() const {
  std::vector<int> out;
  for (int p = 0; p <= kMaxPort; ++p) {
    if (Contains(p)) out.push_back(p);
  }
  return out;
}

std::string PortSet::ToString() const {
  std::string out = "{";
  bool first = true;
  for (int p : ports()) {
    if (!first) out += ",";
    out += std::to_string(p);
    first = false;
  }
  return out + "}";
}

bool LexicographicallyLess(PortSet a, PortSet b) {
  const auto pa = a.ports();
  const auto pb = b.ports();
  return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
}

void ValidateInstruction(const Instruction& instr, std::size_t index) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kInvalidInstruction,
                "instruction " + std::to_string(index) + ": " + what, index);
  };
  if (instr.length_bytes < 1 || instr.length_bytes > 15) {
    fail("length_bytes must be in [1, 15], got " + std::to_string(instr.length_bytes));
  }
  if (instr.opcode_offset < 0 || instr.opcode_offset >= instr.length_bytes) {
    fail("opcode_offset must be in [0, length_bytes)");
  }
  if (instr.n_available_simple_decoders && *instr.n_available_simple_decoders < 0) {
    fail("n_available_simple_decoders must be non-negative");
  }
  if (instr.fused_domain_uops < 0) fail("fused_domain_uops must be non-negative");
  if (instr.issue_uops < 0) fail("issue_uops must be non-negative");
  for (const PortSet& ps : instr.dispatch_uops) {
    if (ps.empty()) fail("dispatch uop with an empty port set");
  }
  auto contains = [](const std::vector<ValueId>& values, const ValueId& v) {
    return std::find(values.begin(), values.end(), v) != values.end();
  };
  for (const auto& [key, latency] : instr.latencies) {
    if (!contains(instr.reads, key.first)) {
      fail("latency source " + key.first.name + " is not read");
    }
    if (!contains(instr.writes, key.second)) {
      fail("latency destination " + key.second.name + " is not written");
    }
    if (latency < 0) fail("negative latency");
  }
}

BasicBlock BasicBlock::Create(std::vector<Instruction> instructions,
                              std::uint64_t base_address) {
  if (instructions.empty()) {
    throw Error(ErrorCode::kEmptyBlock, "basic block has no instructions");
  }
  for (std::size_t i = 0; i < instructions.size(); ++i) {
    ValidateInstruction(instructions[i], i);
  }

  BasicBlock block;
  block.instructions_ = std::move(instructions);
  block.base_address_ = base_address;
  const std::size_t n = block.instructions_.size();
  block.fusion_role_.assign(n, 0);
  block.offsets_.reserve(n);

  for (std::size_t i = 0; i < n; ++i) {
    const Instruction& instr = block.instructions_[i];
    block.offsets_.push_back(block.total_length_);
    block.total_length_ += instr.length_bytes;
    if (instr.macro_fusible_with_next && block.fusion_role_[i] != 2 && i + 1 < n) {
      block.fusion_pairs_.emplace_back(i, i + 1);
      block.fusion_role_[i] = 1;
      block.fusion_role_[i + 1] = 2;
    }
    for (const PortSet& ps : instr.dispatch_uops) {
      block.dispatch_uops_.push_back({i, ps});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (block.fusion_role_[i] == 2) continue;
    block.fused_uops_ += block.instructions_[i].fused_domain_uops;
    block.issue_uops_ += block.instructions_[i].issue_uops;
  }
  return block;
}

int MicroArchConfig::LsdUnrollFactor(int uops) const {
  const auto it = lsd_unroll.find(uops);
  return it == lsd_unroll.end() ? 1 : it->second;
}

void MicroArchConfig::Validate() const {
  auto require_positive = [](int value, const char* field) {
    if (value <= 0) {
      throw Error(ErrorCode::kConfigError,
                  std::string(field) + " must be positive, got " + std::to_string(value));
    }
  };
  if (name.empty()) throw Error(ErrorCode::kConfigError, "name must not be empty");
  if (n_decoders < 2) {
    throw Error(ErrorCode::kConfigError,
                "n_decoders must be at least 2, got " + std::to_string(n_decoders));
  }
  require_positive(predecode_width, "predecode_width");
  require_positive(issue_width, "issue_width");
  require_positive(dsb_width, "dsb_width");
  require_positive(idq_width, "idq_width");
  for (const auto& [uops, factor] : lsd_unroll) {
    if (uops <= 0) throw Error(ErrorCode::kConfigError, "lsd_unroll keys must be positive");
    if (factor < 1) throw Error(ErrorCode::kConfigError, "lsd_unroll factors must be >= 1");
  }
}

std::string_view ModeName(Mode mode) {
  return mode == Mode::kUnroll ? "unroll" : "loop";
}

std::optional<Mode> ParseMode(std::string_view text) {
  if (text == "unroll") return Mode::kUnroll;
  if (text == "loop") return Mode::kLoop;
  return std::nullopt;
}

std::string_view ComponentName(Component c) {
  switch (c) {
    case Component::kPredec: return "Predec";
    case Component::kSimplePredec: return "SimplePredec";
    case Component::kDec: return "Dec";
    case Component::kSimpleDec: return "SimpleDec";
    case Component::kDsb: return "DSB";
    case Component::kLsd: return "LSD";
    case Component::kIssue: return "Issue";
    case Component::kPorts: return "Ports";
    case Component::kPrecedence: return "Precedence";
  }
  return "?";
}

std::optional<Component> ParseComponent(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  for (Component c : {Component::kPredec, Component::kSimplePredec, Component::kDec,
                      Component::kSimpleDec, Component::kDsb, Component::kLsd,
                      Component::kIssue, Component::kPorts, Component::kPrecedence}) {
    std::string name(ComponentName(c));
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    if (name == lower) return c;
  }
  return std::nullopt;
}

}  // namespace bbtp
