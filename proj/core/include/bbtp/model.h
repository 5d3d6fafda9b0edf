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

#ifndef BBTP_MODEL_H_
#define BBTP_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bbtp/rational.h"
#include "bbtp/value_id.h"

namespace bbtp {

// Set of execution ports a dispatched uop may be sent to. Ports are small
// indices in [0, kMaxPort].
class PortSet {
 public:
  static constexpr int kMaxPort = 31;

  PortSet() = default;
  PortSet(std::initializer_list<int> ports);
  static PortSet FromPorts(std::span<const int> ports);
  static constexpr PortSet FromMask(std::uint32_t mask) { return PortSet(mask); }

  std::uint32_t mask() const { return mask_; }
  int size() const;
  bool empty() const { return mask_ == 0; }
  bool Contains(int port) const { return (mask_ >> port) & 1U; }
  bool IsSubsetOf(PortSet other) const { return (mask_ & ~other.mask_) == 0; }
  std::vector<int> ports() const;
  // "{0,1,5}"
  std::string ToString() const;

  friend PortSet operator|(PortSet a, PortSet b) { return PortSet(a.mask_ | b.mask_); }
  friend bool operator==(PortSet, PortSet) = default;

  // Order by sorted port list, lexicographically.
  friend bool LexicographicallyLess(PortSet a, PortSet b);

 private:
  constexpr explicit PortSet(std::uint32_t mask) : mask_(mask) {}
  std::uint32_t mask_ = 0;
};

using LatencyMap = std::map<std::pair<ValueId, ValueId>, int>;

// One annotated instruction instance.
struct Instruction {
  std::string form;  // informational; database key when loaded from a file
  int length_bytes = 1;
  int opcode_offset = 0;  // first non-prefix byte
  bool has_lcp = false;
  bool requires_complex_decoder = false;
  // Simple decoders still usable in the cycle after this instruction took
  // the complex decoder. Unset means "all of them" (n_decoders - 1).
  std::optional<int> n_available_simple_decoders;
  bool macro_fusible_with_next = false;
  bool is_branch = false;
  bool may_be_eliminated = false;
  int fused_domain_uops = 1;
  int issue_uops = 1;  // fused domain, after unlamination
  std::vector<PortSet> dispatch_uops;
  std::vector<ValueId> reads;
  std::vector<ValueId> writes;
  LatencyMap latencies;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

// Throws Error(kInvalidInstruction, ..., index) when an invariant fails.
void ValidateInstruction(const Instruction& instr, std::size_t index);

struct DispatchUop {
  std::size_t instruction;
  PortSet ports;
  friend bool operator==(const DispatchUop&, const DispatchUop&) = default;
};

// An ordered, laid-out instruction sequence with macro fusion resolved.
// Immutable once created.
class BasicBlock {
 public:
  // Validates every instruction and pairs macro-fusible instructions with
  // their successors greedily from the left.
  static BasicBlock Create(std::vector<Instruction> instructions,
                           std::uint64_t base_address = 0);

  const std::vector<Instruction>& instructions() const { return instructions_; }
  const Instruction& operator[](std::size_t i) const { return instructions_[i]; }
  std::size_t size() const { return instructions_.size(); }
  std::uint64_t base_address() const { return base_address_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& fusion_pairs() const {
    return fusion_pairs_;
  }

  // l, in bytes.
  int total_length() const { return total_length_; }
  // Fused-domain uops; a fused pair counts its first instruction only.
  int fused_uop_count() const { return fused_uops_; }
  int issue_uop_count() const { return issue_uops_; }
  // Every dispatch uop of every instruction, in program order.
  const std::vector<DispatchUop>& dispatch_uops() const { return dispatch_uops_; }

  bool IsFusedFirst(std::size_t i) const { return fusion_role_[i] == 1; }
  bool IsFusedSecond(std::size_t i) const { return fusion_role_[i] == 2; }
  // Byte offset of instruction i relative to base_address.
  int Offset(std::size_t i) const { return offsets_[i]; }

  friend bool operator==(const BasicBlock& a, const BasicBlock& b) {
    return a.base_address_ == b.base_address_ && a.instructions_ == b.instructions_;
  }

 private:
  BasicBlock() = default;

  std::vector<Instruction> instructions_;
  std::uint64_t base_address_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> fusion_pairs_;
  std::vector<std::uint8_t> fusion_role_;  // 0 none, 1 first, 2 second
  std::vector<int> offsets_;
  std::vector<DispatchUop> dispatch_uops_;
  int total_length_ = 0;
  int fused_uops_ = 0;
  int issue_uops_ = 0;
};

inline BasicBlock DeriveBlock(std::vector<Instruction> instructions,
                              std::uint64_t base_address = 0) {
  return BasicBlock::Create(std::move(instructions), base_address);
}

inline int FusedDomainUopCount(const BasicBlock& block) {
  return block.fused_uop_count();
}

struct MicroArchConfig {
  std::string name;
  int n_decoders = 4;  // one complex + (n_decoders - 1) simple
  int predecode_width = 5;
  int issue_width = 4;
  int dsb_width = 6;
  int idq_width = 64;
  bool lsd_enabled = false;
  std::map<int, int> lsd_unroll;  // fused uop count -> unroll factor
  bool jcc_erratum = false;
  bool macro_fusible_on_last_decoder = true;

  // Unroll factor the LSD applies to a loop of `uops` fused-domain uops.
  int LsdUnrollFactor(int uops) const;
  // Throws Error(kConfigError) naming the offending field.
  void Validate() const;

  friend bool operator==(const MicroArchConfig&, const MicroArchConfig&) = default;
};

enum class Mode { kUnroll, kLoop };

std::string_view ModeName(Mode mode);
std::optional<Mode> ParseMode(std::string_view text);

// Declaration order is front-end first and drives bottleneck tie-breaking.
enum class Component {
  kPredec,
  kSimplePredec,
  kDec,
  kSimpleDec,
  kDsb,
  kLsd,
  kIssue,
  kPorts,
  kPrecedence,
};

std::string_view ComponentName(Component c);
std::optional<Component> ParseComponent(std::string_view text);

struct PredecodeBlockStats {
  int block_index = 0;
  int last_byte_count = 0;    // L(b)
  int opcode_only_count = 0;  // O(b)
  int lcp_count = 0;          // LCP(b)
  int cycles_nlcp = 0;
  int cycles_lcp = 0;
};

struct PredecDetail {
  int unroll = 1;
  std::vector<PredecodeBlockStats> blocks;
};

struct DecDetail {
  int first_iteration = 0;   // f
  int final_iteration = 0;   // iteration at which the simulation stopped
  int unroll = 0;            // u = final_iteration - f
  std::vector<int> complex_per_iteration;  // iterations f .. final-1
};

struct PortsDetail {
  PortSet ports;
  int uop_count = 0;
  std::vector<std::size_t> instructions;
};

struct PrecedenceDetail {
  std::vector<std::size_t> cycle_nodes;
  std::vector<std::size_t> cycle_edges;
  std::vector<std::string> chain;  // node labels along the critical cycle
  std::vector<std::string> notes;  // data-quality remarks
};

using ComponentDetail =
    std::variant<std::monostate, PredecDetail, DecDetail, PortsDetail, PrecedenceDetail>;

struct ComponentResult {
  Component component = Component::kPredec;
  Rational bound{0};
  ComponentDetail detail;
};

struct Prediction {
  Mode mode = Mode::kUnroll;
  Rational throughput{0};
  std::map<Component, ComponentResult> components;
  std::vector<Component> bottlenecks;  // front-end first
  Component primary_bottleneck = Component::kPredec;
  std::vector<std::string> notes;

  const ComponentResult& at(Component c) const { return components.at(c); }
  bool Has(Component c) const { return components.contains(c); }
};

}  // namespace bbtp

#endif  // BBTP_MODEL_H_
