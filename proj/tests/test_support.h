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

#ifndef BBTP_TESTS_TEST_SUPPORT_H_
#define BBTP_TESTS_TEST_SUPPORT_H_

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "bbtp/model.h"
#include "bbtp/value_id.h"

namespace bbtp::testing {

// Fluent builder so tests read like the block they describe.
class InstrBuilder {
 public:
  explicit InstrBuilder(int length = 4) { instr_.length_bytes = length; }

  InstrBuilder& Length(int n) { instr_.length_bytes = n; return *this; }
  InstrBuilder& OpcodeAt(int offset) { instr_.opcode_offset = offset; return *this; }
  InstrBuilder& Lcp() { instr_.has_lcp = true; return *this; }
  InstrBuilder& Complex(int simple_after = 3) {
    instr_.requires_complex_decoder = true;
    instr_.n_available_simple_decoders = simple_after;
    return *this;
  }
  InstrBuilder& Fusible() { instr_.macro_fusible_with_next = true; return *this; }
  InstrBuilder& Branch() { instr_.is_branch = true; return *this; }
  InstrBuilder& Eliminable() { instr_.may_be_eliminated = true; return *this; }
  InstrBuilder& Uops(int fused) {
    instr_.fused_domain_uops = fused;
    instr_.issue_uops = fused;
    return *this;
  }
  InstrBuilder& IssueUops(int n) { instr_.issue_uops = n; return *this; }
  InstrBuilder& Port(std::initializer_list<int> ports) {
    instr_.dispatch_uops.push_back(PortSet(ports));
    return *this;
  }
  InstrBuilder& Reads(std::initializer_list<const char*> names) {
    for (const char* n : names) instr_.reads.push_back(Canonicalize(n));
    return *this;
  }
  InstrBuilder& Writes(std::initializer_list<const char*> names) {
    for (const char* n : names) instr_.writes.push_back(Canonicalize(n));
    return *this;
  }
  InstrBuilder& Latency(const char* src, const char* dst, int cycles) {
    instr_.latencies[{Canonicalize(src), Canonicalize(dst)}] = cycles;
    return *this;
  }

  Instruction Build() const { return instr_; }
  operator Instruction() const { return instr_; }  // NOLINT

 private:
  Instruction instr_;
};

inline std::vector<Instruction> Repeat(const Instruction& instr, int n) {
  return std::vector<Instruction>(static_cast<std::size_t>(n), instr);
}

// A generic 4-wide machine; individual tests override what they probe.
inline MicroArchConfig TestConfig() {
  MicroArchConfig cfg;
  cfg.name = "TEST";
  cfg.n_decoders = 4;
  cfg.predecode_width = 5;
  cfg.issue_width = 4;
  cfg.dsb_width = 6;
  cfg.idq_width = 64;
  cfg.lsd_enabled = false;
  cfg.jcc_erratum = false;
  cfg.macro_fusible_on_last_decoder = true;
  return cfg;
}

inline std::string DataDir() { return BBTP_TEST_DATA_DIR; }

}  // namespace bbtp::testing

#endif  // BBTP_TESTS_TEST_SUPPORT_H_
