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

#include "bbtp/backend.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "bbtp/error.h"

namespace bbtp {
namespace {

constexpr std::size_t kOracleMaxUops = 12;
constexpr int kOracleMaxPorts = 8;

int CountConfined(std::span<const PortSet> uops, PortSet pc) {
  return static_cast<int>(std::count_if(uops.begin(), uops.end(),
                                        [pc](PortSet ps) { return ps.IsSubsetOf(pc); }));
}

bool Better(const Rational& value, PortSet pc, const PortBound& best) {
  if (value != best.bound) return value > best.bound;
  if (pc.size() != best.ports.size()) return pc.size() < best.ports.size();
  return LexicographicallyLess(pc, best.ports);
}

}  // namespace

ComponentResult Issue(const BasicBlock& block, const MicroArchConfig& cfg) {
  return {Component::kIssue, Rational(block.issue_uop_count(), cfg.issue_width), {}};
}

std::vector<DispatchUop> ContendingUops(const BasicBlock& block) {
  std::vector<DispatchUop> out;
  for (const DispatchUop& uop : block.dispatch_uops()) {
    const std::size_t i = uop.instruction;
    if (block[i].may_be_eliminated || block.IsFusedSecond(i)) continue;
    out.push_back(uop);
  }
  return out;
}

PortBound PortsHeuristic(std::span<const PortSet> uops) {
  std::vector<PortSet> combos(uops.begin(), uops.end());
  std::sort(combos.begin(), combos.end(),
            [](PortSet a, PortSet b) { return a.mask() < b.mask(); });
  combos.erase(std::unique(combos.begin(), combos.end()), combos.end());

  PortBound best;
  for (std::size_t a = 0; a < combos.size(); ++a) {
    for (std::size_t b = a; b < combos.size(); ++b) {
      const PortSet pc = combos[a] | combos[b];
      const int u = CountConfined(uops, pc);
      const Rational value(u, pc.size());
      if (best.ports.empty() || Better(value, pc, best)) best = {value, pc, u};
    }
  }
  return best;
}

ComponentResult Ports(const BasicBlock& block) {
  const std::vector<DispatchUop> contending = ContendingUops(block);
  std::vector<PortSet> sets;
  sets.reserve(contending.size());
  for (const auto& uop : contending) sets.push_back(uop.ports);

  const PortBound best = PortsHeuristic(sets);
  PortsDetail detail{best.ports, best.uop_count, {}};
  if (!best.ports.empty()) {
    for (const auto& uop : contending) {
      if (uop.ports.IsSubsetOf(best.ports) &&
          (detail.instructions.empty() || detail.instructions.back() != uop.instruction)) {
        detail.instructions.push_back(uop.instruction);
      }
    }
  }
  return {Component::kPorts, best.bound, std::move(detail)};
}

Rational PortsOracle(std::span<const PortSet> uops) {
  if (uops.size() > kOracleMaxUops) {
    throw Error(ErrorCode::kOracleTooLarge,
                std::to_string(uops.size()) + " uops exceed the oracle limit of " +
                    std::to_string(kOracleMaxUops));
  }
  PortSet all;
  for (PortSet ps : uops) all = all | ps;
  const std::vector<int> ports = all.ports();
  if (static_cast<int>(ports.size()) > kOracleMaxPorts) {
    throw Error(ErrorCode::kOracleTooLarge,
                std::to_string(ports.size()) + " ports exceed the oracle limit of " +
                    std::to_string(kOracleMaxPorts));
  }

  Rational best(0);
  const std::uint32_t n_subsets = 1U << ports.size();
  for (std::uint32_t bits = 1; bits < n_subsets; ++bits) {
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k < ports.size(); ++k) {
      if ((bits >> k) & 1U) mask |= 1U << ports[k];
    }
    const PortSet subset = PortSet::FromMask(mask);
    best = std::max(best, Rational(CountConfined(uops, subset), subset.size()));
  }
  return best;
}

}  // namespace bbtp
