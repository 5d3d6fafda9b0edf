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

#ifndef BBTP_BACKEND_H_
#define BBTP_BACKEND_H_

#include <span>
#include <vector>

#include "bbtp/model.h"

namespace bbtp {

// Issue-stage uops (after unlamination) over the issue width.
ComponentResult Issue(const BasicBlock& block, const MicroArchConfig& cfg);

// Dispatch uops that compete for ports: uops of eliminable instructions
// and of the second half of macro-fused pairs are dropped.
std::vector<DispatchUop> ContendingUops(const BasicBlock& block);

struct PortBound {
  Rational bound{0};
  PortSet ports;     // limiting combination; empty when there are no uops
  int uop_count = 0;  // uops confined to `ports`
};

// Pairwise port-combination heuristic: maximizes u(pc) / |pc| over unions of
// any two (not necessarily distinct) port sets in use. Ties prefer the
// smaller combination, then the lexicographically smaller one.
PortBound PortsHeuristic(std::span<const PortSet> uops);

ComponentResult Ports(const BasicBlock& block);

// Exact optimal-assignment bound: max over every subset S of the ports in
// use of u(S) / |S|. Limited to 12 uops over at most 8 distinct ports;
// throws kOracleTooLarge beyond that.
Rational PortsOracle(std::span<const PortSet> uops);

}  // namespace bbtp

#endif  // BBTP_BACKEND_H_
