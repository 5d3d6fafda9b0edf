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

#ifndef BBTP_PRECEDENCE_H_
#define BBTP_PRECEDENCE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "bbtp/model.h"
#include "bbtp/value_id.h"

namespace bbtp {

enum class ValueRole { kConsumed, kProduced };

struct DependenceNode {
  std::size_t instruction = 0;
  ValueRole role = ValueRole::kConsumed;
  ValueId value;
};

// latency: cycles from src value to dst value. iterations: how many block
// iterations the edge spans (0 within an iteration, 1 across the back edge).
struct DependenceEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  int latency = 0;
  int iterations = 0;
};

struct DependenceGraph {
  std::vector<DependenceNode> nodes;
  std::vector<DependenceEdge> edges;
  std::vector<std::string> notes;  // e.g. latencies that had to be assumed

  // "instr#3:produced:rax"
  std::string NodeLabel(std::size_t node) const;
};

struct GraphOptions {
  // Connect stores and loads whose address operands are textually identical.
  bool model_memory_dependencies = false;
};

// Nodes for every consumed and produced value of every instruction; latency
// edges inside each instruction; zero-latency read-after-write edges from the
// most recent earlier writer, or from the block's last writer across the
// loop back edge. Values never written inside the block are loop invariant.
DependenceGraph BuildGraph(const BasicBlock& block, const GraphOptions& options = {});

// Throws kMalformedGraph for dangling edge endpoints, negative weights, or a
// cycle made only of zero-iteration edges.
void CheckWellFormed(const DependenceGraph& graph);

struct CycleRatio {
  Rational ratio{0};
  std::vector<std::size_t> cycle_nodes;  // critical cycle, in edge order
  std::vector<std::size_t> cycle_edges;  // cycle_edges[k] leaves cycle_nodes[k]
  int policy_iterations = 0;
  bool used_fallback = false;
};

// Maximum over all cycles of (sum of latencies) / (sum of iterations) by
// Howard's policy iteration in exact arithmetic. 0 for acyclic graphs.
CycleRatio HowardMaxCycleRatio(const DependenceGraph& graph);

// Wraps HowardMaxCycleRatio as the Precedence component.
ComponentResult MaxCycleRatio(const DependenceGraph& graph);

ComponentResult Precedence(const BasicBlock& block, const GraphOptions& options = {});

// Enumerates every simple cycle. At most 14 nodes (kOracleTooLarge).
Rational CycleRatioOracle(const DependenceGraph& graph);

// Graphviz rendering; edge labels are "latency/iterations".
std::string ToDot(const DependenceGraph& graph);

}  // namespace bbtp

#endif  // BBTP_PRECEDENCE_H_
