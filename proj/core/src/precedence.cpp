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

#include "bbtp/precedence.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>

#include "bbtp/error.h"

namespace bbtp {
namespace {

constexpr std::size_t kOracleMaxNodes = 14;
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

bool Tracked(const ValueId& v, const GraphOptions& options) {
  return v.kind != ValueKind::kMemory || options.model_memory_dependencies;
}

// Tarjan's SCC, iterative.
std::vector<std::size_t> StronglyConnectedComponents(
    std::size_t n, const std::vector<std::vector<std::size_t>>& succ) {
  std::vector<std::size_t> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0, next_comp = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    std::vector<std::pair<std::size_t, std::size_t>> work{{root, 0}};
    while (!work.empty()) {
      auto& [v, child] = work.back();
      if (child == 0) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (child < succ[v].size()) {
        const std::size_t w = succ[v][child++];
        if (index[w] == kNone) {
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      const std::size_t done = v;
      work.pop_back();
      if (!work.empty()) {
        const std::size_t parent = work.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

}  // namespace

std::string DependenceGraph::NodeLabel(std::size_t node) const {
  const DependenceNode& n = nodes.at(node);
  return "instr#" + std::to_string(n.instruction) + ":" +
         (n.role == ValueRole::kConsumed ? "consumed" : "produced") + ":" + n.value.name;
}

DependenceGraph BuildGraph(const BasicBlock& block, const GraphOptions& options) {
  DependenceGraph graph;
  std::map<std::tuple<std::size_t, ValueRole, ValueId>, std::size_t> node_of;
  auto node = [&](std::size_t instr, ValueRole role, const ValueId& value) {
    const auto key = std::make_tuple(instr, role, value);
    if (const auto it = node_of.find(key); it != node_of.end()) return it->second;
    graph.nodes.push_back({instr, role, value});
    node_of.emplace(key, graph.nodes.size() - 1);
    return graph.nodes.size() - 1;
  };

  std::map<ValueId, std::size_t> last_writer_in_block;
  for (std::size_t j = 0; j < block.size(); ++j) {
    for (const ValueId& w : block[j].writes) {
      if (Tracked(w, options)) last_writer_in_block[w] = j;
    }
  }

  std::map<ValueId, std::size_t> last_writer;
  for (std::size_t j = 0; j < block.size(); ++j) {
    const Instruction& instr = block[j];

    for (const ValueId& r : instr.reads) {
      if (!Tracked(r, options)) continue;
      const std::size_t consumed = node(j, ValueRole::kConsumed, r);
      if (const auto it = last_writer.find(r); it != last_writer.end()) {
        graph.edges.push_back({node(it->second, ValueRole::kProduced, r), consumed, 0, 0});
      } else if (const auto lw = last_writer_in_block.find(r);
                 lw != last_writer_in_block.end()) {
        graph.edges.push_back({node(lw->second, ValueRole::kProduced, r), consumed, 0, 1});
      }
    }

    int fallback_latency = 1;
    if (!instr.latencies.empty()) {
      fallback_latency = 0;
      for (const auto& [key, lat] : instr.latencies) fallback_latency = std::max(fallback_latency, lat);
    }
    for (const ValueId& r : instr.reads) {
      if (!Tracked(r, options)) continue;
      for (const ValueId& w : instr.writes) {
        if (!Tracked(w, options)) continue;
        int latency = 0;
        if (!instr.may_be_eliminated) {
          if (const auto it = instr.latencies.find({r, w}); it != instr.latencies.end()) {
            latency = it->second;
          } else {
            latency = fallback_latency;
            graph.notes.push_back("instr#" + std::to_string(j) + ": no latency for " +
                                  r.name + "->" + w.name + ", assumed " +
                                  std::to_string(latency));
          }
        }
        graph.edges.push_back({node(j, ValueRole::kConsumed, r),
                               node(j, ValueRole::kProduced, w), latency, 0});
      }
    }

    for (const ValueId& w : instr.writes) {
      if (!Tracked(w, options)) continue;
      node(j, ValueRole::kProduced, w);
      last_writer[w] = j;
    }
  }
  return graph;
}

void CheckWellFormed(const DependenceGraph& graph) {
  const std::size_t n = graph.nodes.size();
  std::vector<std::vector<std::size_t>> zero_succ(n);
  std::vector<int> in_degree(n, 0);
  for (const DependenceEdge& e : graph.edges) {
    if (e.src >= n || e.dst >= n) {
      throw Error(ErrorCode::kMalformedGraph, "edge endpoint out of range");
    }
    if (e.latency < 0 || e.iterations < 0) {
      throw Error(ErrorCode::kMalformedGraph, "negative edge weight");
    }
    if (e.iterations == 0) {
      zero_succ[e.src].push_back(e.dst);
      ++in_degree[e.dst];
    }
  }
  // Kahn's algorithm over the zero-iteration subgraph.
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (in_degree[v] == 0) ready.push_back(v);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    ++visited;
    for (std::size_t w : zero_succ[v]) {
      if (--in_degree[w] == 0) ready.push_back(w);
    }
  }
  if (visited != n) {
    throw Error(ErrorCode::kMalformedGraph, "cycle without an inter-iteration edge");
  }
}

CycleRatio HowardMaxCycleRatio(const DependenceGraph& graph) {
  CheckWellFormed(graph);
  const std::size_t n = graph.nodes.size();
  const auto& edges = graph.edges;

  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& e : edges) succ[e.src].push_back(e.dst);
  const std::vector<std::size_t> comp = StronglyConnectedComponents(n, succ);

  // Only edges inside a strongly connected component can lie on a cycle;
  // every node left with an out-edge then has one inside its component.
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (comp[edges[k].src] == comp[edges[k].dst]) out[edges[k].src].push_back(k);
  }
  std::vector<std::size_t> active;
  for (std::size_t v = 0; v < n; ++v) {
    if (!out[v].empty()) active.push_back(v);
  }
  CycleRatio result;
  if (active.empty()) return result;

  std::vector<std::size_t> policy(n, kNone);
  for (std::size_t v : active) {
    policy[v] = *std::max_element(out[v].begin(), out[v].end(), [&](std::size_t a, std::size_t b) {
      return edges[a].latency < edges[b].latency;
    });
  }

  std::vector<Rational> lambda(n), dist(n);
  std::vector<std::size_t> handles;
  auto evaluate = [&] {
    handles.clear();
    std::vector<std::uint8_t> color(n, 0);  // 0 new, 1 on current walk, 2 done
    std::vector<std::size_t> path;
    for (std::size_t start : active) {
      if (color[start] != 0) continue;
      path.clear();
      std::size_t v = start;
      while (color[v] == 0) {
        color[v] = 1;
        path.push_back(v);
        v = edges[policy[v]].dst;
      }
      std::size_t stop = path.size();
      if (color[v] == 1) {
        // New policy cycle starting at v.
        std::int64_t w = 0, t = 0;
        std::size_t x = v;
        do {
          w += edges[policy[x]].latency;
          t += edges[policy[x]].iterations;
          x = edges[policy[x]].dst;
        } while (x != v);
        if (t == 0) {
          throw Error(ErrorCode::kMalformedGraph, "cycle without an inter-iteration edge");
        }
        lambda[v] = Rational(w, t);
        dist[v] = 0;
        color[v] = 2;
        handles.push_back(v);
        stop = static_cast<std::size_t>(std::find(path.begin(), path.end(), v) - path.begin());
      }
      for (std::size_t k = path.size(); k-- > 0;) {
        const std::size_t u = path[k];
        if (k == stop) continue;
        const DependenceEdge& e = edges[policy[u]];
        lambda[u] = lambda[e.dst];
        dist[u] = Rational(e.latency) - lambda[u] * e.iterations + dist[e.dst];
        color[u] = 2;
      }
    }
  };

  auto improve = [&] {
    bool changed = false;
    for (std::size_t v : active) {
      std::size_t best = policy[v];
      for (std::size_t k : out[v]) {
        if (lambda[edges[k].dst] > lambda[edges[best].dst]) best = k;
      }
      if (best != policy[v]) {
        policy[v] = best;
        changed = true;
      }
    }
    if (changed) return true;
    for (std::size_t v : active) {
      std::size_t best = policy[v];
      Rational best_value = dist[v];
      for (std::size_t k : out[v]) {
        const DependenceEdge& e = edges[k];
        if (lambda[e.dst] != lambda[v]) continue;
        const Rational value = Rational(e.latency) - lambda[v] * e.iterations + dist[e.dst];
        if (value > best_value) {
          best_value = value;
          best = k;
        }
      }
      if (best != policy[v]) {
        policy[v] = best;
        changed = true;
      }
    }
    return changed;
  };

  const std::size_t cap = std::max<std::size_t>(n * edges.size(), 1);
  bool converged = false;
  for (std::size_t iter = 0; iter < cap; ++iter) {
    evaluate();
    ++result.policy_iterations;
    if (!improve()) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    if (n > kOracleMaxNodes) {
      throw Error(ErrorCode::kMalformedGraph,
                  "policy iteration did not converge within " + std::to_string(cap) + " rounds");
    }
    result.ratio = CycleRatioOracle(graph);
    result.used_fallback = true;
    return result;
  }

  std::size_t critical = handles.front();
  for (std::size_t h : handles) {
    if (lambda[h] > lambda[critical]) critical = h;
  }
  result.ratio = lambda[critical];
  std::size_t x = critical;
  do {
    result.cycle_nodes.push_back(x);
    result.cycle_edges.push_back(policy[x]);
    x = edges[policy[x]].dst;
  } while (x != critical);
  return result;
}

ComponentResult MaxCycleRatio(const DependenceGraph& graph) {
  CycleRatio cr = HowardMaxCycleRatio(graph);
  PrecedenceDetail detail;
  for (std::size_t v : cr.cycle_nodes) detail.chain.push_back(graph.NodeLabel(v));
  detail.cycle_nodes = std::move(cr.cycle_nodes);
  detail.cycle_edges = std::move(cr.cycle_edges);
  detail.notes = graph.notes;
  return {Component::kPrecedence, cr.ratio, std::move(detail)};
}

ComponentResult Precedence(const BasicBlock& block, const GraphOptions& options) {
  return MaxCycleRatio(BuildGraph(block, options));
}

Rational CycleRatioOracle(const DependenceGraph& graph) {
  const std::size_t n = graph.nodes.size();
  if (n > kOracleMaxNodes) {
    throw Error(ErrorCode::kOracleTooLarge,
                std::to_string(n) + " nodes exceed the oracle limit of " +
                    std::to_string(kOracleMaxNodes));
  }
  std::vector<std::vector<const DependenceEdge*>> out(n);
  for (const auto& e : graph.edges) {
    if (e.src >= n || e.dst >= n) {
      throw Error(ErrorCode::kMalformedGraph, "edge endpoint out of range");
    }
    out[e.src].push_back(&e);
  }

  // Each simple cycle is enumerated once, rooted at its smallest node.
  std::optional<Rational> best;
  std::vector<bool> on_path(n, false);
  std::function<void(std::size_t, std::size_t, std::int64_t, std::int64_t)> extend =
      [&](std::size_t root, std::size_t v, std::int64_t latency, std::int64_t iterations) {
        for (const DependenceEdge* e : out[v]) {
          const std::int64_t lat = latency + e->latency;
          const std::int64_t it = iterations + e->iterations;
          if (e->dst == root) {
            if (it == 0) {
              throw Error(ErrorCode::kMalformedGraph, "cycle without an inter-iteration edge");
            }
            const Rational ratio(lat, it);
            if (!best || ratio > *best) best = ratio;
          } else if (e->dst > root && !on_path[e->dst]) {
            on_path[e->dst] = true;
            extend(root, e->dst, lat, it);
            on_path[e->dst] = false;
          }
        }
      };
  for (std::size_t root = 0; root < n; ++root) {
    on_path[root] = true;
    extend(root, root, 0, 0);
    on_path[root] = false;
  }
  return best.value_or(Rational(0));
}

std::string ToDot(const DependenceGraph& graph) {
  std::ostringstream os;
  os << "digraph dependences {\n";
  for (std::size_t v = 0; v < graph.nodes.size(); ++v) {
    os << "  n" << v << " [label=\"" << graph.NodeLabel(v) << "\"];\n";
  }
  for (const auto& e : graph.edges) {
    os << "  n" << e.src << " -> n" << e.dst << " [label=\"" << e.latency << "/"
       << e.iterations << "\"" << (e.iterations > 0 ? ", style=dashed" : "") << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace bbtp
