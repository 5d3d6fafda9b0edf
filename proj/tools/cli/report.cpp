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

#include "cli/report.h"

#include <sstream>
#include <variant>

namespace bbtp::cli {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

json DetailJson(const ComponentDetail& detail) {
  return std::visit(
      Overloaded{
          [](const std::monostate&) { return json(nullptr); },
          [](const PredecDetail& d) {
            json blocks = json::array();
            for (const auto& b : d.blocks) {
              blocks.push_back({{"block", b.block_index},
                                {"last_byte_count", b.last_byte_count},
                                {"opcode_only_count", b.opcode_only_count},
                                {"lcp_count", b.lcp_count},
                                {"cycles_nlcp", b.cycles_nlcp},
                                {"cycles_lcp", b.cycles_lcp}});
            }
            return json{{"unroll", d.unroll}, {"blocks", blocks}};
          },
          [](const DecDetail& d) {
            return json{{"first_iteration", d.first_iteration},
                        {"final_iteration", d.final_iteration},
                        {"unroll", d.unroll},
                        {"complex_per_iteration", d.complex_per_iteration}};
          },
          [](const PortsDetail& d) {
            return json{{"ports", d.ports.ports()},
                        {"uop_count", d.uop_count},
                        {"instructions", d.instructions}};
          },
          [](const PrecedenceDetail& d) {
            return json{{"chain", d.chain}, {"notes", d.notes}};
          },
      },
      detail);
}

std::string Join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

json RationalJson(const Rational& r) {
  return {{"decimal", ToFixed2(r)}, {"exact", ToFraction(r)}};
}

json PredictionJson(const Prediction& p) {
  json components = json::object();
  for (const auto& [component, result] : p.components) {
    components[std::string(ComponentName(component))] = {
        {"bound", RationalJson(result.bound)}, {"detail", DetailJson(result.detail)}};
  }
  json bottlenecks = json::array();
  for (Component c : p.bottlenecks) bottlenecks.push_back(ComponentName(c));
  return {{"mode", ModeName(p.mode)},
          {"throughput", RationalJson(p.throughput)},
          {"components", components},
          {"bottlenecks", bottlenecks},
          {"primary_bottleneck", ComponentName(p.primary_bottleneck)},
          {"notes", p.notes}};
}

json CounterfactualJson(Component idealized, const Counterfactual& cf) {
  return {{"idealized", ComponentName(idealized)},
          {"throughput", RationalJson(cf.prediction.throughput)},
          {"speedup", RationalJson(cf.speedup)},
          {"primary_bottleneck", ComponentName(cf.prediction.primary_bottleneck)}};
}

std::string PredictionText(const Prediction& p) {
  std::ostringstream os;
  os << "throughput: " << ToFixed2(p.throughput) << " cycles/iteration ("
     << ToFraction(p.throughput) << ")\n";
  os << "components:\n";
  for (const auto& [component, result] : p.components) {
    os << "  " << ComponentName(component) << " " << ToFixed2(result.bound) << " ("
       << ToFraction(result.bound) << ")" << (result.bound == p.throughput ? " *" : "")
       << "\n";
  }
  std::vector<std::string> names;
  for (Component c : p.bottlenecks) names.emplace_back(ComponentName(c));
  os << "bottlenecks: " << Join(names, ", ") << "\n";
  os << "primary bottleneck: " << ComponentName(p.primary_bottleneck) << "\n";

  if (p.Has(Component::kPorts)) {
    const auto* d = std::get_if<PortsDetail>(&p.at(Component::kPorts).detail);
    if (d != nullptr && !d->ports.empty()) {
      std::vector<std::string> instrs;
      for (auto i : d->instructions) instrs.push_back(std::to_string(i));
      os << "port contention: " << d->uop_count << " uops on ports " << d->ports.ToString()
         << " from instructions " << Join(instrs, ", ") << "\n";
    }
  }
  if (p.Has(Component::kPrecedence)) {
    const auto* d = std::get_if<PrecedenceDetail>(&p.at(Component::kPrecedence).detail);
    if (d != nullptr && !d->chain.empty()) {
      os << "critical chain: " << Join(d->chain, " -> ") << "\n";
    }
  }
  for (const auto& note : p.notes) os << "note: " << note << "\n";
  return os.str();
}

std::string CounterfactualText(Component idealized, const Counterfactual& cf) {
  std::ostringstream os;
  os << "idealized " << ComponentName(idealized) << ": throughput "
     << ToFixed2(cf.prediction.throughput) << " (" << ToFraction(cf.prediction.throughput)
     << "), speedup " << ToFixed2(cf.speedup) << " (" << ToFraction(cf.speedup) << ")\n";
  return os.str();
}

}  // namespace bbtp::cli
