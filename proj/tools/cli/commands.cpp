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

#include "cli/commands.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bbtp/combiner.h"
#include "bbtp/error.h"
#include "bbtp/io.h"
#include "bbtp/metrics.h"
#include "bbtp/precedence.h"
#include "bbtp/study.h"
#include "cli/report.h"
#include "json.hpp"

#ifndef BBTP_DEFAULT_CONFIG_DIR
#define BBTP_DEFAULT_CONFIG_DIR "data/arch"
#endif

namespace bbtp::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonOptions {
  std::vector<std::string> arches;
  std::string mode = "unroll";
  std::string config_dir;
  std::string db_path;
  std::string output = "text";
  bool simple_predec = false;
  bool simple_dec = false;
  bool memory_deps = false;
  bool time = false;
  unsigned jobs = 1;
};

std::string DefaultConfigDir() {
  if (const char* env = std::getenv("BBTP_CONFIG_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return BBTP_DEFAULT_CONFIG_DIR;
}

MicroArchConfig FindArch(const std::string& name, const std::string& config_dir) {
  for (const std::string& candidate : {name, [&] {
         std::string upper = name;
         for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
         return upper;
       }()}) {
    const fs::path path = fs::path(config_dir) / (candidate + ".json");
    if (fs::exists(path)) return LoadArchConfig(path);
  }
  throw Error(ErrorCode::kConfigError,
              "unknown microarchitecture '" + name + "' (no config in " + config_dir + ")");
}

InstructionDatabase LoadDb(const std::string& path) {
  return path.empty() ? InstructionDatabase() : LoadInstructionDb(path);
}

PredictOptions ToPredictOptions(const CommonOptions& o) {
  return {o.simple_predec, o.simple_dec, o.memory_deps};
}

void AddCommonOptions(CLI::App* cmd, CommonOptions& o, bool multi_arch) {
  if (multi_arch) {
    cmd->add_option("--arch", o.arches, "Microarchitecture(s), e.g. SKL; repeatable")
        ->required()
        ->allow_extra_args(false);
  } else {
    // A single string keeps trailing positionals from being taken as arches.
    cmd->add_option_function<std::string>(
           "--arch", [&o](const std::string& a) { o.arches = {a}; },
           "Microarchitecture, e.g. SKL")
        ->required();
  }
  cmd->add_option("--mode", o.mode, "Throughput notion")
      ->check(CLI::IsMember({"unroll", "loop"}))
      ->capture_default_str();
  cmd->add_option("--config-dir", o.config_dir, "Directory of <ARCH>.json configurations");
  cmd->add_option("--db", o.db_path, "Instruction attribute database (JSON)");
  cmd->add_option("--output", o.output, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_flag("--simple-predec", o.simple_predec, "Use the one-block-per-cycle predecoder model");
  cmd->add_flag("--simple-dec", o.simple_dec, "Use the width-only decoder model");
  cmd->add_flag("--memory-deps", o.memory_deps,
                "Add store-to-load edges for identical address operands");
  cmd->add_option("--jobs", o.jobs, "Worker threads for corpus evaluation")
      ->check(CLI::PositiveNumber);
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
  std::string idealize;
  std::string dot;
  std::vector<std::string> blocks;
};

int Analyze(const CommonOptions& common, const AnalyzeOptions& opts, std::ostream& out,
            std::ostream& err) {
  const MicroArchConfig cfg = FindArch(common.arches.front(), common.config_dir);
  const InstructionDatabase db = LoadDb(common.db_path);
  for (const auto& w : db.warnings()) err << "warning: " << w << "\n";
  const Mode mode = *ParseMode(common.mode);
  std::optional<Component> idealized;
  if (!opts.idealize.empty()) {
    idealized = ParseComponent(opts.idealize);
    if (!idealized) {
      err << "error: unknown component '" << opts.idealize << "'\n";
      return 1;
    }
  }

  json report = {{"arch", cfg.name}, {"mode", ModeName(mode)}, {"blocks", json::array()}};
  std::ostringstream text;
  for (const std::string& path : opts.blocks) {
    const BasicBlock block = LoadBlock(path, db);
    const auto start = std::chrono::steady_clock::now();
    const Prediction prediction = Predict(block, cfg, mode, ToPredictOptions(common));
    std::optional<Counterfactual> cf;
    if (idealized) cf = Idealize(prediction, *idealized);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!opts.dot.empty()) {
      std::ofstream dot(opts.dot);
      if (!dot) throw Error(ErrorCode::kIoError, "cannot write " + opts.dot);
      dot << ToDot(BuildGraph(block, GraphOptions{common.memory_deps}));
    }

    json entry = PredictionJson(prediction);
    entry["block"] = path;
    if (cf) entry["counterfactual"] = CounterfactualJson(*idealized, *cf);
    if (common.time) entry["seconds"] = seconds;
    report["blocks"].push_back(entry);

    text << "block: " << path << "\n"
         << "arch: " << cfg.name << "  mode: " << ModeName(mode) << "\n"
         << PredictionText(prediction);
    if (cf) text << CounterfactualText(*idealized, *cf);
    if (common.time) text << "time: " << std::fixed << std::setprecision(6) << seconds << " s\n";
    text << "\n";
  }
  if (common.output == "json") {
    out << report.dump(2) << "\n";
  } else {
    out << text.str();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::string measurements;
  std::string corpus;
  std::string tau = "b";
  std::string per_block;
};

struct Measurement {
  std::string block;
  double measured;
};

std::vector<Measurement> ReadMeasurements(const std::string& path) {
  std::istringstream in(ReadTextFile(path));
  std::string line;
  std::vector<Measurement> rows;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header && line.rfind("block,", 0) == 0) {
      seen_header = true;
      continue;
    }
    seen_header = true;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::kParseError,
                  path + ":" + std::to_string(line_no) + ": expected 'block,measured'", line_no);
    }
    Measurement m{line.substr(0, comma), 0.0};
    try {
      std::size_t used = 0;
      const std::string value = line.substr(comma + 1);
      m.measured = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError,
                  path + ":" + std::to_string(line_no) + ": measured value is not a number", line_no);
    }
    rows.push_back(std::move(m));
  }
  return rows;
}

std::string FormatDouble(double v, int precision) {
  if (std::isnan(v)) return "n/a";
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

json NumberOrNull(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

int Bench(const CommonOptions& common, const BenchOptions& opts, std::ostream& out,
          std::ostream& err) {
  const MicroArchConfig cfg = FindArch(common.arches.front(), common.config_dir);
  const InstructionDatabase db = LoadDb(common.db_path);
  const Mode mode = *ParseMode(common.mode);
  const std::vector<Measurement> rows = ReadMeasurements(opts.measurements);
  const fs::path corpus =
      opts.corpus.empty() ? fs::path(opts.measurements).parent_path() : fs::path(opts.corpus);

  std::vector<Measurement> kept;
  std::vector<fs::path> paths;
  for (const auto& row : rows) {
    if (!(row.measured > 0.0)) {
      err << "warning: skipping " << row.block << ": measured throughput must be positive\n";
      continue;
    }
    kept.push_back(row);
    const fs::path p(row.block);
    paths.push_back(p.is_absolute() ? p : corpus / p);
  }

  const auto outcomes = PredictCorpus(paths, db, cfg, mode, ToPredictOptions(common), common.jobs);
  std::vector<double> measured, predicted;
  std::ostringstream csv;
  csv << "block,measured,predicted,bottleneck" << (common.time ? ",seconds" : "") << "\n";
  std::size_t failures = 0;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const auto& o = outcomes[i];
    double p = 0.0;
    std::string bottleneck = "none";
    if (o.prediction) {
      p = RoundToHundredths(o.prediction->throughput);
      bottleneck = ComponentName(o.prediction->primary_bottleneck);
    } else {
      ++failures;
      err << "warning: " << kept[i].block << ": " << o.error << "; counted as 0\n";
    }
    measured.push_back(kept[i].measured);
    predicted.push_back(p);
    csv << kept[i].block << "," << FormatDouble(kept[i].measured, 2) << ","
        << FormatDouble(p, 2) << "," << bottleneck;
    if (common.time) csv << "," << FormatDouble(o.seconds, 6);
    csv << "\n";
  }

  const TauVariant variant = opts.tau == "a" ? TauVariant::kA : TauVariant::kB;
  const double mape = Mape(measured, predicted);
  const double tau = KendallTau(measured, predicted, variant);

  if (!opts.per_block.empty()) {
    if (opts.per_block == "-") {
      out << csv.str();
    } else {
      std::ofstream f(opts.per_block);
      if (!f) throw Error(ErrorCode::kIoError, "cannot write " + opts.per_block);
      f << csv.str();
    }
  }
  if (common.output == "json") {
    json report = {{"arch", cfg.name},
                   {"mode", ModeName(mode)},
                   {"blocks", kept.size()},
                   {"skipped", rows.size() - kept.size()},
                   {"failed", failures},
                   {"mape_percent", NumberOrNull(mape)},
                   {"kendall_tau", NumberOrNull(tau)},
                   {"tau_variant", opts.tau}};
    out << report.dump(2) << "\n";
  } else {
    out << "arch: " << cfg.name << "  mode: " << ModeName(mode) << "\n"
        << "blocks: " << kept.size() << " (skipped " << rows.size() - kept.size()
        << ", failed " << failures << ")\n"
        << "MAPE: " << FormatDouble(mape, 2) << "%\n"
        << "Kendall tau-" << opts.tau << ": " << FormatDouble(tau, 4) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// study

struct StudyOptions {
  std::string corpus;
};

int Study(const CommonOptions& common, const StudyOptions& opts, std::ostream& out,
          std::ostream& err) {
  const InstructionDatabase db = LoadDb(common.db_path);
  const Mode mode = *ParseMode(common.mode);
  const std::vector<fs::path> paths = ListCorpus(opts.corpus);

  std::vector<MicroArchConfig> configs;
  for (const auto& a : common.arches) configs.push_back(FindArch(a, common.config_dir));

  std::vector<std::vector<BlockOutcome>> outcomes;
  for (const auto& cfg : configs) {
    outcomes.push_back(PredictCorpus(paths, db, cfg, mode, ToPredictOptions(common), common.jobs));
  }
  // Only blocks that every architecture could analyze enter the study.
  std::vector<std::size_t> usable;
  for (std::size_t b = 0; b < paths.size(); ++b) {
    bool ok = true;
    for (std::size_t a = 0; a < configs.size(); ++a) {
      if (!outcomes[a][b].prediction) {
        err << "warning: " << paths[b].string() << " on " << configs[a].name << ": "
            << outcomes[a][b].error << "; excluded\n";
        ok = false;
      }
    }
    if (ok) usable.push_back(b);
  }

  std::vector<std::vector<Prediction>> predictions(configs.size());
  for (std::size_t a = 0; a < configs.size(); ++a) {
    for (std::size_t b : usable) predictions[a].push_back(*outcomes[a][b].prediction);
  }

  json report = {{"mode", ModeName(mode)},
                 {"blocks", usable.size()},
                 {"shares", json::object()},
                 {"transitions", json::array()},
                 {"speedups", json::object()}};
  std::ostringstream text;
  text << "blocks: " << usable.size() << "  mode: " << ModeName(mode) << "\n";

  const double total = static_cast<double>(usable.size());
  for (std::size_t a = 0; a < configs.size(); ++a) {
    const auto counts = PrimaryBottleneckCounts(predictions[a]);
    json shares = json::object();
    text << "\nbottleneck share on " << configs[a].name << ":\n";
    for (const auto& [component, count] : counts) {
      const double pct = total > 0 ? 100.0 * static_cast<double>(count) / total : 0.0;
      shares[std::string(ComponentName(component))] = {{"count", count}, {"percent", pct}};
      text << "  " << ComponentName(component) << " " << count << " (" << FormatDouble(pct, 2)
           << "%)\n";
    }
    report["shares"][configs[a].name] = shares;
  }

  for (std::size_t a = 0; a + 1 < configs.size(); ++a) {
    const auto transitions = BottleneckTransitions(predictions[a], predictions[a + 1]);
    json entries = json::array();
    text << "\nbottleneck transitions " << configs[a].name << " -> " << configs[a + 1].name << ":\n";
    for (const auto& [key, count] : transitions) {
      entries.push_back({{"from", ComponentName(key.first)},
                         {"to", ComponentName(key.second)},
                         {"count", count}});
      text << "  " << ComponentName(key.first) << " -> " << ComponentName(key.second) << " "
           << count << "\n";
    }
    report["transitions"].push_back(
        {{"from_arch", configs[a].name}, {"to_arch", configs[a + 1].name}, {"counts", entries}});
  }

  for (std::size_t a = 0; a < configs.size(); ++a) {
    std::map<Component, std::vector<double>> speedups;
    for (const Prediction& p : predictions[a]) {
      for (const auto& [component, result] : p.components) {
        try {
          speedups[component].push_back(ToDouble(Idealize(p, component).speedup));
        } catch (const Error& e) {
          err << "warning: " << e.what() << "; block left out of the "
              << ComponentName(component) << " aggregate\n";
        }
      }
    }
    json arch_speedups = json::object();
    text << "\nidealization speedups on " << configs[a].name
         << " (arithmetic / geometric / median):\n";
    for (const auto& [component, values] : speedups) {
      const SpeedupSummary s = SummarizeSpeedups(values);
      arch_speedups[std::string(ComponentName(component))] = {
          {"count", s.count},
          {"arithmetic_mean", s.arithmetic_mean},
          {"geometric_mean", s.geometric_mean},
          {"median", s.median}};
      text << "  " << ComponentName(component) << " " << FormatDouble(s.arithmetic_mean, 2)
           << " / " << FormatDouble(s.geometric_mean, 2) << " / " << FormatDouble(s.median, 2)
           << "\n";
    }
    report["speedups"][configs[a].name] = arch_speedups;
  }

  if (common.output == "json") {
    out << report.dump(2) << "\n";
  } else {
    out << text.str();
  }
  return 0;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Basic-block throughput predictor for Intel Core microarchitectures", "bbtp"};
  app.require_subcommand(1);

  CommonOptions analyze_common, bench_common, study_common;
  for (auto* o : {&analyze_common, &bench_common, &study_common}) o->config_dir = DefaultConfigDir();

  AnalyzeOptions analyze_opts;
  auto* analyze = app.add_subcommand("analyze", "Predict the throughput of basic blocks");
  AddCommonOptions(analyze, analyze_common, false);
  analyze->add_option("--idealize", analyze_opts.idealize,
                      "Also report the throughput with this component made infinitely fast");
  analyze->add_option("--dot", analyze_opts.dot, "Write the dependence graph in DOT format");
  analyze->add_flag("--time", analyze_common.time, "Report analysis wall-clock time per block");
  analyze->add_option("blocks", analyze_opts.blocks, "Block files (JSON)")->required();

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Score predictions against measurements");
  AddCommonOptions(bench, bench_common, false);
  bench->add_option("--measurements", bench_opts.measurements, "CSV with header block,measured")
      ->required();
  bench->add_option("--corpus", bench_opts.corpus,
                    "Directory block paths are relative to (default: the CSV's directory)");
  bench->add_option("--tau", bench_opts.tau, "Kendall tau variant")
      ->check(CLI::IsMember({"a", "b"}))
      ->capture_default_str();
  bench->add_option("--per-block", bench_opts.per_block,
                    "Write per-block CSV to this file ('-' for stdout)");
  bench->add_flag("--time", bench_common.time, "Include per-block analysis time in the CSV");

  StudyOptions study_opts;
  auto* study = app.add_subcommand("study", "Bottleneck shares, transitions and idealization speedups");
  AddCommonOptions(study, study_common, true);
  study->add_option("--corpus", study_opts.corpus, "Directory of block files")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (analyze->parsed()) return Analyze(analyze_common, analyze_opts, out, err);
    if (bench->parsed()) return Bench(bench_common, bench_opts, out, err);
    return Study(study_common, study_opts, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bbtp::cli
