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

#include "bbtp/io.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "bbtp/error.h"
#include "json.hpp"

namespace bbtp {

using nlohmann::json;

struct InstructionDatabase::Impl {
  json records = json::object();
  std::vector<std::string> warnings;
};

namespace {

constexpr std::array<std::string_view, 17> kInstructionFields = {
    "form",          "length_bytes",      "opcode_offset",
    "has_lcp",       "requires_complex_decoder",
    "n_available_simple_decoders",         "macro_fusible_with_next",
    "is_branch",     "may_be_eliminated", "fused_domain_uops",
    "issue_uops",    "dispatch_uops",     "reads",
    "writes",        "latencies",         "comment",
    "mnemonic",
};

std::size_t LineOf(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

json ParseJson(std::string_view text, const json::parser_callback_t& cb = nullptr) {
  try {
    return json::parse(text.begin(), text.end(), cb);
  } catch (const json::parse_error& e) {
    const std::size_t line = LineOf(text, e.byte);
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line) + ": " + e.what(), line);
  }
}

template <typename T>
T Get(const json& obj, std::string_view key, const std::string& where) {
  const auto& v = obj.at(std::string(key));
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kParseError,
                where + ": field '" + std::string(key) + "' has the wrong type");
  }
}

int GetInt(const json& obj, std::string_view key, const std::string& where) {
  const auto& v = obj.at(std::string(key));
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::kParseError,
                where + ": field '" + std::string(key) + "' must be an integer");
  }
  return v.get<int>();
}

bool GetBool(const json& obj, std::string_view key, bool fallback, const std::string& where) {
  if (!obj.contains(std::string(key))) return fallback;
  const auto& v = obj.at(std::string(key));
  if (!v.is_boolean()) {
    throw Error(ErrorCode::kParseError,
                where + ": field '" + std::string(key) + "' must be a boolean");
  }
  return v.get<bool>();
}

std::vector<ValueId> GetValues(const json& obj, std::string_view key, const std::string& where) {
  std::vector<ValueId> out;
  if (!obj.contains(std::string(key))) return out;
  for (const auto& s : Get<std::vector<std::string>>(obj, key, where)) {
    ValueId v = Canonicalize(s);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  return out;
}

Instruction InstructionFromJson(const json& obj, std::size_t index, bool form_resolved) {
  const std::string where = "instruction " + std::to_string(index);
  if (!obj.is_object()) throw Error(ErrorCode::kParseError, where + ": not an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(kInstructionFields.begin(), kInstructionFields.end(), key) ==
        kInstructionFields.end()) {
      throw Error(ErrorCode::kParseError, where + ": unknown field '" + key + "'");
    }
  }
  for (const char* required : {"length_bytes", "fused_domain_uops"}) {
    if (!obj.contains(required)) {
      if (obj.contains("form") && !form_resolved) {
        throw Error(ErrorCode::kUnknownInstructionForm,
                    where + ": form '" + obj.at("form").get<std::string>() +
                        "' is not in the database and '" + required + "' is not given inline",
                    index);
      }
      throw Error(ErrorCode::kParseError,
                  where + ": missing field '" + std::string(required) + "'");
    }
  }

  Instruction instr;
  if (obj.contains("form")) instr.form = Get<std::string>(obj, "form", where);
  instr.length_bytes = GetInt(obj, "length_bytes", where);
  instr.opcode_offset = obj.contains("opcode_offset") ? GetInt(obj, "opcode_offset", where) : 0;
  instr.has_lcp = GetBool(obj, "has_lcp", false, where);
  instr.requires_complex_decoder = GetBool(obj, "requires_complex_decoder", false, where);
  if (obj.contains("n_available_simple_decoders")) {
    instr.n_available_simple_decoders = GetInt(obj, "n_available_simple_decoders", where);
  }
  instr.macro_fusible_with_next = GetBool(obj, "macro_fusible_with_next", false, where);
  instr.is_branch = GetBool(obj, "is_branch", false, where);
  instr.may_be_eliminated = GetBool(obj, "may_be_eliminated", false, where);
  instr.fused_domain_uops = GetInt(obj, "fused_domain_uops", where);
  instr.issue_uops = obj.contains("issue_uops") ? GetInt(obj, "issue_uops", where)
                                                : instr.fused_domain_uops;
  if (obj.contains("dispatch_uops")) {
    for (const auto& ports : Get<std::vector<std::vector<int>>>(obj, "dispatch_uops", where)) {
      try {
        instr.dispatch_uops.push_back(PortSet::FromPorts(ports));
      } catch (const Error& e) {
        throw Error(ErrorCode::kInvalidInstruction, where + ": " + e.what(), index);
      }
    }
  }
  instr.reads = GetValues(obj, "reads", where);
  instr.writes = GetValues(obj, "writes", where);
  if (obj.contains("latencies")) {
    const auto& lat = obj.at("latencies");
    if (!lat.is_object()) {
      throw Error(ErrorCode::kParseError, where + ": 'latencies' must be an object");
    }
    for (const auto& [key, value] : lat.items()) {
      const auto arrow = key.find("->");
      if (arrow == std::string::npos) {
        throw Error(ErrorCode::kParseError,
                    where + ": latency key '" + key + "' is not of the form src->dst");
      }
      if (!value.is_number_integer()) {
        throw Error(ErrorCode::kParseError, where + ": latency '" + key + "' must be an integer");
      }
      instr.latencies[{Canonicalize(key.substr(0, arrow)), Canonicalize(key.substr(arrow + 2))}] =
          value.get<int>();
    }
  }
  return instr;
}

json InstructionToJson(const Instruction& instr) {
  json j = json::object();
  if (!instr.form.empty()) j["form"] = instr.form;
  j["length_bytes"] = instr.length_bytes;
  j["opcode_offset"] = instr.opcode_offset;
  j["has_lcp"] = instr.has_lcp;
  j["requires_complex_decoder"] = instr.requires_complex_decoder;
  if (instr.n_available_simple_decoders) {
    j["n_available_simple_decoders"] = *instr.n_available_simple_decoders;
  }
  j["macro_fusible_with_next"] = instr.macro_fusible_with_next;
  j["is_branch"] = instr.is_branch;
  j["may_be_eliminated"] = instr.may_be_eliminated;
  j["fused_domain_uops"] = instr.fused_domain_uops;
  j["issue_uops"] = instr.issue_uops;
  j["dispatch_uops"] = json::array();
  for (const PortSet& ps : instr.dispatch_uops) j["dispatch_uops"].push_back(ps.ports());
  j["reads"] = json::array();
  for (const auto& v : instr.reads) j["reads"].push_back(v.name);
  j["writes"] = json::array();
  for (const auto& v : instr.writes) j["writes"].push_back(v.name);
  j["latencies"] = json::object();
  for (const auto& [key, lat] : instr.latencies) {
    j["latencies"][key.first.name + "->" + key.second.name] = lat;
  }
  return j;
}

// Rejects anything but a positive integer with a message naming the field.
int RequirePositive(const json& obj, const char* field) {
  const auto& v = obj.at(field);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::kConfigError, std::string(field) + " must be an integer");
  }
  return v.get<int>();
}

}  // namespace

InstructionDatabase::InstructionDatabase() : impl_(std::make_unique<Impl>()) {}
InstructionDatabase::~InstructionDatabase() = default;
InstructionDatabase::InstructionDatabase(const InstructionDatabase& other)
    : impl_(std::make_unique<Impl>(*other.impl_)) {}
InstructionDatabase& InstructionDatabase::operator=(const InstructionDatabase& other) {
  if (this != &other) impl_ = std::make_unique<Impl>(*other.impl_);
  return *this;
}
InstructionDatabase::InstructionDatabase(InstructionDatabase&&) noexcept = default;
InstructionDatabase& InstructionDatabase::operator=(InstructionDatabase&&) noexcept = default;

bool InstructionDatabase::Contains(std::string_view form) const {
  return impl_->records.contains(std::string(form));
}
std::size_t InstructionDatabase::size() const { return impl_->records.size(); }
std::vector<std::string> InstructionDatabase::forms() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : impl_->records.items()) out.push_back(key);
  return out;
}
const std::vector<std::string>& InstructionDatabase::warnings() const {
  return impl_->warnings;
}

InstructionDatabase ParseInstructionDb(std::string_view json_text) {
  InstructionDatabase db;
  std::set<std::string> seen;
  const json root = ParseJson(json_text, [&](int depth, json::parse_event_t event, json& parsed) {
    if (depth == 1 && event == json::parse_event_t::key) {
      const auto form = parsed.get<std::string>();
      if (!seen.insert(form).second) {
        db.impl_->warnings.push_back("duplicate form '" + form + "', last definition wins");
      }
    }
    return true;
  });
  if (!root.is_object()) {
    throw Error(ErrorCode::kParseError, "instruction database must be a JSON object");
  }
  for (const auto& [form, record] : root.items()) {
    if (!record.is_object()) {
      throw Error(ErrorCode::kParseError, "record for form '" + form + "' is not an object");
    }
    // Type-check the record now; required fields may still come inline.
    json probe = record;
    if (!probe.contains("length_bytes")) probe["length_bytes"] = 1;
    if (!probe.contains("fused_domain_uops")) probe["fused_domain_uops"] = 0;
    try {
      InstructionFromJson(probe, 0, true);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError, "record for form '" + form + "': " + e.what());
    }
  }
  db.impl_->records = root;
  return db;
}

InstructionDatabase LoadInstructionDb(const std::filesystem::path& path) {
  return ParseInstructionDb(ReadTextFile(path));
}

BasicBlock ParseBlock(std::string_view json_text, const InstructionDatabase& db) {
  const json root = ParseJson(json_text);
  if (!root.is_object() || !root.contains("instructions") || !root["instructions"].is_array()) {
    throw Error(ErrorCode::kParseError, "block must be an object with an 'instructions' array");
  }
  std::uint64_t base = 0;
  if (root.contains("base_address")) {
    if (!root["base_address"].is_number_unsigned() && !root["base_address"].is_number_integer()) {
      throw Error(ErrorCode::kParseError, "'base_address' must be an integer");
    }
    if (root["base_address"].get<std::int64_t>() < 0) {
      throw Error(ErrorCode::kParseError, "'base_address' must be non-negative");
    }
    base = root["base_address"].get<std::uint64_t>();
  }

  std::vector<Instruction> instructions;
  std::size_t index = 0;
  for (const json& inline_fields : root["instructions"]) {
    json merged = inline_fields;
    bool resolved = false;
    if (inline_fields.is_object() && inline_fields.contains("form")) {
      const auto& form = inline_fields["form"];
      if (form.is_string() && db.impl_->records.contains(form.get<std::string>())) {
        merged = db.impl_->records[form.get<std::string>()];
        merged.update(inline_fields);
        resolved = true;
      }
    }
    instructions.push_back(InstructionFromJson(merged, index++, resolved));
  }
  return BasicBlock::Create(std::move(instructions), base);
}

BasicBlock LoadBlock(const std::filesystem::path& path, const InstructionDatabase& db) {
  return ParseBlock(ReadTextFile(path), db);
}

std::string SerializeBlock(const BasicBlock& block) {
  json j = json::object();
  j["base_address"] = block.base_address();
  j["instructions"] = json::array();
  for (const Instruction& instr : block.instructions()) {
    j["instructions"].push_back(InstructionToJson(instr));
  }
  return j.dump(2) + "\n";
}

MicroArchConfig ParseArchConfig(std::string_view json_text) {
  json root;
  try {
    root = ParseJson(json_text);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
  if (!root.is_object()) throw Error(ErrorCode::kConfigError, "config must be a JSON object");
  for (const char* field :
       {"name", "n_decoders", "predecode_width", "issue_width", "dsb_width", "idq_width",
        "lsd_enabled", "lsd_unroll", "jcc_erratum", "macro_fusible_on_last_decoder"}) {
    if (!root.contains(field)) {
      throw Error(ErrorCode::kConfigError, std::string("missing field '") + field + "'");
    }
  }
  auto require_bool = [&](const char* field) {
    if (!root[field].is_boolean()) {
      throw Error(ErrorCode::kConfigError, std::string(field) + " must be a boolean");
    }
    return root[field].get<bool>();
  };

  MicroArchConfig cfg;
  if (!root["name"].is_string()) throw Error(ErrorCode::kConfigError, "name must be a string");
  cfg.name = root["name"].get<std::string>();
  cfg.n_decoders = RequirePositive(root, "n_decoders");
  cfg.predecode_width = RequirePositive(root, "predecode_width");
  cfg.issue_width = RequirePositive(root, "issue_width");
  cfg.dsb_width = RequirePositive(root, "dsb_width");
  cfg.idq_width = RequirePositive(root, "idq_width");
  cfg.lsd_enabled = require_bool("lsd_enabled");
  cfg.jcc_erratum = require_bool("jcc_erratum");
  cfg.macro_fusible_on_last_decoder = require_bool("macro_fusible_on_last_decoder");
  if (!root["lsd_unroll"].is_object()) {
    throw Error(ErrorCode::kConfigError, "lsd_unroll must be an object");
  }
  for (const auto& [key, value] : root["lsd_unroll"].items()) {
    int uops = 0;
    try {
      std::size_t used = 0;
      uops = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfigError, "lsd_unroll key '" + key + "' is not an integer");
    }
    if (!value.is_number_integer()) {
      throw Error(ErrorCode::kConfigError, "lsd_unroll value for '" + key + "' is not an integer");
    }
    cfg.lsd_unroll[uops] = value.get<int>();
  }
  cfg.Validate();
  return cfg;
}

MicroArchConfig LoadArchConfig(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadTextFile(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
  return ParseArchConfig(text);
}

std::string SerializeArchConfig(const MicroArchConfig& cfg) {
  json j = json::object();
  j["name"] = cfg.name;
  j["n_decoders"] = cfg.n_decoders;
  j["predecode_width"] = cfg.predecode_width;
  j["issue_width"] = cfg.issue_width;
  j["dsb_width"] = cfg.dsb_width;
  j["idq_width"] = cfg.idq_width;
  j["lsd_enabled"] = cfg.lsd_enabled;
  j["lsd_unroll"] = json::object();
  for (const auto& [uops, factor] : cfg.lsd_unroll) j["lsd_unroll"][std::to_string(uops)] = factor;
  j["jcc_erratum"] = cfg.jcc_erratum;
  j["macro_fusible_on_last_decoder"] = cfg.macro_fusible_on_last_decoder;
  return j.dump(2) + "\n";
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bbtp
