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

#include "bbtp/value_id.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <unordered_map>

namespace bbtp {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string Upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

const std::unordered_map<std::string, std::string>& LegacyAliases() {
  static const auto* aliases = [] {
    auto* m = new std::unordered_map<std::string, std::string>;
    constexpr std::array<std::array<const char*, 5>, 8> kLegacy = {{
        {"rax", "eax", "ax", "al", "ah"},
        {"rbx", "ebx", "bx", "bl", "bh"},
        {"rcx", "ecx", "cx", "cl", "ch"},
        {"rdx", "edx", "dx", "dl", "dh"},
        {"rsi", "esi", "si", "sil", nullptr},
        {"rdi", "edi", "di", "dil", nullptr},
        {"rbp", "ebp", "bp", "bpl", nullptr},
        {"rsp", "esp", "sp", "spl", nullptr},
    }};
    for (const auto& row : kLegacy) {
      for (const char* alias : row) {
        if (alias != nullptr) (*m)[alias] = row[0];
      }
    }
    return m;
  }();
  return *aliases;
}

bool IsFlagName(const std::string& upper) {
  static constexpr std::array<std::string_view, 9> kFlags = {
      "CF", "PF", "AF", "ZF", "SF", "OF", "DF", "FLAGS", "RFLAGS"};
  return std::find(kFlags.begin(), kFlags.end(), upper) != kFlags.end();
}

// r8..r15 with an optional d/w/b suffix.
bool NumberedGpr(const std::string& lower, std::string* canonical) {
  if (lower.size() < 2 || lower[0] != 'r' ||
      !std::isdigit(static_cast<unsigned char>(lower[1]))) {
    return false;
  }
  std::size_t i = 1;
  while (i < lower.size() && std::isdigit(static_cast<unsigned char>(lower[i]))) ++i;
  const std::string digits = lower.substr(1, i - 1);
  const std::string suffix = lower.substr(i);
  if (!suffix.empty() && suffix != "d" && suffix != "w" && suffix != "b") return false;
  *canonical = "r" + digits;
  return true;
}

bool VectorRegister(const std::string& lower, std::string* canonical) {
  if (lower.size() < 4) return false;
  const std::string prefix = lower.substr(0, 3);
  if (prefix != "xmm" && prefix != "ymm" && prefix != "zmm") return false;
  const std::string digits = lower.substr(3);
  if (!std::all_of(digits.begin(), digits.end(),
                   [](unsigned char c) { return std::isdigit(c); })) {
    return false;
  }
  *canonical = "zmm" + digits;
  return true;
}

}  // namespace

ValueId Canonicalize(std::string_view text) {
  const std::string trimmed = Trim(text);
  if (trimmed.rfind("mem:", 0) == 0 || (!trimmed.empty() && trimmed.front() == '[')) {
    std::string key = trimmed.rfind("mem:", 0) == 0 ? trimmed.substr(4) : trimmed;
    key.erase(std::remove_if(key.begin(), key.end(),
                             [](unsigned char c) { return std::isspace(c); }),
              key.end());
    return {ValueKind::kMemory, "mem:" + Lower(key)};
  }
  const std::string upper = Upper(trimmed);
  if (IsFlagName(upper)) return {ValueKind::kFlag, upper};

  const std::string lower = Lower(trimmed);
  if (const auto it = LegacyAliases().find(lower); it != LegacyAliases().end()) {
    return {ValueKind::kRegister, it->second};
  }
  std::string canonical;
  if (NumberedGpr(lower, &canonical) || VectorRegister(lower, &canonical)) {
    return {ValueKind::kRegister, canonical};
  }
  return {ValueKind::kRegister, lower};
}

std::string_view ValueKindName(ValueKind kind) {
  switch (kind) {
    case ValueKind::kRegister: return "reg";
    case ValueKind::kFlag: return "flag";
    case ValueKind::kMemory: return "mem";
  }
  return "?";
}

}  // namespace bbtp
