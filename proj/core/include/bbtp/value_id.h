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

#ifndef BBTP_VALUE_ID_H_
#define BBTP_VALUE_ID_H_

#include <compare>
#include <string>
#include <string_view>

namespace bbtp {

enum class ValueKind { kRegister, kFlag, kMemory };

// An architectural value read or written by an instruction. Always built
// through Canonicalize so that aliases of one register compare equal.
struct ValueId {
  ValueKind kind = ValueKind::kRegister;
  std::string name;

  friend auto operator<=>(const ValueId&, const ValueId&) = default;
  friend bool operator==(const ValueId&, const ValueId&) = default;
};

// Maps a textual operand to its canonical value:
//   - general-purpose registers to their 64-bit name (eax, ax, al, ah -> rax;
//     r8d, r8w, r8b -> r8),
//   - xmmN / ymmN / zmmN to zmmN,
//   - flag names (cf, zf, ..., flags, rflags) to upper case, kind kFlag,
//   - "mem:..." or "[...]" to a kMemory value keyed by the operand text.
// Anything else is a register named by its lower-cased text.
ValueId Canonicalize(std::string_view text);

std::string_view ValueKindName(ValueKind kind);

}  // namespace bbtp

#endif  // BBTP_VALUE_ID_H_
