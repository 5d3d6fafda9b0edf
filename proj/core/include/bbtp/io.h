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

#ifndef BBTP_IO_H_
#define BBTP_IO_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bbtp/model.h"

namespace bbtp {

// Per-form instruction attributes. Block files reference records by their
// "form" key and may override any attribute inline.
class InstructionDatabase {
 public:
  InstructionDatabase();
  ~InstructionDatabase();
  InstructionDatabase(const InstructionDatabase&);
  InstructionDatabase& operator=(const InstructionDatabase&);
  InstructionDatabase(InstructionDatabase&&) noexcept;
  InstructionDatabase& operator=(InstructionDatabase&&) noexcept;

  bool Contains(std::string_view form) const;
  std::size_t size() const;
  std::vector<std::string> forms() const;
  // Non-fatal findings from loading, e.g. duplicate forms.
  const std::vector<std::string>& warnings() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;

  friend InstructionDatabase ParseInstructionDb(std::string_view);
  friend BasicBlock ParseBlock(std::string_view, const InstructionDatabase&);
};

InstructionDatabase ParseInstructionDb(std::string_view json_text);
InstructionDatabase LoadInstructionDb(const std::filesystem::path& path);

BasicBlock ParseBlock(std::string_view json_text,
                      const InstructionDatabase& db = InstructionDatabase());
BasicBlock LoadBlock(const std::filesystem::path& path,
                     const InstructionDatabase& db = InstructionDatabase());

// Emits every attribute explicitly; ParseBlock(SerializeBlock(b)) == b.
std::string SerializeBlock(const BasicBlock& block);

MicroArchConfig ParseArchConfig(std::string_view json_text);
MicroArchConfig LoadArchConfig(const std::filesystem::path& path);
std::string SerializeArchConfig(const MicroArchConfig& cfg);

std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace bbtp

#endif  // BBTP_IO_H_
