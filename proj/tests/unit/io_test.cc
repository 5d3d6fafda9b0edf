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

#include <filesystem>
#include <random>

#include "bbtp/error.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace bbtp {
namespace {

namespace fs = std::filesystem;
using testing::InstrBuilder;

constexpr const char* kDb = R"({
  "ADD_R64_R64": {"length_bytes": 3, "opcode_offset": 1, "fused_domain_uops": 1,
                  "dispatch_uops": [[0, 1, 5, 6]],
                  "latencies": {"rax->rax": 1}},
  "JNZ_REL8": {"length_bytes": 2, "fused_domain_uops": 1, "is_branch": true,
               "dispatch_uops": [[0, 6]]}
})";

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoError;
}

TEST(ParseBlockTest, FullyInlineInstruction) {
  const auto block = ParseBlock(R"({"instructions": [
      {"length_bytes": 2, "fused_domain_uops": 1, "reads": ["eax"], "writes": ["eax"],
       "latencies": {"eax->eax": 1}, "dispatch_uops": [[0, 1]]}]})");
  ASSERT_EQ(block.size(), 1u);
  EXPECT_EQ(block[0].length_bytes, 2);
  EXPECT_EQ(block[0].issue_uops, 1);
  EXPECT_EQ(block[0].reads[0].name, "rax");
  EXPECT_EQ(block[0].dispatch_uops, (std::vector<PortSet>{PortSet{0, 1}}));
}

TEST(ParseBlockTest, MergesDatabaseRecordsWithInlineOverrides) {
  const auto db = ParseInstructionDb(kDb);
  EXPECT_EQ(db.size(), 2u);
  const auto block = ParseBlock(R"({"base_address": 32, "instructions": [
      {"form": "ADD_R64_R64", "length_bytes": 4, "reads": ["rax"], "writes": ["rax"]},
      {"form": "JNZ_REL8"}]})",
                                db);
  EXPECT_EQ(block.base_address(), 32u);
  EXPECT_EQ(block[0].length_bytes, 4);
  EXPECT_EQ(block[0].opcode_offset, 1);
  EXPECT_EQ(block[0].latencies.size(), 1u);
  EXPECT_TRUE(block[1].is_branch);
  EXPECT_EQ(block[1].form, "JNZ_REL8");
  EXPECT_TRUE(block[1].latencies.empty());
}

TEST(ParseBlockTest, Errors) {
  const auto db = ParseInstructionDb(kDb);
  EXPECT_EQ(CodeOf([] { ParseBlock("{\"instructions\": [\n  {\"length_bytes\": }\n]}"); }),
            ErrorCode::kParseError);
  try {
    ParseBlock("{\"instructions\": [\n  {\"length_bytes\": }\n]}");
  } catch (const Error& e) {
    EXPECT_EQ(e.index(), 2u);
  }
  EXPECT_EQ(CodeOf([&] { ParseBlock(R"({"instructions": [{"form": "NOPE"}]})", db); }),
            ErrorCode::kUnknownInstructionForm);
  EXPECT_EQ(CodeOf([] {
              ParseBlock(R"({"instructions": [{"length_bytes": 16, "fused_domain_uops": 1}]})");
            }),
            ErrorCode::kInvalidInstruction);
  EXPECT_EQ(CodeOf([] { ParseBlock(R"({"instructions": []})"); }), ErrorCode::kEmptyBlock);
  EXPECT_EQ(CodeOf([] {
              ParseBlock(R"({"instructions": [{"length_bytes": 1, "fused_domain_uops": 1,
                                              "bogus": 3}]})");
            }),
            ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { LoadBlock("/nonexistent/block.json"); }), ErrorCode::kIoError);
}

TEST(InstructionDbTest, DuplicateFormsKeepTheLastWithAWarning) {
  const auto db = ParseInstructionDb(R"({
    "X": {"length_bytes": 1, "fused_domain_uops": 1},
    "X": {"length_bytes": 2, "fused_domain_uops": 1}})");
  EXPECT_EQ(db.size(), 1u);
  ASSERT_EQ(db.warnings().size(), 1u);
  const auto block = ParseBlock(R"({"instructions": [{"form": "X"}]})", db);
  EXPECT_EQ(block[0].length_bytes, 2);
}

TEST(InstructionDbTest, MalformedRecordIsAParseError) {
  EXPECT_EQ(CodeOf([] { ParseInstructionDb(R"({"X": {"length_bytes": "two"}})"); }),
            ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ParseInstructionDb("[1, 2]"); }), ErrorCode::kParseError);
}

TEST(InstructionDbTest, ShippedDatabaseLoads) {
  const auto db = LoadInstructionDb(fs::path(testing::DataDir()) / "db" / "instructions.json");
  EXPECT_TRUE(db.Contains("ADD_R64_R64"));
  EXPECT_TRUE(db.warnings().empty());
  for (const auto& entry : fs::directory_iterator(fs::path(testing::DataDir()) / "blocks")) {
    EXPECT_NO_THROW(LoadBlock(entry.path(), db)) << entry.path();
  }
}

TEST(ArchConfigTest, ShippedConfigurations) {
  const fs::path arch = fs::path(testing::DataDir()) / "arch";
  const auto skl = LoadArchConfig(arch / "SKL.json");
  EXPECT_EQ(skl.name, "SKL");
  EXPECT_FALSE(skl.lsd_enabled);
  EXPECT_TRUE(skl.jcc_erratum);
  const auto rkl = LoadArchConfig(arch / "RKL.json");
  EXPECT_EQ(rkl.LsdUnrollFactor(3), 8);
  for (const auto& entry : fs::directory_iterator(arch)) {
    const auto cfg = LoadArchConfig(entry.path());
    EXPECT_EQ(ParseArchConfig(SerializeArchConfig(cfg)), cfg);
  }
}

TEST(ArchConfigTest, ValidationErrorsNameTheField) {
  std::string text = SerializeArchConfig(testing::TestConfig());
  const auto pos = text.find("\"issue_width\": 4");
  ASSERT_NE(pos, std::string::npos);
  std::string zero = text;
  zero.replace(pos, 16, "\"issue_width\": 0");
  try {
    ParseArchConfig(zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError);
    EXPECT_NE(std::string(e.what()).find("issue_width"), std::string::npos);
  }
  try {
    ParseArchConfig(R"({"name": "X"})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError);
    EXPECT_NE(std::string(e.what()).find("n_decoders"), std::string::npos);
  }
}

TEST(SerializeBlockTest, RoundTripsRandomBlocks) {
  std::mt19937 rng(61);
  const char* regs[] = {"rax", "rbx", "rcx", "zf", "xmm1", "[rsp+8]"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Instruction> instrs;
    for (int i = std::uniform_int_distribution<int>(1, 8)(rng); i > 0; --i) {
      const int len = std::uniform_int_distribution<int>(1, 15)(rng);
      InstrBuilder b(len);
      b.OpcodeAt(static_cast<int>(rng() % len)).Uops(static_cast<int>(rng() % 4));
      if (rng() % 4 == 0) b.Lcp();
      if (rng() % 4 == 0) b.Complex(static_cast<int>(rng() % 4));
      if (rng() % 4 == 0) b.Fusible();
      if (rng() % 4 == 0) b.Branch();
      if (rng() % 4 == 0) b.Eliminable();
      b.IssueUops(static_cast<int>(rng() % 5));
      for (int k = static_cast<int>(rng() % 3); k > 0; --k) b.Port({static_cast<int>(rng() % 8)});
      const char* r = regs[rng() % 6];
      const char* w = regs[rng() % 6];
      b.Reads({r}).Writes({w});
      if (rng() % 2) b.Latency(r, w, static_cast<int>(rng() % 6));
      instrs.push_back(b);
    }
    const auto block = DeriveBlock(instrs, rng() % 128);
    ASSERT_EQ(ParseBlock(SerializeBlock(block)), block) << SerializeBlock(block);
  }
}

}  // namespace
}  // namespace bbtp
