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

#include "bbtp/model.h"

#include <random>

#include "bbtp/error.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace bbtp {
namespace {

using testing::InstrBuilder;
using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

TEST(DeriveBlockTest, NoFusibleInstructionsGiveNoPairs) {
  const auto block = DeriveBlock(testing::Repeat(InstrBuilder(4), 3));
  EXPECT_TRUE(block.fusion_pairs().empty());
  EXPECT_EQ(block.total_length(), 12);
}

TEST(DeriveBlockTest, CompareFusesWithFollowingJump) {
  const auto block = DeriveBlock({InstrBuilder(3).Fusible(), InstrBuilder(2).Branch(),
                                  InstrBuilder(3)});
  EXPECT_EQ(block.fusion_pairs(), (Pairs{{0, 1}}));
  EXPECT_TRUE(block.IsFusedFirst(0));
  EXPECT_TRUE(block.IsFusedSecond(1));
  EXPECT_FALSE(block.IsFusedFirst(2));
}

TEST(DeriveBlockTest, SecondOfPairIsNotPairedAgain) {
  const auto block = DeriveBlock({InstrBuilder().Fusible(), InstrBuilder().Fusible(),
                                  InstrBuilder()});
  EXPECT_EQ(block.fusion_pairs(), (Pairs{{0, 1}}));
}

TEST(DeriveBlockTest, FusibleLastInstructionStaysAlone) {
  const auto block = DeriveBlock({InstrBuilder(), InstrBuilder().Fusible()});
  EXPECT_TRUE(block.fusion_pairs().empty());
}

TEST(DeriveBlockTest, EmptyBlockIsRejected) {
  try {
    DeriveBlock({});
    FAIL() << "expected EmptyBlock";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyBlock);
  }
}

TEST(DeriveBlockTest, InvalidInstructionReportsIndex) {
  for (const Instruction& bad :
       {InstrBuilder(16).Build(), InstrBuilder(0).Build(), InstrBuilder(4).OpcodeAt(4).Build(),
        InstrBuilder().Uops(-1).Build(),
        InstrBuilder().Reads({"rax"}).Writes({"rbx"}).Latency("rcx", "rbx", 1).Build(),
        InstrBuilder().Reads({"rax"}).Writes({"rbx"}).Latency("rax", "rdx", 1).Build()}) {
    try {
      DeriveBlock({InstrBuilder(), bad});
      FAIL() << "expected InvalidInstruction";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidInstruction);
      EXPECT_EQ(e.index(), 1u);
    }
  }
  Instruction empty_ports = InstrBuilder();
  empty_ports.dispatch_uops.push_back(PortSet());
  EXPECT_THROW(DeriveBlock({empty_ports}), Error);
}

TEST(FusedDomainUopCountTest, SumsWithoutFusion) {
  EXPECT_EQ(FusedDomainUopCount(DeriveBlock(testing::Repeat(InstrBuilder().Uops(1), 4))), 4);
  EXPECT_EQ(FusedDomainUopCount(DeriveBlock({InstrBuilder().Uops(4), InstrBuilder().Uops(1),
                                             InstrBuilder().Uops(1)})),
            6);
}

TEST(FusedDomainUopCountTest, FusedPairCountsFirstInstructionOnly) {
  const auto block = DeriveBlock({InstrBuilder().Uops(1).Fusible(),
                                  InstrBuilder().Uops(1).Branch(), InstrBuilder().Uops(1)});
  EXPECT_EQ(FusedDomainUopCount(block), 2);
  EXPECT_EQ(block.issue_uop_count(), 2);
}

TEST(DeriveBlockTest, RandomBlocksKeepOrderAndDisjointPairs) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Instruction> instrs;
    const int n = std::uniform_int_distribution<int>(1, 20)(rng);
    int raw_uops = 0;
    for (int i = 0; i < n; ++i) {
      InstrBuilder b(std::uniform_int_distribution<int>(1, 15)(rng));
      b.Uops(std::uniform_int_distribution<int>(0, 4)(rng));
      if (rng() % 3 == 0) b.Fusible();
      instrs.push_back(b);
      raw_uops += instrs.back().fused_domain_uops;
    }
    const auto block = DeriveBlock(instrs);
    ASSERT_EQ(block.instructions(), instrs);
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (const auto& [a, b] : block.fusion_pairs()) {
      EXPECT_EQ(b, a + 1);
      EXPECT_TRUE(instrs[a].macro_fusible_with_next);
      ++seen[a];
      ++seen[b];
    }
    for (int count : seen) EXPECT_LE(count, 1);
    EXPECT_LE(FusedDomainUopCount(block), raw_uops);
    EXPECT_EQ(DeriveBlock(instrs).fusion_pairs(), block.fusion_pairs());
  }
}

TEST(PortSetTest, BasicsAndOrdering) {
  const PortSet a{0, 1, 5};
  EXPECT_EQ(a.size(), 3);
  EXPECT_EQ(a.ToString(), "{0,1,5}");
  EXPECT_TRUE(PortSet({1}).IsSubsetOf(a));
  EXPECT_FALSE(PortSet({2}).IsSubsetOf(a));
  EXPECT_TRUE(LexicographicallyLess(PortSet{0, 5}, PortSet{1, 2}));
  EXPECT_TRUE(LexicographicallyLess(PortSet{0}, PortSet{0, 1}));
  EXPECT_THROW(PortSet({32}), Error);
}

TEST(ValueIdTest, CanonicalizesAliasesToWidestRegister) {
  EXPECT_EQ(Canonicalize("eax"), Canonicalize("RAX"));
  EXPECT_EQ(Canonicalize("ah").name, "rax");
  EXPECT_EQ(Canonicalize("r9d").name, "r9");
  EXPECT_EQ(Canonicalize("xmm3").name, "zmm3");
  EXPECT_EQ(Canonicalize("zf").kind, ValueKind::kFlag);
  EXPECT_EQ(Canonicalize("zf").name, "ZF");
  EXPECT_EQ(Canonicalize("[RBX + 8]").kind, ValueKind::kMemory);
  EXPECT_EQ(Canonicalize("[rbx+8]"), Canonicalize("mem:[RBX + 8]"));
}

TEST(MicroArchConfigTest, ValidateRejectsNonPositiveWidths) {
  auto cfg = testing::TestConfig();
  EXPECT_NO_THROW(cfg.Validate());
  cfg.issue_width = 0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = testing::TestConfig();
  cfg.n_decoders = 1;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = testing::TestConfig();
  cfg.lsd_unroll[3] = 0;
  EXPECT_THROW(cfg.Validate(), Error);
}

TEST(MicroArchConfigTest, UnrollFactorDefaultsToOne) {
  auto cfg = testing::TestConfig();
  cfg.lsd_unroll[3] = 8;
  EXPECT_EQ(cfg.LsdUnrollFactor(3), 8);
  EXPECT_EQ(cfg.LsdUnrollFactor(4), 1);
}

TEST(RationalTest, FormatsTwoDecimalsAndFractions) {
  EXPECT_EQ(ToFixed2(Rational(7, 6)), "1.17");
  EXPECT_EQ(ToFixed2(Rational(5, 4)), "1.25");
  EXPECT_EQ(ToFixed2(Rational(1, 16)), "0.06");
  EXPECT_EQ(ToFixed2(Rational(1, 200)), "0.01");
  EXPECT_EQ(ToFixed2(Rational(10, 3)), "3.33");
  EXPECT_EQ(ToFraction(Rational(5)), "5/1");
  EXPECT_DOUBLE_EQ(RoundToHundredths(Rational(2, 3)), 0.67);
}

}  // namespace
}  // namespace bbtp
