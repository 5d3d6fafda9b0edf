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

#include "bbtp/combiner.h"

#include <algorithm>
#include <random>

#include "bbtp/error.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace bbtp {
namespace {

using testing::InstrBuilder;
using testing::TestConfig;

constexpr Component kUnrollComponents[] = {Component::kPredec, Component::kDec,
                                           Component::kIssue, Component::kPorts,
                                           Component::kPrecedence};

Prediction FromBounds(const std::vector<Rational>& bounds) {
  std::vector<ComponentResult> components;
  for (std::size_t k = 0; k < bounds.size(); ++k) {
    components.push_back({kUnrollComponents[k], bounds[k], {}});
  }
  return Combine(Mode::kUnroll, components);
}

TEST(CombineTest, ThroughputIsTheMaximum) {
  const auto p = FromBounds({Rational(3, 2), Rational(5, 4), Rational(5, 4), Rational(3, 2),
                             Rational(5)});
  EXPECT_EQ(p.throughput, Rational(5));
  EXPECT_EQ(p.bottlenecks, std::vector<Component>{Component::kPrecedence});
  EXPECT_EQ(p.primary_bottleneck, Component::kPrecedence);
}

TEST(CombineTest, TiesBreakTowardTheFrontEnd) {
  const auto p = FromBounds({Rational(2), Rational(1), Rational(1), Rational(2), Rational(1)});
  EXPECT_EQ(p.throughput, Rational(2));
  EXPECT_EQ(p.bottlenecks, (std::vector<Component>{Component::kPredec, Component::kPorts}));
  EXPECT_EQ(p.primary_bottleneck, Component::kPredec);
}

TEST(CombineTest, RandomComponentVectors) {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Rational> bounds;
    for (int k = 0; k < 5; ++k) {
      bounds.emplace_back(std::uniform_int_distribution<int>(0, 8)(rng),
                          std::uniform_int_distribution<int>(1, 4)(rng));
    }
    const auto p = FromBounds(bounds);
    const Rational max = *std::max_element(bounds.begin(), bounds.end());
    ASSERT_EQ(p.throughput, max);
    std::size_t first = 0;
    while (bounds[first] != max) ++first;
    EXPECT_EQ(p.primary_bottleneck, kUnrollComponents[first]);
    const auto n_max = std::count(bounds.begin(), bounds.end(), max);
    for (std::size_t k = 0; k < bounds.size(); ++k) {
      Rational rest(0);
      for (std::size_t j = 0; j < bounds.size(); ++j) {
        if (j != k) rest = std::max(rest, bounds[j]);
      }
      if (rest == Rational(0) && max != Rational(0)) {
        EXPECT_THROW(Idealize(p, kUnrollComponents[k]), Error);
        continue;
      }
      const Counterfactual cf = Idealize(p, kUnrollComponents[k]);
      if (bounds[k] != max || n_max > 1) {
        EXPECT_EQ(cf.speedup, Rational(1));
        EXPECT_EQ(cf.prediction.throughput, max);
      } else {
        EXPECT_EQ(cf.speedup, max / rest);
      }
      EXPECT_GE(cf.speedup, Rational(1));
    }
  }
}

TEST(PredictUnrollTest, SingleInstruction) {
  const auto block = DeriveBlock({InstrBuilder(4).Uops(1).Port({0})});
  const auto p = PredictUnroll(block, TestConfig());
  EXPECT_EQ(p.at(Component::kPredec).bound, Rational(1, 4));
  EXPECT_EQ(p.at(Component::kDec).bound, Rational(1, 4));
  EXPECT_EQ(p.at(Component::kIssue).bound, Rational(1, 4));
  EXPECT_EQ(p.at(Component::kPorts).bound, Rational(1));
  EXPECT_EQ(p.at(Component::kPrecedence).bound, Rational(0));
  EXPECT_EQ(p.throughput, Rational(1));
  EXPECT_EQ(p.primary_bottleneck, Component::kPorts);
  EXPECT_EQ(p.components.size(), 5u);
}

TEST(PredictUnrollTest, SimpleVariantsReplaceDetailedModels) {
  const auto block = DeriveBlock(testing::Repeat(InstrBuilder(4).Uops(1), 6));
  const auto p = PredictUnroll(block, TestConfig(), {.simple_predec = true, .simple_dec = true});
  EXPECT_TRUE(p.Has(Component::kSimplePredec));
  EXPECT_TRUE(p.Has(Component::kSimpleDec));
  EXPECT_FALSE(p.Has(Component::kPredec));
  EXPECT_EQ(p.at(Component::kSimplePredec).bound, Rational(3, 2));
}

TEST(PredictLoopTest, LsdServesSmallLoops) {
  auto cfg = TestConfig();
  cfg.lsd_enabled = true;
  cfg.lsd_unroll[3] = 8;
  const auto block = DeriveBlock({InstrBuilder().Uops(1).Port({0, 1, 2, 3}),
                                  InstrBuilder().Uops(1).Port({0, 1, 2, 3}),
                                  InstrBuilder().Uops(1).Port({0, 1, 2, 3}).Branch()});
  const auto p = PredictLoop(block, cfg);
  EXPECT_EQ(p.at(Component::kLsd).bound, Rational(3, 4));
  EXPECT_FALSE(p.Has(Component::kDsb));
  EXPECT_FALSE(p.Has(Component::kPredec));
  EXPECT_EQ(p.throughput, Rational(3, 4));
}

TEST(PredictLoopTest, DsbWhenLsdIsOff) {
  std::vector<Instruction> instrs = testing::Repeat(InstrBuilder(7).Uops(1), 5);
  instrs.push_back(InstrBuilder(2).Uops(1).Branch());
  const auto p = PredictLoop(DeriveBlock(instrs), TestConfig());
  EXPECT_EQ(p.at(Component::kDsb).bound, Rational(1));
  EXPECT_FALSE(p.Has(Component::kLsd));
  EXPECT_TRUE(p.notes.empty());
}

TEST(PredictLoopTest, JccErratumFallsBackToLegacyDecode) {
  auto cfg = TestConfig();
  cfg.jcc_erratum = true;
  std::vector<Instruction> instrs = testing::Repeat(InstrBuilder(4).Uops(1), 7);
  instrs.push_back(InstrBuilder(4).Uops(1).Branch());  // bytes [28, 32)
  const auto p = PredictLoop(DeriveBlock(instrs), cfg);
  EXPECT_TRUE(p.Has(Component::kPredec));
  EXPECT_TRUE(p.Has(Component::kDec));
  EXPECT_FALSE(p.Has(Component::kDsb));
  EXPECT_FALSE(p.notes.empty());
}

TEST(PredictLoopTest, FlagsBlocksWithoutBranch) {
  const auto p = PredictLoop(DeriveBlock({InstrBuilder().Uops(1)}), TestConfig());
  ASSERT_FALSE(p.notes.empty());
  EXPECT_EQ(p.notes.front(), "block does not end in a branch");
}

TEST(JccAffectedTest, Examples) {
  auto cfg = TestConfig();
  cfg.jcc_erratum = true;
  auto jump_at = [&](int offset) {
    return DeriveBlock({InstrBuilder(4).Branch()}, static_cast<std::uint64_t>(offset));
  };
  EXPECT_TRUE(JccAffected(jump_at(30), cfg));
  EXPECT_TRUE(JccAffected(jump_at(28), cfg));
  EXPECT_FALSE(JccAffected(jump_at(0), cfg));
  cfg.jcc_erratum = false;
  EXPECT_FALSE(JccAffected(jump_at(30), cfg));
}

TEST(JccAffectedTest, SweepMatchesClosedForm) {
  auto cfg = TestConfig();
  cfg.jcc_erratum = true;
  // A 4-byte jump at a touches the boundary iff a mod 32 is in [28, 31].
  for (int a = 0; a < 64; ++a) {
    const bool expected = a % 32 >= 28;
    EXPECT_EQ(JccAffected(DeriveBlock({InstrBuilder(4).Branch()},
                                      static_cast<std::uint64_t>(a)),
                          cfg),
              expected)
        << "offset " << a;
  }
}

TEST(JccAffectedTest, FusedPairSpansBothInstructions) {
  auto cfg = TestConfig();
  cfg.jcc_erratum = true;
  // cmp at [24, 28), jne at [28, 30): the pair [24, 30) stays inside.
  const auto inside = DeriveBlock({InstrBuilder(3), InstrBuilder(4).Fusible(),
                                   InstrBuilder(2).Branch()},
                                  21);
  EXPECT_FALSE(JccAffected(inside, cfg));
  // cmp at [28, 31), jne at [31, 33): crosses.
  const auto crossing = DeriveBlock({InstrBuilder(3).Fusible(), InstrBuilder(2).Branch()}, 28);
  EXPECT_TRUE(JccAffected(crossing, cfg));
  // cmp alone crosses, but only jumps matter when nothing is fused.
  const auto unfused = DeriveBlock({InstrBuilder(6), InstrBuilder(2).Branch()}, 28);
  EXPECT_FALSE(JccAffected(unfused, cfg));
}

TEST(CounterfactualTest, Examples) {
  const auto tied =
      FromBounds({Rational(2), Rational(1), Rational(1), Rational(2), Rational(1)});
  const auto cf = Idealize(tied, Component::kPredec);
  EXPECT_EQ(cf.prediction.throughput, Rational(2));
  EXPECT_EQ(cf.prediction.primary_bottleneck, Component::kPorts);
  EXPECT_EQ(cf.speedup, Rational(1));
  EXPECT_EQ(cf.prediction.at(Component::kPredec).bound, Rational(0));

  const auto precedence_bound =
      FromBounds({Rational(1), Rational(3, 2), Rational(1), Rational(1), Rational(5)});
  EXPECT_EQ(Idealize(precedence_bound, Component::kPrecedence).speedup, Rational(10, 3));
  EXPECT_EQ(Idealize(precedence_bound, Component::kIssue).speedup, Rational(1));
}

TEST(CounterfactualTest, RejectsComponentsOutsideTheMode) {
  const auto p = FromBounds({Rational(2), Rational(1), Rational(1), Rational(2), Rational(1)});
  try {
    Idealize(p, Component::kLsd);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotApplicable);
  }
}

TEST(CounterfactualTest, EndToEndOnDependencyChain) {
  const auto block = DeriveBlock(
      {InstrBuilder().Uops(1).Port({0, 1}).Reads({"rax"}).Writes({"rax"}).Latency("rax", "rax",
                                                                               3)});
  const auto cf = RunCounterfactual(block, TestConfig(), Mode::kUnroll, Component::kPrecedence);
  EXPECT_EQ(cf.speedup, Rational(6));
}

}  // namespace
}  // namespace bbtp
