// Copyright 2026 The rspir authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rspir/verifier.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "rspir/protocol.h"
#include "test_util.h"

namespace rspir {
namespace {

using testing::BruteForcePair;
using testing::Rows;
using testing::ShippedSchemes;

Scheme PrintedK2Listing() {
  Scheme s;
  s.num_messages = 2;
  s.message_length = 1;
  s.randomness_count = 2;
  s.db1 = {{0, Rows(s, {"S1"})}, {1, Rows(s, {"W1+W2+S2"})}};
  s.db2 = {{0, Rows(s, {"W1+S1"})}, {1, Rows(s, {"W2+S2"})}};
  return s;
}

// Zeroes every coefficient on one randomness coordinate.
Scheme DropRandomness(Scheme s, size_t r) {
  const size_t c = s.RandomnessCoord(r);
  for (auto* set : {&s.db1, &s.db2}) {
    for (auto& ans : *set) {
      for (size_t row = 0; row < ans.map.rows(); ++row) ans.map.At(row, c) = 0;
    }
  }
  s.variant = SchemeVariant::kCustom;
  return s;
}

const CheckRecord& Get(const VerificationReport& r, std::string_view name) {
  const CheckRecord* c = r.Find(name);
  EXPECT_NE(c, nullptr) << name;
  return *c;
}

TEST(VerifyTest, ShippedSchemesPassEverything) {
  for (const Scheme& s : ShippedSchemes()) {
    const VerificationReport r = Verify(s);
    EXPECT_TRUE(r.AllPassed()) << r.ToText();
    EXPECT_EQ(r.checks.size(), 6u);
  }
}

TEST(VerifyTest, ReportCoversSixChecks) {
  const VerificationReport r = Verify(BuildPairwiseScheme(2));
  std::vector<std::string> names;
  for (const auto& c : r.checks) names.push_back(c.name);
  EXPECT_EQ(names, (std::vector<std::string>{
                       "answer_set_cardinality", "deterministic_answers",
                       "randomness_independence", "random_reliability",
                       "database_privacy", "user_privacy"}));
}

TEST(ReliabilityTest, PrintedK2ListingFailsAtFirstSecondPair) {
  const Scheme s = PrintedK2Listing();
  const CheckRecord c = CheckReliability(s, DeriveDecodeTable(s));
  EXPECT_FALSE(c.passed);
  EXPECT_EQ(c.witness, "pair=(A_1,B_2) determines no message");
  EXPECT_TRUE(BruteForcePair(s, 0, 1).decodable.empty());
}

TEST(ReliabilityTest, WrongThetaIsCaughtByEnumeration) {
  const Scheme s = BuildPairwiseScheme(3);
  DecodeTable t = DeriveDecodeTable(s);
  t.At(1, 1).theta = 0;
  const CheckRecord c = CheckReliability(s, t);
  EXPECT_FALSE(c.passed);
  EXPECT_EQ(c.witness, "pair=(A_2,B_2) H(W_1|A,B) = 1 symbols");
}

TEST(ReliabilityTest, TableMissingADecodableMessage) {
  const Scheme s = BuildPairwiseScheme(2);
  DecodeTable t = DeriveDecodeTable(s);
  t.At(0, 0).status = PairStatus::kNotReliable;
  EXPECT_EQ(CheckReliability(s, t).witness,
            "pair=(A_1,B_1) decode table misses W_1");
}

TEST(DatabasePrivacyTest, PairwiseK3WithoutSecondMaskLeaks) {
  const Scheme s = DropRandomness(BuildPairwiseScheme(3), 1);
  const VerificationReport r = Verify(s);
  const CheckRecord& c = Get(r, checks::kDatabasePrivacy);
  EXPECT_FALSE(c.passed);
  EXPECT_NE(c.witness.find("pair=(A_"), std::string::npos);
  EXPECT_NE(c.witness.find("I(W_not"), std::string::npos);
  EXPECT_FALSE(r.AllPassed());
}

TEST(DatabasePrivacyTest, PassesOnReferenceSchemes) {
  for (const Scheme& s :
       {BuildRotationScheme(3, SchemeVariant::kRotationRandomness),
        BuildK4Scheme()}) {
    EXPECT_TRUE(CheckDatabasePrivacy(s, DeriveDecodeTable(s)).passed);
  }
}

TEST(DatabasePrivacyTest, UnmaskedAnswerLeaks) {
  Scheme s;
  s.num_messages = 2;
  s.message_length = 1;
  s.randomness_count = 0;
  s.db1 = {{0, Rows(s, {"W1", "W2"})}, {1, Rows(s, {"W2"})}};
  s.db2 = {{0, FieldMatrix(0, 2)}, {1, FieldMatrix(0, 2)}};
  const CheckRecord c = CheckDatabasePrivacy(s, DeriveDecodeTable(s));
  EXPECT_FALSE(c.passed);
  EXPECT_EQ(c.witness, "pair=(A_1,B_1) I(W_not1;A,B) = 1 symbols");
}

TEST(UserPrivacyTest, LatinTablesPass) {
  EXPECT_TRUE(CheckThetaUniformity({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 3).passed);
  EXPECT_TRUE(CheckThetaUniformity({{0, 1, 0, 1}, {1, 0, 1, 0}}, 2).passed);
}

TEST(UserPrivacyTest, RepeatedThetaInARow) {
  const CheckRecord c = CheckThetaUniformity({{0, 0}, {1, 1}}, 2);
  EXPECT_FALSE(c.passed);
  EXPECT_EQ(c.witness, "db=1 answer=A_1 theta counts W_1:2,W_2:0");
}

TEST(UserPrivacyTest, RepeatedThetaInAColumn) {
  const CheckRecord c = CheckThetaUniformity({{0, 1}, {0, 1}}, 2);
  EXPECT_FALSE(c.passed);
  EXPECT_EQ(c.witness, "db=2 answer=B_1 theta counts W_1:2,W_2:0");
}

TEST(UserPrivacyTest, UndefinedEntry) {
  EXPECT_EQ(CheckThetaUniformity({{0, 2}, {1, 0}}, 2).witness,
            "pair=(A_1,B_2) has no decoded message");
}

TEST(UserPrivacyTest, DuplicatedAnswerBreaksUniformity) {
  Scheme s = BuildPairwiseScheme(2);
  s.db2[1].map = s.db2[0].map;
  const CheckRecord c = CheckUserPrivacy(s, DeriveDecodeTable(s));
  EXPECT_FALSE(c.passed);
  EXPECT_EQ(c.witness, "db=1 answer=A_1 theta counts W_1:2,W_2:0");
}

TEST(UserPrivacyTest, ExhaustiveSmallTables) {
  // Every 2x2 table over two messages: only the two Latin squares pass.
  int passing = 0;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<std::vector<size_t>> g = {
        {size_t(mask & 1), size_t((mask >> 1) & 1)},
        {size_t((mask >> 2) & 1), size_t((mask >> 3) & 1)}};
    if (CheckThetaUniformity(g, 2).passed) ++passing;
  }
  EXPECT_EQ(passing, 2);
}

TEST(CardinalityTest, NonMultipleFails) {
  Scheme s = BuildPairwiseScheme(3);
  s.db1.push_back({3, s.db1[0].map});
  const VerificationReport r = Verify(s);
  EXPECT_FALSE(Get(r, checks::kCardinality).passed);
  EXPECT_NE(Get(r, checks::kCardinality).witness.find("multiple of K"),
            std::string::npos);
}

TEST(DeterminismTest, MalformedAnswerStopsEvaluation) {
  Scheme s = BuildPairwiseScheme(3);
  s.db2[0].map = FieldMatrix(1, 3);
  const VerificationReport r = Verify(s);
  EXPECT_FALSE(Get(r, checks::kDeterministicAnswers).passed);
  EXPECT_EQ(Get(r, checks::kReliability).witness,
            "not evaluated: malformed answers");
  EXPECT_EQ(r.checks.size(), 6u);
}

TEST(IndependenceTest, UniformModelPasses) {
  for (const Scheme& s : ShippedSchemes()) {
    EXPECT_TRUE(CheckRandomnessIndependence(s).passed);
  }
}

TEST(IndependenceTest, SimulatorWiringPasses) {
  const Scheme s = BuildPairwiseScheme(3);
  EXPECT_TRUE(
      CheckRandomnessIndependence(s, SimulatorRandomness(s, 64)).passed);
}

TEST(IndependenceTest, RandomnessCopiedFromMessagesFails) {
  const Scheme s = BuildPairwiseScheme(3);
  RandomnessModel leaky{2, [](uint64_t seed, std::span<const Element> w) {
                          return std::vector<Element>{w[0],
                                                      Element(seed & 1)};
                        }};
  const CheckRecord c = CheckRandomnessIndependence(s, leaky);
  EXPECT_FALSE(c.passed);
  EXPECT_EQ(c.witness, "I(W_1:K;S) = 1 bits");
}

TEST(IndependenceTest, WrongDrawSizeFails) {
  const Scheme s = BuildPairwiseScheme(3);
  RandomnessModel short_draw{1, [](uint64_t, std::span<const Element>) {
                               return std::vector<Element>{0};
                             }};
  EXPECT_FALSE(CheckRandomnessIndependence(s, short_draw).passed);
  EXPECT_FALSE(CheckRandomnessIndependence(s, RandomnessModel{}).passed);
}

TEST(IndependenceTest, JointEntropyIsInputWidth) {
  EXPECT_EQ(MeasureInputEntropy(BuildK4Scheme()), Rational(12));
  EXPECT_EQ(MeasureInputEntropy(BuildPairwiseScheme(3)), Rational(5));
  EXPECT_EQ(MeasureInputEntropy(BuildPairwiseScheme(2, BinaryField(2))),
            Rational(3));
}

TEST(RateAuditTest, PairwiseK2MeetsCapacity) {
  const RateAudit r = AuditRate(BuildPairwiseScheme(2));
  EXPECT_EQ(r.download_cost, 2u);
  EXPECT_EQ(r.rate, Rational(1, 2));
  EXPECT_TRUE(r.meets_capacity);
  EXPECT_EQ(*r.gap, Rational(0));
}

TEST(RateAuditTest, PairwiseK4BelowBoundK4SpecialMeetsIt) {
  const RateAudit p = AuditRate(BuildPairwiseScheme(4));
  EXPECT_EQ(p.rate, Rational(1, 4));
  EXPECT_EQ(*p.capacity, Rational(1, 3));
  EXPECT_FALSE(p.meets_capacity);
  EXPECT_EQ(*p.gap, Rational(1, 12));
  const RateAudit k4 = AuditRate(BuildK4Scheme());
  EXPECT_EQ(k4.download_cost, 6u);
  EXPECT_EQ(k4.rate, Rational(1, 3));
  EXPECT_TRUE(k4.meets_capacity);
}

TEST(RateAuditTest, RotationIsOneOverKPlusOne) {
  for (int64_t k = 2; k <= 6; ++k) {
    EXPECT_EQ(AuditRate(BuildRotationScheme(
                            k, SchemeVariant::kRotationRandomness))
                  .rate,
              Rational(1, k + 1));
  }
  EXPECT_FALSE(AuditRate(BuildRotationScheme(5, SchemeVariant::kRotationMessages))
                   .capacity);
}

TEST(RateAuditTest, FiniteBlockIndexAmortization) {
  const RateAudit r = AuditRate(
      BuildRotationScheme(2, SchemeVariant::kRotationRandomness), 64);
  EXPECT_EQ(r.index_bits, 2u);
  EXPECT_EQ(r.finite_rate, Rational(64, 194));
  // Over GF(4) the two index bits weigh one symbol.
  const RateAudit q4 = AuditRate(
      BuildRotationScheme(2, SchemeVariant::kRotationRandomness, BinaryField(2)),
      64);
  EXPECT_EQ(q4.finite_rate, Rational(64, 193));
  EXPECT_EQ(AuditRate(BuildK4Scheme(), 1).finite_rate, Rational(2, 10));
}

TEST(RandomnessAuditTest, ReferenceValues) {
  const RandomnessAudit p2 = AuditRandomness(BuildPairwiseScheme(2));
  EXPECT_EQ(p2.entropy, Rational(1));
  EXPECT_EQ(p2.per_message_length, Rational(1));
  EXPECT_TRUE(p2.meets_minimum);
  const RandomnessAudit p3 = AuditRandomness(BuildPairwiseScheme(3));
  EXPECT_EQ(p3.per_message_length, Rational(2));
  EXPECT_TRUE(p3.meets_minimum);
  const RandomnessAudit k4 = AuditRandomness(BuildK4Scheme());
  EXPECT_EQ(k4.entropy, Rational(4));
  EXPECT_EQ(k4.per_message_length, Rational(2));
  EXPECT_TRUE(k4.meets_minimum);
  const RandomnessAudit rot =
      AuditRandomness(BuildRotationScheme(3, SchemeVariant::kRotationRandomness));
  EXPECT_EQ(rot.per_message_length, Rational(3));
  EXPECT_EQ(*rot.gap, Rational(1));
  EXPECT_FALSE(rot.meets_minimum);
}

TEST(ReportTest, LineFormat) {
  const std::string lines = Verify(BuildK4Scheme()).ToLines();
  EXPECT_NE(lines.find("CHECK user_privacy PASS\n"), std::string::npos);
  EXPECT_NE(lines.find("MEASURE rate 1/3\n"), std::string::npos);
  EXPECT_NE(lines.find("MEASURE download_cost 6\n"), std::string::npos);
  EXPECT_NE(lines.find("MEASURE randomness_per_L 2\n"), std::string::npos);
  EXPECT_NE(lines.find("MEASURE joint_entropy 12\n"), std::string::npos);
  const std::string failing = Verify(PrintedK2Listing()).ToLines();
  EXPECT_NE(failing.find("CHECK random_reliability FAIL pair=(A_1,B_2) "
                         "determines no message\n"),
            std::string::npos);
}

TEST(ReportTest, TextMentionsRateAndResult) {
  const std::string text = Verify(BuildK4Scheme()).ToText();
  EXPECT_NE(text.find("rate L/D              1/3  (capacity 1/3, meets)"),
            std::string::npos);
  EXPECT_NE(text.find("result: PASS"), std::string::npos);
}

TEST(ReportTest, IdenticalAcrossRuns) {
  EXPECT_EQ(Verify(BuildK4Scheme(), 8).ToLines(),
            Verify(BuildK4Scheme(), 8).ToLines());
}

// Permuting answers within a database permutes theta and changes nothing else.
TEST(VerifyPropertyTest, RelabelingInvariance) {
  std::mt19937_64 rng(17);
  for (const Scheme& s : ShippedSchemes()) {
    if (s.InputWidth() > 10) continue;
    const VerificationReport base = Verify(s);
    Scheme p = s;
    std::shuffle(p.db1.begin(), p.db1.end(), rng);
    std::shuffle(p.db2.begin(), p.db2.end(), rng);
    std::vector<size_t> pa, pb;
    for (size_t i = 0; i < p.db1.size(); ++i) {
      pa.push_back(p.db1[i].index);
      p.db1[i].index = i;
    }
    for (size_t i = 0; i < p.db2.size(); ++i) {
      pb.push_back(p.db2[i].index);
      p.db2[i].index = i;
    }
    const VerificationReport r = Verify(p);
    EXPECT_TRUE(r.AllPassed());
    EXPECT_EQ(r.rate.rate, base.rate.rate);
    EXPECT_EQ(r.randomness.entropy, base.randomness.entropy);
    for (size_t a = 0; a < pa.size(); ++a) {
      for (size_t b = 0; b < pb.size(); ++b) {
        EXPECT_EQ(r.theta[a][b], base.theta[pa[a]][pb[b]]);
      }
    }
  }
}

TEST(VerifyPropertyTest, FieldLiftToGf4) {
  for (size_t k = 2; k <= 3; ++k) {
    const BinaryField f(2);
    for (const Scheme& s :
         {BuildPairwiseScheme(k, f),
          BuildRotationScheme(k, SchemeVariant::kRotationRandomness, f),
          BuildRotationScheme(k, SchemeVariant::kRotationMessages, f)}) {
      const VerificationReport r = Verify(s);
      EXPECT_TRUE(r.AllPassed()) << r.ToText();
    }
  }
}

// Reliability agrees with the grouping oracle on randomly mutated schemes.
TEST(VerifyPropertyTest, ReliabilityAgreesWithOracleUnderMutation) {
  std::mt19937_64 rng(23);
  const std::vector<Scheme> bases = {
      BuildPairwiseScheme(2), BuildPairwiseScheme(3),
      BuildRotationScheme(2, SchemeVariant::kRotationRandomness),
      BuildRotationScheme(3, SchemeVariant::kRotationMessages)};
  for (int trial = 0; trial < 80; ++trial) {
    Scheme s = bases[trial % bases.size()];
    const int flips = 1 + static_cast<int>(rng() % 3);
    for (int f = 0; f < flips; ++f) {
      auto& set = rng() % 2 ? s.db1 : s.db2;
      auto& ans = set[rng() % set.size()];
      if (ans.map.rows() == 0) continue;
      ans.map.At(rng() % ans.map.rows(), rng() % ans.map.cols()) ^= 1;
    }
    bool oracle_reliable = true;
    for (size_t a = 0; a < s.db1.size(); ++a) {
      for (size_t b = 0; b < s.db2.size(); ++b) {
        if (BruteForcePair(s, a, b).decodable.empty()) oracle_reliable = false;
      }
    }
    EXPECT_EQ(CheckReliability(s, DeriveDecodeTable(s)).passed,
              oracle_reliable);
  }
}

// A single flipped coefficient either changes what that answer reveals, and
// then some check fails, or leaves its row space alone and changes nothing.
TEST(VerifyPropertyTest, SingleFlipsFailIffRowSpaceChanges) {
  for (const Scheme& base :
       {BuildPairwiseScheme(2), BuildPairwiseScheme(3),
        BuildRotationScheme(2, SchemeVariant::kRotationRandomness),
        BuildRotationScheme(3, SchemeVariant::kRotationMessages)}) {
    for (int db : {1, 2}) {
      for (size_t i = 0; i < base.AnswerSet(db).size(); ++i) {
        const FieldMatrix& orig = base.AnswerSet(db)[i].map;
        for (size_t r = 0; r < orig.rows(); ++r) {
          for (size_t c = 0; c < orig.cols(); ++c) {
            Scheme s = base;
            FieldMatrix& m = (db == 1 ? s.db1 : s.db2)[i].map;
            m.At(r, c) ^= 1;
            const bool same_space =
                RowReduce(s.field, m).reduced == RowReduce(s.field, orig).reduced;
            const VerificationReport rep = Verify(s);
            EXPECT_EQ(rep.AllPassed(), same_space)
                << "db" << db << " answer " << i + 1 << " row " << r
                << " col " << c;
            for (const auto& check : rep.checks) {
              if (!check.passed) EXPECT_FALSE(check.witness.empty());
            }
          }
        }
      }
    }
  }
}

TEST(ThresholdTest, KnownValues) {
  EXPECT_EQ(*CapacityThreshold(2), Rational(1, 2));
  EXPECT_EQ(*CapacityThreshold(3), Rational(1, 3));
  EXPECT_EQ(*CapacityThreshold(4), Rational(1, 3));
  EXPECT_FALSE(CapacityThreshold(5));
  EXPECT_EQ(*MinimumRandomness(2), Rational(1));
  EXPECT_EQ(*MinimumRandomness(4), Rational(2));
  EXPECT_FALSE(MinimumRandomness(6));
}

}  // namespace
}  // namespace rspir
