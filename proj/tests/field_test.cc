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

#include "rspir/field.h"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "test_util.h"

namespace rspir {
namespace {

using testing::AllVectors;
using testing::NaiveApply;

// Product via discrete logarithms to the primitive element x; independent of
// the shift-and-reduce multiplier.
class LogTableField {
 public:
  LogTableField(int m, uint32_t modulus) : q_(1u << m), exp_(q_), log_(q_) {
    uint32_t v = 1;
    for (uint32_t i = 0; i + 1 < q_; ++i) {
      exp_[i] = v;
      log_[v] = i;
      v <<= 1;
      if (v & q_) v ^= modulus;
    }
  }
  uint32_t Mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }

 private:
  uint32_t q_;
  std::vector<uint32_t> exp_, log_;
};

TEST(BinaryFieldTest, Gf2Basics) {
  BinaryField f(1);
  EXPECT_EQ(f.order(), 2u);
  EXPECT_EQ(f.Add(1, 1), 0u);
  EXPECT_EQ(f.Mul(1, 1), 1u);
  EXPECT_EQ(f.Mul(1, 0), 0u);
  EXPECT_EQ(f.Inv(1), 1u);
}

TEST(BinaryFieldTest, PublishedReductionPolynomials) {
  EXPECT_EQ(BinaryField(1).modulus(), 0b10u);
  EXPECT_EQ(BinaryField(2).modulus(), 0b111u);
  EXPECT_EQ(BinaryField(3).modulus(), 0b1011u);
  EXPECT_EQ(BinaryField(4).modulus(), 0b10011u);
  EXPECT_EQ(BinaryField(8).modulus(), 0x11bu);
}

TEST(BinaryFieldTest, Gf8ProductMatchesLogTable) {
  BinaryField f(3);
  EXPECT_EQ(f.Mul(0b010, 0b100), 0b011u);
  LogTableField oracle(3, 0b1011);
  for (Element x = 0; x < 8; ++x) {
    for (Element y = 0; y < 8; ++y) EXPECT_EQ(f.Mul(x, y), oracle.Mul(x, y));
  }
}

TEST(BinaryFieldTest, Gf16ProductMatchesLogTable) {
  BinaryField f(4);
  LogTableField oracle(4, 0b10011);
  for (Element x = 0; x < 16; ++x) {
    for (Element y = 0; y < 16; ++y) EXPECT_EQ(f.Mul(x, y), oracle.Mul(x, y));
  }
}

TEST(BinaryFieldTest, RingAxiomsExhaustive) {
  for (int m = 1; m <= 4; ++m) {
    BinaryField f(m);
    const Element q = f.order();
    for (Element x = 0; x < q; ++x) {
      EXPECT_EQ(f.Add(x, x), 0u);
      for (Element y = 0; y < q; ++y) {
        EXPECT_EQ(f.Add(x, y), f.Add(y, x));
        EXPECT_EQ(f.Mul(x, y), f.Mul(y, x));
        for (Element z = 0; z < q; ++z) {
          EXPECT_EQ(f.Mul(x, f.Add(y, z)), f.Add(f.Mul(x, y), f.Mul(x, z)));
        }
      }
    }
  }
}

TEST(BinaryFieldTest, InverseRoundTrip) {
  for (int m : {1, 2, 3, 5, 8, 9, 12}) {
    BinaryField f(m);
    for (Element x = 1; x < std::min<Element>(f.order(), 600); ++x) {
      EXPECT_EQ(f.Mul(x, f.Inv(x)), 1u) << "m=" << m << " x=" << x;
    }
  }
}

TEST(BinaryFieldTest, InverseOfZeroIsDomainError) {
  EXPECT_THROW(BinaryField(3).Inv(0), std::domain_error);
  EXPECT_THROW(BinaryField(1).Inv(0), std::domain_error);
}

TEST(BinaryFieldTest, DegreeOutOfRange) {
  EXPECT_THROW(BinaryField(0), std::invalid_argument);
  EXPECT_THROW(BinaryField(17), std::invalid_argument);
}

TEST(SolveLinearTest, IdentitySystem) {
  BinaryField f(1);
  std::vector<Element> b = {1, 0};
  LinearSolution sol = SolveLinear(f, FieldMatrix::Identity(2), b);
  EXPECT_EQ(sol.status, SolveStatus::kUnique);
  EXPECT_EQ(sol.solution, b);
}

TEST(SolveLinearTest, OneEquationTwoUnknowns) {
  BinaryField f(1);
  FieldMatrix a(1, 2, {1, 1});
  std::vector<Element> b = {0};
  LinearSolution sol = SolveLinear(f, a, b);
  EXPECT_EQ(sol.status, SolveStatus::kUnderdetermined);
  EXPECT_EQ(sol.kernel.rows(), 1u);
  EXPECT_FALSE(sol.determined[0]);
  EXPECT_FALSE(sol.determined[1]);
}

TEST(SolveLinearTest, Inconsistent) {
  BinaryField f(1);
  FieldMatrix a(2, 1, {1, 1});
  std::vector<Element> b = {0, 1};
  EXPECT_EQ(SolveLinear(f, a, b).status, SolveStatus::kInconsistent);
}

TEST(SolveLinearTest, DimensionMismatch) {
  BinaryField f(1);
  std::vector<Element> b = {1, 0, 1};
  EXPECT_THROW(SolveLinear(f, FieldMatrix::Identity(2), b),
               std::invalid_argument);
}

// The pair (A_2, B_1) of the K = 3 pairwise scheme pins down W_2 and nothing
// else, for every one of the 2^5 realizations.
TEST(SolveLinearTest, PairwiseK3PairDeterminesSecondMessage) {
  const Scheme s = BuildPairwiseScheme(3);
  const FieldMatrix g = s.db1[1].map.Stack(s.db2[0].map);
  const size_t w2 = s.MessageCoord(1, 0);

  std::map<std::vector<Element>, std::set<Element>> oracle;
  for (const auto& v : AllVectors(2, s.InputWidth())) {
    oracle[NaiveApply(s.field, g, v)].insert(v[w2]);
  }
  for (const auto& [obs, values] : oracle) EXPECT_EQ(values.size(), 1u);

  for (const auto& v : AllVectors(2, s.InputWidth())) {
    const auto obs = NaiveApply(s.field, g, v);
    LinearSolution sol = SolveLinear(s.field, g, obs);
    ASSERT_EQ(sol.status, SolveStatus::kUnderdetermined);
    EXPECT_TRUE(sol.determined[w2]);
    EXPECT_EQ(sol.solution[w2], v[w2]);
    for (size_t k : {0u, 2u}) EXPECT_FALSE(sol.determined[s.MessageCoord(k, 0)]);
  }
}

TEST(SolveLinearTest, RandomConsistentSystemsProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    BinaryField f(1 + static_cast<int>(rng() % 3));
    const size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    FieldMatrix a(rows, cols);
    for (size_t r = 0; r < rows; ++r) {
      for (size_t c = 0; c < cols; ++c) a.At(r, c) = rng() % f.order();
    }
    std::vector<Element> v(cols);
    for (auto& e : v) e = rng() % f.order();
    const auto b = Apply(f, a, v);
    LinearSolution sol = SolveLinear(f, a, b);
    ASSERT_NE(sol.status, SolveStatus::kInconsistent);
    EXPECT_EQ(Apply(f, a, sol.solution), b);
    for (size_t k = 0; k < sol.kernel.rows(); ++k) {
      auto row = sol.kernel.Row(k);
      EXPECT_TRUE(Apply(f, a, {row.begin(), row.end()}) ==
                  std::vector<Element>(rows, 0));
    }
    EXPECT_EQ(sol.kernel.rows() + Rank(f, a), cols);
  }
}

TEST(RankTest, Basics) {
  BinaryField f(1);
  EXPECT_EQ(Rank(f, FieldMatrix(2, 2)), 0u);
  EXPECT_EQ(Rank(f, FieldMatrix::Identity(3)), 3u);
  const Scheme k4 = BuildK4Scheme();
  EXPECT_EQ(k4.db1[1].map.rows(), 3u);
  EXPECT_EQ(k4.db1[1].map.cols(), 12u);
  EXPECT_EQ(Rank(f, k4.db1[1].map), 3u);
}

TEST(RankTest, InvariantUnderRowOperations) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    BinaryField f(1 + static_cast<int>(rng() % 3));
    const size_t rows = 2 + rng() % 4, cols = 1 + rng() % 6;
    FieldMatrix a(rows, cols);
    for (auto r = 0u; r < rows; ++r) {
      for (auto c = 0u; c < cols; ++c) a.At(r, c) = rng() % f.order();
    }
    const size_t rank = Rank(f, a);
    FieldMatrix b = a;
    const size_t r1 = rng() % rows, r2 = (r1 + 1 + rng() % (rows - 1)) % rows;
    b.SwapRows(r1, r2);
    EXPECT_EQ(Rank(f, b), rank);
    const Element factor = rng() % f.order();
    for (size_t c = 0; c < cols; ++c) {
      b.At(r1, c) ^= f.Mul(factor, b.At(r2, c));
    }
    EXPECT_EQ(Rank(f, b), rank);
  }
}

TEST(NullSpaceTest, KernelIsAnnihilated) {
  BinaryField f(2);
  FieldMatrix a(2, 4, {1, 2, 3, 0, 0, 1, 1, 1});
  FieldMatrix n = NullSpace(f, a);
  EXPECT_EQ(n.rows(), 2u);
  EXPECT_TRUE(Multiply(f, a, n.Transpose()).IsZero());
}

TEST(FieldMatrixTest, ShapeErrors) {
  EXPECT_THROW(FieldMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
  FieldMatrix a(1, 3);
  std::vector<Element> short_row = {1};
  EXPECT_THROW(a.AppendRow(short_row), std::invalid_argument);
  EXPECT_THROW(a.Stack(FieldMatrix(1, 2)), std::invalid_argument);
}

}  // namespace
}  // namespace rspir
