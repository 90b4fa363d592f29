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

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace rspir {

using Element = uint32_t;

// Binary extension field GF(2^m), 1 <= m <= 16. Multiplication reduces by
// the lexicographically least irreducible polynomial of degree m, so that
// m=2 uses x^2+x+1, m=3 uses x^3+x+1 and m=4 uses x^4+x+1.
class BinaryField {
 public:
  static constexpr int kMaxDegree = 16;

  explicit BinaryField(int degree = 1);

  int degree() const { return degree_; }
  Element order() const { return Element{1} << degree_; }
  // Reduction polynomial as a bit mask including the x^m term. For m = 1
  // this is x (0b10), which makes multiplication a plain AND.
  uint32_t modulus() const { return modulus_; }

  bool Contains(Element x) const { return x < order(); }

  Element Add(Element x, Element y) const { return x ^ y; }
  Element Sub(Element x, Element y) const { return x ^ y; }
  Element Mul(Element x, Element y) const;
  // Throws std::domain_error on zero.
  Element Inv(Element x) const;

  bool operator==(const BinaryField& other) const {
    return degree_ == other.degree_;
  }

 private:
  Element MulSlow(Element x, Element y) const;

  int degree_;
  uint32_t modulus_;
  // Full product table for m <= 8, empty otherwise.
  std::shared_ptr<const std::vector<uint8_t>> product_table_;
};

// Least irreducible polynomial of the given degree over GF(2), as a bit mask.
uint32_t LeastIrreducible(int degree);

// Row-major matrix of field elements. The owning field is supplied to each
// algebraic operation rather than stored.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(size_t rows, size_t cols);
  FieldMatrix(size_t rows, size_t cols, std::vector<Element> entries);

  static FieldMatrix Identity(size_t n);
  static FieldMatrix FromRows(const std::vector<std::vector<Element>>& rows,
                              size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const std::vector<Element>& entries() const { return entries_; }

  Element& At(size_t r, size_t c) { return entries_[r * cols_ + c]; }
  Element At(size_t r, size_t c) const { return entries_[r * cols_ + c]; }

  std::span<Element> Row(size_t r) {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<const Element> Row(size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }

  void AppendRow(std::span<const Element> row);
  void SwapRows(size_t r1, size_t r2);

  FieldMatrix Transpose() const;
  // Rows of *this followed by rows of below; column counts must agree.
  FieldMatrix Stack(const FieldMatrix& below) const;

  bool AllBelow(Element bound) const;
  bool IsZero() const;

  bool operator==(const FieldMatrix& other) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Element> entries_;
};

// y = A x.
std::vector<Element> Apply(const BinaryField& field, const FieldMatrix& a,
                           std::span<const Element> x);
// A B.
FieldMatrix Multiply(const BinaryField& field, const FieldMatrix& a,
                     const FieldMatrix& b);

struct RowEchelon {
  FieldMatrix reduced;  // reduced row echelon form, zero rows dropped
  std::vector<size_t> pivots;
  size_t rank() const { return pivots.size(); }
};

RowEchelon RowReduce(const BinaryField& field, const FieldMatrix& a);

size_t Rank(const BinaryField& field, const FieldMatrix& a);

// Basis of {x : A x = 0}, one basis vector per row.
FieldMatrix NullSpace(const BinaryField& field, const FieldMatrix& a);

enum class SolveStatus { kUnique, kUnderdetermined, kInconsistent };

struct LinearSolution {
  SolveStatus status = SolveStatus::kInconsistent;
  // A particular solution; empty when inconsistent.
  std::vector<Element> solution;
  // Basis of the homogeneous solutions, one per row.
  FieldMatrix kernel;
  // determined[i] holds iff coordinate i takes the same value in every
  // solution.
  std::vector<bool> determined;
};

// Gaussian elimination for A x = b. Throws std::invalid_argument when
// b.size() != A.rows().
LinearSolution SolveLinear(const BinaryField& field, const FieldMatrix& a,
                           std::span<const Element> b);

}  // namespace rspir
