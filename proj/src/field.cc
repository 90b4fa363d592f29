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

#include <bit>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace rspir {

namespace {

int PolyDegree(uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

uint64_t PolyMod(uint64_t p, uint64_t m) {
  const int dm = PolyDegree(m);
  for (int d = PolyDegree(p); d >= dm; d = PolyDegree(p)) {
    p ^= m << (d - dm);
  }
  return p;
}

bool IsIrreducible(uint32_t p) {
  const int d = PolyDegree(p);
  for (uint32_t q = 2; PolyDegree(q) <= d / 2; ++q) {
    if (PolyMod(p, q) == 0) return false;
  }
  return true;
}

}  // namespace

uint32_t LeastIrreducible(int degree) {
  if (degree < 1 || degree > BinaryField::kMaxDegree) {
    throw std::invalid_argument(
        fmt::format("field degree {} outside [1, {}]", degree,
                    BinaryField::kMaxDegree));
  }
  for (uint32_t p = 1u << degree; p < (2u << degree); ++p) {
    if (IsIrreducible(p)) return p;
  }
  throw std::logic_error("no irreducible polynomial found");
}

BinaryField::BinaryField(int degree)
    : degree_(degree), modulus_(LeastIrreducible(degree)) {
  if (degree_ <= 8) {
    const Element q = order();
    auto table = std::make_shared<std::vector<uint8_t>>(size_t{q} * q);
    for (Element x = 0; x < q; ++x) {
      for (Element y = 0; y < q; ++y) {
        (*table)[size_t{x} * q + y] = static_cast<uint8_t>(MulSlow(x, y));
      }
    }
    product_table_ = std::move(table);
  }
}

Element BinaryField::MulSlow(Element x, Element y) const {
  uint64_t acc = 0;
  for (uint64_t a = x; y != 0; y >>= 1, a <<= 1) {
    if (y & 1) acc ^= a;
  }
  return static_cast<Element>(PolyMod(acc, modulus_));
}

Element BinaryField::Mul(Element x, Element y) const {
  if (product_table_) return (*product_table_)[size_t{x} * order() + y];
  return MulSlow(x, y);
}

Element BinaryField::Inv(Element x) const {
  if (x == 0) throw std::domain_error("inverse of zero in GF(2^m)");
  if (!Contains(x)) {
    throw std::domain_error(fmt::format("{} is not an element of GF(2^{})", x,
                                        degree_));
  }
  // x^(q-2) by square and multiply.
  Element result = 1;
  Element base = x;
  for (Element e = order() - 2; e != 0; e >>= 1) {
    if (e & 1) result = Mul(result, base);
    base = Mul(base, base);
  }
  return result;
}

FieldMatrix::FieldMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(size_t rows, size_t cols, std::vector<Element> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument(
        fmt::format("matrix {}x{} needs {} entries, got {}", rows_, cols_,
                    rows_ * cols_, entries_.size()));
  }
}

FieldMatrix FieldMatrix::Identity(size_t n) {
  FieldMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.At(i, i) = 1;
  return m;
}

FieldMatrix FieldMatrix::FromRows(const std::vector<std::vector<Element>>& rows,
                                  size_t cols) {
  FieldMatrix m(0, cols);
  for (const auto& r : rows) m.AppendRow(r);
  return m;
}

void FieldMatrix::AppendRow(std::span<const Element> row) {
  if (row.size() != cols_) {
    throw std::invalid_argument(fmt::format(
        "row of length {} appended to matrix with {} columns", row.size(),
        cols_));
  }
  entries_.insert(entries_.end(), row.begin(), row.end());
  ++rows_;
}

void FieldMatrix::SwapRows(size_t r1, size_t r2) {
  if (r1 == r2) return;
  for (size_t c = 0; c < cols_; ++c) std::swap(At(r1, c), At(r2, c));
}

FieldMatrix FieldMatrix::Transpose() const {
  FieldMatrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) t.At(c, r) = At(r, c);
  }
  return t;
}

FieldMatrix FieldMatrix::Stack(const FieldMatrix& below) const {
  if (below.cols_ != cols_) {
    throw std::invalid_argument(fmt::format(
        "cannot stack {}-column matrix under {}-column matrix", below.cols_,
        cols_));
  }
  FieldMatrix out = *this;
  out.entries_.insert(out.entries_.end(), below.entries_.begin(),
                      below.entries_.end());
  out.rows_ += below.rows_;
  return out;
}

bool FieldMatrix::AllBelow(Element bound) const {
  for (Element e : entries_) {
    if (e >= bound) return false;
  }
  return true;
}

bool FieldMatrix::IsZero() const {
  for (Element e : entries_) {
    if (e != 0) return false;
  }
  return true;
}

std::vector<Element> Apply(const BinaryField& field, const FieldMatrix& a,
                           std::span<const Element> x) {
  if (x.size() != a.cols()) {
    throw std::invalid_argument(fmt::format(
        "vector of length {} applied to {}x{} matrix", x.size(), a.rows(),
        a.cols()));
  }
  std::vector<Element> y(a.rows(), 0);
  for (size_t r = 0; r < a.rows(); ++r) {
    Element acc = 0;
    auto row = a.Row(r);
    for (size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0 && x[c] != 0) acc ^= field.Mul(row[c], x[c]);
    }
    y[r] = acc;
  }
  return y;
}

FieldMatrix Multiply(const BinaryField& field, const FieldMatrix& a,
                     const FieldMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument(
        fmt::format("cannot multiply {}x{} by {}x{}", a.rows(), a.cols(),
                    b.rows(), b.cols()));
  }
  FieldMatrix out(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t k = 0; k < a.cols(); ++k) {
      const Element aik = a.At(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < b.cols(); ++j) {
        out.At(i, j) ^= field.Mul(aik, b.At(k, j));
      }
    }
  }
  return out;
}

RowEchelon RowReduce(const BinaryField& field, const FieldMatrix& a) {
  FieldMatrix m = a;
  std::vector<size_t> pivots;
  size_t pivot_row = 0;
  for (size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    size_t r = pivot_row;
    while (r < m.rows() && m.At(r, c) == 0) ++r;
    if (r == m.rows()) continue;
    m.SwapRows(r, pivot_row);
    const Element inv = field.Inv(m.At(pivot_row, c));
    for (Element& e : m.Row(pivot_row)) e = field.Mul(e, inv);
    for (size_t other = 0; other < m.rows(); ++other) {
      const Element factor = m.At(other, c);
      if (other == pivot_row || factor == 0) continue;
      auto dst = m.Row(other);
      auto src = m.Row(pivot_row);
      for (size_t k = c; k < m.cols(); ++k) {
        dst[k] ^= field.Mul(factor, src[k]);
      }
    }
    pivots.push_back(c);
    ++pivot_row;
  }
  std::vector<Element> kept(m.entries().begin(),
                            m.entries().begin() + pivot_row * m.cols());
  return {FieldMatrix(pivot_row, m.cols(), std::move(kept)),
          std::move(pivots)};
}

size_t Rank(const BinaryField& field, const FieldMatrix& a) {
  return RowReduce(field, a).rank();
}

namespace {

FieldMatrix KernelFromEchelon(const RowEchelon& ech, size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (size_t p : ech.pivots) is_pivot[p] = true;
  FieldMatrix basis(0, cols);
  std::vector<Element> v(cols);
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[free] = 1;
    // Characteristic 2: -x == x.
    for (size_t i = 0; i < ech.pivots.size(); ++i) {
      v[ech.pivots[i]] = ech.reduced.At(i, free);
    }
    basis.AppendRow(v);
  }
  return basis;
}

}  // namespace

FieldMatrix NullSpace(const BinaryField& field, const FieldMatrix& a) {
  return KernelFromEchelon(RowReduce(field, a), a.cols());
}

LinearSolution SolveLinear(const BinaryField& field, const FieldMatrix& a,
                           std::span<const Element> b) {
  if (b.size() != a.rows()) {
    throw std::invalid_argument(fmt::format(
        "right-hand side has length {}, system has {} equations", b.size(),
        a.rows()));
  }
  const size_t n = a.cols();
  FieldMatrix augmented(a.rows(), n + 1);
  for (size_t r = 0; r < a.rows(); ++r) {
    for (size_t c = 0; c < n; ++c) augmented.At(r, c) = a.At(r, c);
    augmented.At(r, n) = b[r];
  }
  RowEchelon ech = RowReduce(field, augmented);

  LinearSolution out;
  if (!ech.pivots.empty() && ech.pivots.back() == n) {
    out.status = SolveStatus::kInconsistent;
    out.kernel = FieldMatrix(0, n);
    return out;
  }
  out.solution.assign(n, 0);
  for (size_t i = 0; i < ech.pivots.size(); ++i) {
    out.solution[ech.pivots[i]] = ech.reduced.At(i, n);
  }
  RowEchelon coeff;
  coeff.pivots = ech.pivots;
  coeff.reduced = FieldMatrix(ech.reduced.rows(), n);
  for (size_t r = 0; r < ech.reduced.rows(); ++r) {
    for (size_t c = 0; c < n; ++c) coeff.reduced.At(r, c) = ech.reduced.At(r, c);
  }
  out.kernel = KernelFromEchelon(coeff, n);
  out.determined.assign(n, true);
  for (size_t k = 0; k < out.kernel.rows(); ++k) {
    for (size_t c = 0; c < n; ++c) {
      if (out.kernel.At(k, c) != 0) out.determined[c] = false;
    }
  }
  out.status = out.kernel.rows() == 0 ? SolveStatus::kUnique
                                      : SolveStatus::kUnderdetermined;
  return out;
}

}  // namespace rspir
