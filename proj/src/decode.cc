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

#include "rspir/decode.h"

#include <fmt/format.h>

namespace rspir {

DecodeTable::DecodeTable(size_t m1, size_t m2)
    : m1_(m1), m2_(m2), cells_(m1 * m2) {}

bool DecodeTable::AllDecodable() const {
  for (const PairDecoding& cell : cells_) {
    if (cell.status != PairStatus::kDecodable) return false;
  }
  return true;
}

std::vector<std::vector<size_t>> DecodeTable::ThetaGrid(
    size_t num_messages) const {
  std::vector<std::vector<size_t>> grid(m1_, std::vector<size_t>(m2_));
  for (size_t a = 0; a < m1_; ++a) {
    for (size_t b = 0; b < m2_; ++b) {
      const PairDecoding& cell = At(a, b);
      grid[a][b] =
          cell.status == PairStatus::kNotReliable ? num_messages : cell.theta;
    }
  }
  return grid;
}

NotReliableError::NotReliableError(size_t a, size_t b)
    : std::runtime_error(fmt::format(
          "answer pair (A_{}, B_{}) determines no message", a + 1, b + 1)),
      a_(a),
      b_(b) {}

DatabasePrivacyBreach::DatabasePrivacyBreach(size_t a, size_t b,
                                             std::vector<size_t> decodable)
    : std::runtime_error(fmt::format(
          "answer pair (A_{}, B_{}) determines {} messages", a + 1, b + 1,
          decodable.size())),
      a_(a),
      b_(b),
      decodable_(std::move(decodable)) {}

size_t ObservationLength(const Scheme& scheme, size_t a, size_t b) {
  return scheme.db1.at(a).length() + scheme.db2.at(b).length();
}

FieldMatrix PairMap(const Scheme& scheme, size_t a, size_t b) {
  return scheme.db1.at(a).map.Stack(scheme.db2.at(b).map);
}

DecodeTable DeriveDecodeTable(const Scheme& scheme) {
  // Cardinality is a verifier concern; the table is defined for any size.
  for (const ShapeViolation& v : ValidateShape(scheme)) {
    if (v.kind != ViolationKind::kCardinality) {
      throw std::invalid_argument("malformed scheme: " + v.detail);
    }
  }
  const BinaryField& field = scheme.field;
  const size_t k_count = scheme.num_messages;
  const size_t l_count = scheme.message_length;
  const size_t width = scheme.InputWidth();

  DecodeTable table(scheme.db1.size(), scheme.db2.size());
  for (size_t a = 0; a < table.m1(); ++a) {
    for (size_t b = 0; b < table.m2(); ++b) {
      const FieldMatrix transposed = PairMap(scheme, a, b).Transpose();
      PairDecoding& cell = table.At(a, b);
      std::vector<Element> unit(width, 0);
      for (size_t k = 0; k < k_count; ++k) {
        FieldMatrix recovery(0, transposed.cols());
        for (size_t l = 0; l < l_count; ++l) {
          const size_t coord = scheme.MessageCoord(k, l);
          unit[coord] = 1;
          LinearSolution sol = SolveLinear(field, transposed, unit);
          unit[coord] = 0;
          if (sol.status == SolveStatus::kInconsistent) break;
          recovery.AppendRow(sol.solution);
        }
        if (recovery.rows() != l_count) continue;
        if (cell.decodable.empty()) cell.recovery = std::move(recovery);
        cell.decodable.push_back(k);
      }
      if (cell.decodable.empty()) {
        cell.status = PairStatus::kNotReliable;
        cell.recovery = FieldMatrix(0, transposed.cols());
      } else {
        cell.theta = cell.decodable.front();
        cell.status = cell.decodable.size() == 1
                          ? PairStatus::kDecodable
                          : PairStatus::kMultipleDecodable;
      }
    }
  }
  return table;
}

void RequireDecodable(const DecodeTable& table) {
  for (size_t a = 0; a < table.m1(); ++a) {
    for (size_t b = 0; b < table.m2(); ++b) {
      const PairDecoding& cell = table.At(a, b);
      if (cell.status == PairStatus::kNotReliable) {
        throw NotReliableError(a, b);
      }
      if (cell.status == PairStatus::kMultipleDecodable) {
        throw DatabasePrivacyBreach(a, b, cell.decodable);
      }
    }
  }
}

DecodedMessage Decode(const Scheme& scheme, const DecodeTable& table, size_t a,
                      size_t b, std::span<const Element> observed) {
  const size_t expected = ObservationLength(scheme, a, b);
  if (observed.size() != expected) {
    throw std::invalid_argument(fmt::format(
        "observation for (A_{}, B_{}) has {} symbols, expected {}", a + 1,
        b + 1, observed.size(), expected));
  }
  const PairDecoding& cell = table.At(a, b);
  if (cell.status == PairStatus::kNotReliable) throw NotReliableError(a, b);
  return {cell.theta, Apply(scheme.field, cell.recovery, observed)};
}

}  // namespace rspir
