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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rspir/field.h"

namespace rspir {

enum class SchemeVariant {
  kRotationRandomness,
  kRotationMessages,
  kPairwiseSum,
  kK4Special,
  kCustom,
};

std::string_view VariantName(SchemeVariant variant);
std::optional<SchemeVariant> ParseVariant(std::string_view name);

// One answer of a database: a linear map from the stacked input vector
// (W_1 .. W_K, S_1 .. S_R) to the transmitted symbols, one row per symbol.
struct LinearAnswer {
  size_t index = 0;  // 0-based position in the owning answer set
  FieldMatrix map;

  size_t length() const { return map.rows(); }
  bool operator==(const LinearAnswer&) const = default;
};

// Public description of a two-database scheme for one block. The input
// vector lays out message k, symbol l at k * L + l and randomness symbol r at
// K * L + r.
struct Scheme {
  SchemeVariant variant = SchemeVariant::kCustom;
  size_t num_messages = 0;      // K
  size_t message_length = 0;    // L, symbols per message per block
  size_t randomness_count = 0;  // R, common randomness symbols per block
  BinaryField field;
  std::vector<LinearAnswer> db1;
  std::vector<LinearAnswer> db2;

  size_t InputWidth() const {
    return num_messages * message_length + randomness_count;
  }
  size_t MessageCoord(size_t k, size_t l) const {
    return k * message_length + l;
  }
  size_t RandomnessCoord(size_t r) const {
    return num_messages * message_length + r;
  }
  const std::vector<LinearAnswer>& AnswerSet(int db) const {
    return db == 1 ? db1 : db2;
  }

  bool operator==(const Scheme&) const = default;
};

// Rotation construction with K randomness symbols. Database 1 sends K
// masked message symbols, database 2 sends a single randomness symbol.
// kRotationRandomness rotates the masks across answers; kRotationMessages
// rotates the messages instead. Throws std::invalid_argument for K < 2 or
// any other variant.
Scheme BuildRotationScheme(size_t num_messages, SchemeVariant variant,
                           const BinaryField& field = BinaryField(1));

// Pairwise-sum construction with K - 1 randomness symbols and download cost
// K symbols per block. Decodability relies on characteristic 2.
Scheme BuildPairwiseScheme(size_t num_messages,
                           const BinaryField& field = BinaryField(1));

// The K = 4, L = 2 construction with 4 randomness symbols and download cost
// 6 symbols per block.
Scheme BuildK4Scheme(const BinaryField& field = BinaryField(1));

// Dispatches to the builders above. num_messages is ignored for kK4Special.
Scheme BuildScheme(SchemeVariant variant, size_t num_messages,
                   const BinaryField& field);

enum class ViolationKind {
  kCardinality,
  kDimension,
  kFieldRange,
  kIndex,
};

struct ShapeViolation {
  ViolationKind kind;
  int db;        // 1 or 2, 0 when scheme-wide
  size_t index;  // 0-based answer index, when db != 0
  std::string detail;
};

// Empty iff both answer set sizes are positive multiples of K, every answer
// map has K * L + R columns, every coefficient is a field element and answer
// indices match their positions.
std::vector<ShapeViolation> ValidateShape(const Scheme& scheme);

class SchemeParseError : public std::runtime_error {
 public:
  SchemeParseError(size_t line, const std::string& what);
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Line-oriented text format:
//
//   # comment
//   rspir K L R m M1 M2
//   answer <db> <index> <rows>
//   c_1 c_2 ... c_{K*L+R}      (one line per row)
//   ...
//
// Answers appear database 1 first, each set in index order; indices are
// 1-based. A comment of the form "# variant <name>" records the builder.
Scheme ParseScheme(std::string_view text);
std::string SerializeScheme(const Scheme& scheme);

Scheme ReadSchemeFile(const std::string& path);
void WriteSchemeFile(const Scheme& scheme, const std::string& path);

}  // namespace rspir
