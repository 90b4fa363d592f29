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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rspir/field.h"
#include "rspir/scheme.h"

namespace rspir {

enum class PairStatus {
  kDecodable,          // exactly one message is a function of the observation
  kNotReliable,        // no message is
  kMultipleDecodable,  // more than one is; theta holds the lowest
};

struct PairDecoding {
  PairStatus status = PairStatus::kNotReliable;
  size_t theta = 0;  // 0-based message index; meaningless if kNotReliable
  std::vector<size_t> decodable;
  // L x (|A_a| + |B_b|): maps the observation (A_a || B_b) to W_theta.
  FieldMatrix recovery;
};

// Which message each answer pair reveals and how to recover it.
class DecodeTable {
 public:
  DecodeTable(size_t m1, size_t m2);

  size_t m1() const { return m1_; }
  size_t m2() const { return m2_; }

  const PairDecoding& At(size_t a, size_t b) const {
    return cells_[a * m2_ + b];
  }
  PairDecoding& At(size_t a, size_t b) { return cells_[a * m2_ + b]; }

  size_t Theta(size_t a, size_t b) const { return At(a, b).theta; }

  // True iff every pair has exactly one decodable message.
  bool AllDecodable() const;

  // theta as an M1 x M2 grid; pairs without a decodable message hold K.
  std::vector<std::vector<size_t>> ThetaGrid(size_t num_messages) const;

 private:
  size_t m1_;
  size_t m2_;
  std::vector<PairDecoding> cells_;
};

class NotReliableError : public std::runtime_error {
 public:
  NotReliableError(size_t a, size_t b);
  size_t a() const { return a_; }
  size_t b() const { return b_; }

 private:
  size_t a_, b_;
};

class DatabasePrivacyBreach : public std::runtime_error {
 public:
  DatabasePrivacyBreach(size_t a, size_t b, std::vector<size_t> decodable);
  size_t a() const { return a_; }
  size_t b() const { return b_; }
  const std::vector<size_t>& decodable() const { return decodable_; }

 private:
  size_t a_, b_;
  std::vector<size_t> decodable_;
};

// A message symbol is a deterministic function of the observation iff its
// unit vector lies in the row space of the stacked map [A_a; B_b]; the
// recovery row is then a solution y of [A_a; B_b]^T y = e. Problem pairs are
// recorded in the table rather than thrown. Throws std::invalid_argument if
// ValidateShape reports a dimension, range or index violation.
DecodeTable DeriveDecodeTable(const Scheme& scheme);

// Throws NotReliableError or DatabasePrivacyBreach for the first problem
// pair in row-major order.
void RequireDecodable(const DecodeTable& table);

// Observation vector length of the pair (a, b).
size_t ObservationLength(const Scheme& scheme, size_t a, size_t b);

// Stacked map [A_a; B_b].
FieldMatrix PairMap(const Scheme& scheme, size_t a, size_t b);

struct DecodedMessage {
  size_t message;  // 0-based
  std::vector<Element> symbols;
  bool operator==(const DecodedMessage&) const = default;
};

// User-side decoding of one block. Throws std::invalid_argument on an
// observation of the wrong length and NotReliableError if the pair reveals
// nothing.
DecodedMessage Decode(const Scheme& scheme, const DecodeTable& table, size_t a,
                      size_t b, std::span<const Element> observed);

}  // namespace rspir
