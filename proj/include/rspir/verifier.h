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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rspir/decode.h"
#include "rspir/entropy.h"
#include "rspir/scheme.h"

namespace rspir {

namespace checks {
inline constexpr std::string_view kCardinality = "answer_set_cardinality";
inline constexpr std::string_view kDeterministicAnswers =
    "deterministic_answers";
inline constexpr std::string_view kRandomnessIndependence =
    "randomness_independence";
inline constexpr std::string_view kReliability = "random_reliability";
inline constexpr std::string_view kDatabasePrivacy = "database_privacy";
inline constexpr std::string_view kUserPrivacy = "user_privacy";
}  // namespace checks

struct CheckRecord {
  std::string name;
  bool passed = false;
  std::string witness;  // empty on pass
};

struct RateAudit {
  size_t message_length = 0;  // L
  size_t download_cost = 0;   // D, symbols per block, index excluded
  Rational rate;              // L / D
  std::optional<Rational> capacity;
  bool meets_capacity = false;
  std::optional<Rational> gap;  // capacity - rate
  size_t index_bits = 0;        // ceil(log2 M1) + ceil(log2 M2), sent once
  size_t blocks = 1;
  Rational finite_rate;  // L*blocks / (D*blocks + index_bits / m)
};

struct RandomnessAudit {
  Rational entropy;               // H(S) per block in q-ary symbols
  Rational per_message_length;    // H(S) / L
  std::optional<Rational> minimum;  // in units of L
  bool meets_minimum = false;
  std::optional<Rational> gap;  // per_message_length - minimum
};

struct VerificationReport {
  std::string scheme_summary;
  std::vector<std::vector<size_t>> theta;  // 0-based; K marks undefined
  std::vector<CheckRecord> checks;
  RateAudit rate;
  RandomnessAudit randomness;
  Rational joint_entropy;  // H(W_{1:K}, S) in q-ary symbols

  bool AllPassed() const;
  const CheckRecord* Find(std::string_view name) const;
  // Human-readable report.
  std::string ToText() const;
  // "CHECK <name> PASS|FAIL [witness]" and "MEASURE <name> <rational>" lines.
  std::string ToLines() const;
};

// Model of how the databases obtain their common randomness: every seed in
// [0, seed_count) is equally likely and draw maps it, together with the
// message realization, to the R randomness symbols of one block. A correct
// model ignores the messages.
struct RandomnessModel {
  uint64_t seed_count = 0;
  std::function<std::vector<Element>(uint64_t seed,
                                     std::span<const Element> messages)>
      draw;
};

// Seeds enumerate GF(q)^R directly.
RandomnessModel UniformRandomness(const Scheme& scheme);

// Calls fn on every vector of GF(q)^width in lexicographic order. Throws
// std::length_error beyond 2^24 vectors.
void ForEachRealization(const BinaryField& field, size_t width,
                        const std::function<void(std::span<const Element>)>& fn);

inline constexpr uint64_t kMaxEnumeration = uint64_t{1} << 24;

CheckRecord CheckCardinality(const Scheme& scheme);
CheckRecord CheckDeterministicAnswers(const Scheme& scheme);
// Enumerates messages x seeds and requires the joint of (W, S) to factorize
// with uniform messages.
CheckRecord CheckRandomnessIndependence(const Scheme& scheme,
                                        const RandomnessModel& model);
CheckRecord CheckRandomnessIndependence(const Scheme& scheme);
// H(W_theta | A_a, B_b) = 0 for every pair, by enumeration.
CheckRecord CheckReliability(const Scheme& scheme, const DecodeTable& table);
// I(W_{not theta}; A_a, B_b) = 0 for every pair, by enumeration.
CheckRecord CheckDatabasePrivacy(const Scheme& scheme, const DecodeTable& table);
// Every row and column of the theta table hits each message equally often.
CheckRecord CheckUserPrivacy(const Scheme& scheme, const DecodeTable& table);
// Counting form of the uniform-theta law on a raw table (0-based entries; an
// entry >= K counts as undefined).
CheckRecord CheckThetaUniformity(const std::vector<std::vector<size_t>>& theta,
                                 size_t num_messages);

// Capacity for K in {2, 3, 4}; nullopt where it is unknown.
std::optional<Rational> CapacityThreshold(size_t num_messages);
// Minimal common randomness in units of L, for K in {2, 3, 4}.
std::optional<Rational> MinimumRandomness(size_t num_messages);

// H(W_1:K, S) in q-ary symbols under uniform, independent inputs.
Rational MeasureInputEntropy(const Scheme& scheme);

RateAudit AuditRate(const Scheme& scheme, size_t blocks = 1);
RandomnessAudit AuditRandomness(const Scheme& scheme);

VerificationReport Verify(const Scheme& scheme, size_t blocks = 1);

}  // namespace rspir
