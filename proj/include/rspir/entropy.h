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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "rspir/field.h"

namespace rspir {

using Rational = boost::rational<int64_t>;

std::string FormatRational(const Rational& r);

// Logarithm base as a power of two: bits are base 2^1, q-ary units over
// GF(2^m) are base 2^m.
struct InfoUnit {
  int log2_base = 1;

  static InfoUnit Bits() { return {1}; }
  static InfoUnit Qary(const BinaryField& field) { return {field.degree()}; }
};

// An information quantity. exact is set whenever every probability involved
// is a power of 1/2, in which case the logarithms are integers.
struct InfoValue {
  std::optional<Rational> exact;
  double value = 0.0;

  bool IsExactZero() const { return exact && *exact == Rational(0); }
};

// Distribution over tuples of field elements with integer weights; the
// probability of an outcome is weight / total.
class JointDistribution {
 public:
  explicit JointDistribution(size_t arity) : arity_(arity) {}

  void Add(std::span<const Element> outcome, uint64_t weight = 1);

  size_t arity() const { return arity_; }
  uint64_t total() const { return total_; }
  size_t support_size() const { return counts_.size(); }
  const std::map<std::vector<Element>, uint64_t>& counts() const {
    return counts_;
  }

  Rational Probability(std::span<const Element> outcome) const;
  std::vector<std::pair<std::vector<Element>, Rational>> Outcomes() const;

  // Distribution of the listed coordinates.
  JointDistribution Marginal(std::span<const size_t> coords) const;
  // Coordinates [begin, end).
  JointDistribution Marginal(size_t begin, size_t end) const;

  // Probabilities sum to one and no outcome has zero weight.
  bool IsValid() const;

  bool operator==(const JointDistribution&) const = default;

 private:
  size_t arity_;
  uint64_t total_ = 0;
  std::map<std::vector<Element>, uint64_t> counts_;
};

InfoValue Entropy(const JointDistribution& d, InfoUnit unit = InfoUnit::Bits());

// X is coordinates [0, split), Y is [split, arity).
//
// True iff P(x, y) = P(x) P(y) for every x and y, decided on integer counts.
bool Factorizes(const JointDistribution& d, size_t split);

// H(Y | X).
InfoValue ConditionalEntropy(const JointDistribution& d, size_t split,
                             InfoUnit unit = InfoUnit::Bits());

// I(X; Y) = H(X) + H(Y) - H(X, Y); exactly zero when the joint factorizes.
InfoValue MutualInformation(const JointDistribution& d, size_t split,
                            InfoUnit unit = InfoUnit::Bits());

}  // namespace rspir
