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

#include "rspir/entropy.h"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace rspir {

std::string FormatRational(const Rational& r) {
  if (r.denominator() == 1) return fmt::format("{}", r.numerator());
  return fmt::format("{}/{}", r.numerator(), r.denominator());
}

void JointDistribution::Add(std::span<const Element> outcome, uint64_t weight) {
  if (outcome.size() != arity_) {
    throw std::invalid_argument(fmt::format(
        "outcome of arity {} added to distribution of arity {}",
        outcome.size(), arity_));
  }
  if (weight == 0) return;
  counts_[std::vector<Element>(outcome.begin(), outcome.end())] += weight;
  total_ += weight;
}

Rational JointDistribution::Probability(std::span<const Element> outcome) const {
  auto it = counts_.find(std::vector<Element>(outcome.begin(), outcome.end()));
  if (it == counts_.end() || total_ == 0) return Rational(0);
  return Rational(static_cast<int64_t>(it->second),
                  static_cast<int64_t>(total_));
}

std::vector<std::pair<std::vector<Element>, Rational>>
JointDistribution::Outcomes() const {
  std::vector<std::pair<std::vector<Element>, Rational>> out;
  out.reserve(counts_.size());
  for (const auto& [value, count] : counts_) {
    out.emplace_back(value, Rational(static_cast<int64_t>(count),
                                     static_cast<int64_t>(total_)));
  }
  return out;
}

JointDistribution JointDistribution::Marginal(
    std::span<const size_t> coords) const {
  JointDistribution out(coords.size());
  std::vector<Element> projected(coords.size());
  for (const auto& [value, count] : counts_) {
    for (size_t i = 0; i < coords.size(); ++i) projected[i] = value.at(coords[i]);
    out.Add(projected, count);
  }
  return out;
}

JointDistribution JointDistribution::Marginal(size_t begin, size_t end) const {
  std::vector<size_t> coords(end - begin);
  std::iota(coords.begin(), coords.end(), begin);
  return Marginal(coords);
}

bool JointDistribution::IsValid() const {
  if (total_ == 0) return false;
  uint64_t sum = 0;
  for (const auto& [value, count] : counts_) {
    if (count == 0) return false;
    sum += count;
  }
  return sum == total_;
}

InfoValue Entropy(const JointDistribution& d, InfoUnit unit) {
  InfoValue out;
  Rational exact(0);
  bool is_exact = true;
  long double approx = 0.0L;
  const uint64_t total = d.total();
  for (const auto& [value, count] : d.counts()) {
    const long double p =
        static_cast<long double>(count) / static_cast<long double>(total);
    approx -= p * std::log2(p);
    if (is_exact && total % count == 0 && std::has_single_bit(total / count)) {
      const int64_t bits = std::countr_zero(total / count);
      exact += Rational(static_cast<int64_t>(count),
                        static_cast<int64_t>(total)) *
               bits;
    } else {
      is_exact = false;
    }
  }
  if (is_exact) {
    out.exact = exact / static_cast<int64_t>(unit.log2_base);
    out.value = boost::rational_cast<double>(*out.exact);
  } else {
    out.value = static_cast<double>(approx / unit.log2_base);
  }
  return out;
}

bool Factorizes(const JointDistribution& d, size_t split) {
  const JointDistribution x = d.Marginal(0, split);
  const JointDistribution y = d.Marginal(split, d.arity());
  if (d.support_size() != x.support_size() * y.support_size()) return false;
  const unsigned __int128 total = d.total();
  for (const auto& [value, count] : d.counts()) {
    std::span<const Element> v(value);
    const uint64_t cx = x.counts().at({v.begin(), v.begin() + split});
    const uint64_t cy = y.counts().at({v.begin() + split, v.end()});
    if (static_cast<unsigned __int128>(count) * total !=
        static_cast<unsigned __int128>(cx) * cy) {
      return false;
    }
  }
  return true;
}

namespace {

InfoValue Combine(const InfoValue& a, const InfoValue& b, const InfoValue& c) {
  // a + b - c
  InfoValue out;
  if (a.exact && b.exact && c.exact) {
    out.exact = *a.exact + *b.exact - *c.exact;
    out.value = boost::rational_cast<double>(*out.exact);
  } else {
    out.value = a.value + b.value - c.value;
  }
  return out;
}

}  // namespace

InfoValue ConditionalEntropy(const JointDistribution& d, size_t split,
                             InfoUnit unit) {
  // H(X, Y) - H(X)
  return Combine(Entropy(d, unit), InfoValue{Rational(0), 0.0},
                 Entropy(d.Marginal(0, split), unit));
}

InfoValue MutualInformation(const JointDistribution& d, size_t split,
                            InfoUnit unit) {
  if (Factorizes(d, split)) return {Rational(0), 0.0};
  return Combine(Entropy(d.Marginal(0, split), unit),
                 Entropy(d.Marginal(split, d.arity()), unit), Entropy(d, unit));
}

}  // namespace rspir
