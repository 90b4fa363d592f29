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

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace rspir {

namespace {

CheckRecord Pass(std::string_view name) { return {std::string(name), true, ""}; }

CheckRecord Fail(std::string_view name, std::string witness) {
  return {std::string(name), false, std::move(witness)};
}

std::string PairLabel(size_t a, size_t b) {
  return fmt::format("pair=(A_{},B_{})", a + 1, b + 1);
}

std::string FormatInfo(const InfoValue& v, std::string_view unit) {
  if (v.exact) return fmt::format("{} {}", FormatRational(*v.exact), unit);
  return fmt::format("{:.6f} {}", v.value, unit);
}

uint64_t CeilLog2(uint64_t x) {
  return x <= 1 ? 0 : std::bit_width(x - 1);
}

// Joint distribution of (W_1..W_K || A_a || B_b) over uniform (W, S).
JointDistribution EnumeratePair(const Scheme& scheme, const FieldMatrix& pair) {
  const size_t messages = scheme.num_messages * scheme.message_length;
  JointDistribution joint(messages + pair.rows());
  std::vector<Element> outcome(messages + pair.rows());
  ForEachRealization(scheme.field, scheme.InputWidth(),
                     [&](std::span<const Element> v) {
                       std::copy(v.begin(), v.begin() + messages,
                                 outcome.begin());
                       auto obs = Apply(scheme.field, pair, v);
                       std::copy(obs.begin(), obs.end(),
                                 outcome.begin() + messages);
                       joint.Add(outcome);
                     });
  return joint;
}

std::vector<size_t> ObservationCoords(const Scheme& scheme, size_t obs_len) {
  std::vector<size_t> coords(obs_len);
  std::iota(coords.begin(), coords.end(),
            scheme.num_messages * scheme.message_length);
  return coords;
}

std::vector<size_t> MessageCoords(const Scheme& scheme, size_t k) {
  std::vector<size_t> coords;
  for (size_t l = 0; l < scheme.message_length; ++l) {
    coords.push_back(scheme.MessageCoord(k, l));
  }
  return coords;
}

// (O || W_k), split at |O|.
JointDistribution ObservationThenMessage(const Scheme& scheme,
                                         const JointDistribution& joint,
                                         size_t obs_len, size_t k) {
  auto coords = ObservationCoords(scheme, obs_len);
  for (size_t c : MessageCoords(scheme, k)) coords.push_back(c);
  return joint.Marginal(coords);
}

bool Determined(const JointDistribution& obs_then_msg, size_t obs_len) {
  return obs_then_msg.support_size() ==
         obs_then_msg.Marginal(0, obs_len).support_size();
}

}  // namespace

void ForEachRealization(
    const BinaryField& field, size_t width,
    const std::function<void(std::span<const Element>)>& fn) {
  const uint64_t bits = static_cast<uint64_t>(field.degree()) * width;
  if (bits > static_cast<uint64_t>(std::countr_zero(kMaxEnumeration))) {
    throw std::length_error(fmt::format(
        "enumeration of GF(2^{})^{} exceeds the 2^24 realization limit",
        field.degree(), width));
  }
  const Element q = field.order();
  std::vector<Element> v(width, 0);
  while (true) {
    fn(v);
    size_t i = width;
    while (i > 0) {
      --i;
      if (++v[i] < q) break;
      v[i] = 0;
      if (i == 0) return;
    }
    if (width == 0) return;
  }
}

RandomnessModel UniformRandomness(const Scheme& scheme) {
  const Element q = scheme.field.order();
  const size_t r_count = scheme.randomness_count;
  uint64_t seeds = 1;
  for (size_t i = 0; i < r_count; ++i) seeds *= q;
  return {seeds, [q, r_count](uint64_t seed, std::span<const Element>) {
            std::vector<Element> s(r_count);
            for (size_t i = r_count; i > 0; --i) {
              s[i - 1] = static_cast<Element>(seed % q);
              seed /= q;
            }
            return s;
          }};
}

CheckRecord CheckCardinality(const Scheme& scheme) {
  for (const ShapeViolation& v : ValidateShape(scheme)) {
    if (v.kind == ViolationKind::kCardinality) {
      return Fail(checks::kCardinality, v.detail);
    }
  }
  return Pass(checks::kCardinality);
}

CheckRecord CheckDeterministicAnswers(const Scheme& scheme) {
  // Every answer is a linear map of (W, S): determinism reduces to each map
  // being well formed over the scheme's input and field.
  for (const ShapeViolation& v : ValidateShape(scheme)) {
    if (v.kind != ViolationKind::kCardinality) {
      return Fail(checks::kDeterministicAnswers, v.detail);
    }
  }
  return Pass(checks::kDeterministicAnswers);
}

CheckRecord CheckRandomnessIndependence(const Scheme& scheme,
                                        const RandomnessModel& model) {
  const size_t messages = scheme.num_messages * scheme.message_length;
  const size_t r_count = scheme.randomness_count;
  if (model.seed_count == 0 || !model.draw) {
    return Fail(checks::kRandomnessIndependence, "empty randomness model");
  }
  JointDistribution joint(messages + r_count);
  std::vector<Element> outcome(messages + r_count);
  std::string bad_draw;
  ForEachRealization(scheme.field, messages, [&](std::span<const Element> w) {
    std::copy(w.begin(), w.end(), outcome.begin());
    for (uint64_t seed = 0; seed < model.seed_count; ++seed) {
      std::vector<Element> s = model.draw(seed, w);
      if (s.size() != r_count ||
          !std::all_of(s.begin(), s.end(),
                       [&](Element e) { return scheme.field.Contains(e); })) {
        if (bad_draw.empty()) {
          bad_draw = fmt::format("seed {} drew {} symbols, expected {} field "
                                 "elements",
                                 seed, s.size(), r_count);
        }
        return;
      }
      std::copy(s.begin(), s.end(), outcome.begin() + messages);
      joint.Add(outcome);
    }
  });
  if (!bad_draw.empty()) return Fail(checks::kRandomnessIndependence, bad_draw);

  const InfoUnit unit = InfoUnit::Qary(scheme.field);
  const InfoValue h_messages = Entropy(joint.Marginal(0, messages), unit);
  if (!h_messages.exact ||
      *h_messages.exact != Rational(static_cast<int64_t>(messages))) {
    return Fail(checks::kRandomnessIndependence,
                fmt::format("H(W_1:K) = {}, expected K*L = {}",
                            FormatInfo(h_messages, "symbols"), messages));
  }
  if (!Factorizes(joint, messages)) {
    return Fail(checks::kRandomnessIndependence,
                fmt::format("I(W_1:K;S) = {}",
                            FormatInfo(MutualInformation(joint, messages,
                                                         InfoUnit::Bits()),
                                       "bits")));
  }
  return Pass(checks::kRandomnessIndependence);
}

CheckRecord CheckRandomnessIndependence(const Scheme& scheme) {
  return CheckRandomnessIndependence(scheme, UniformRandomness(scheme));
}

CheckRecord CheckReliability(const Scheme& scheme, const DecodeTable& table) {
  const InfoUnit unit = InfoUnit::Qary(scheme.field);
  for (size_t a = 0; a < table.m1(); ++a) {
    for (size_t b = 0; b < table.m2(); ++b) {
      const FieldMatrix pair = PairMap(scheme, a, b);
      const JointDistribution joint = EnumeratePair(scheme, pair);
      const size_t obs_len = pair.rows();
      const PairDecoding& cell = table.At(a, b);
      if (cell.status == PairStatus::kNotReliable) {
        for (size_t k = 0; k < scheme.num_messages; ++k) {
          if (Determined(ObservationThenMessage(scheme, joint, obs_len, k),
                         obs_len)) {
            return Fail(checks::kReliability,
                        fmt::format("{} decode table misses W_{}",
                                    PairLabel(a, b), k + 1));
          }
        }
        return Fail(checks::kReliability,
                    fmt::format("{} determines no message", PairLabel(a, b)));
      }
      const JointDistribution obs_msg =
          ObservationThenMessage(scheme, joint, obs_len, cell.theta);
      if (!Determined(obs_msg, obs_len)) {
        return Fail(checks::kReliability,
                    fmt::format("{} H(W_{}|A,B) = {}", PairLabel(a, b),
                                cell.theta + 1,
                                FormatInfo(ConditionalEntropy(obs_msg, obs_len,
                                                              unit),
                                           "symbols")));
      }
    }
  }
  return Pass(checks::kReliability);
}

CheckRecord CheckDatabasePrivacy(const Scheme& scheme,
                                 const DecodeTable& table) {
  for (size_t a = 0; a < table.m1(); ++a) {
    for (size_t b = 0; b < table.m2(); ++b) {
      const PairDecoding& cell = table.At(a, b);
      // Without a decoded message there is no complement to protect; the
      // reliability check reports the pair.
      if (cell.status == PairStatus::kNotReliable) continue;
      const FieldMatrix pair = PairMap(scheme, a, b);
      const JointDistribution joint = EnumeratePair(scheme, pair);
      std::vector<size_t> coords;
      for (size_t k = 0; k < scheme.num_messages; ++k) {
        if (k == cell.theta) continue;
        for (size_t c : MessageCoords(scheme, k)) coords.push_back(c);
      }
      const size_t split = coords.size();
      for (size_t c : ObservationCoords(scheme, pair.rows())) {
        coords.push_back(c);
      }
      const JointDistribution others_obs = joint.Marginal(coords);
      if (!Factorizes(others_obs, split)) {
        return Fail(
            checks::kDatabasePrivacy,
            fmt::format("{} I(W_not{};A,B) = {}", PairLabel(a, b),
                        cell.theta + 1,
                        FormatInfo(MutualInformation(
                                       others_obs, split,
                                       InfoUnit::Qary(scheme.field)),
                                   "symbols")));
      }
    }
  }
  return Pass(checks::kDatabasePrivacy);
}

CheckRecord CheckThetaUniformity(const std::vector<std::vector<size_t>>& theta,
                                 size_t num_messages) {
  const size_t m1 = theta.size();
  const size_t m2 = m1 == 0 ? 0 : theta[0].size();
  if (m1 == 0 || m2 == 0 || num_messages == 0) {
    return Fail(checks::kUserPrivacy, "empty theta table");
  }
  for (size_t a = 0; a < m1; ++a) {
    if (theta[a].size() != m2) {
      return Fail(checks::kUserPrivacy,
                  fmt::format("row A_{} has {} entries, expected {}", a + 1,
                              theta[a].size(), m2));
    }
    for (size_t b = 0; b < m2; ++b) {
      if (theta[a][b] >= num_messages) {
        return Fail(checks::kUserPrivacy,
                    fmt::format("{} has no decoded message", PairLabel(a, b)));
      }
    }
  }
  auto describe = [](const std::vector<size_t>& counts) {
    std::vector<std::string> parts;
    for (size_t k = 0; k < counts.size(); ++k) {
      parts.push_back(fmt::format("W_{}:{}", k + 1, counts[k]));
    }
    return fmt::format("{}", fmt::join(parts, ","));
  };
  // Database 1 fixes a and the user's message varies with b.
  for (size_t a = 0; a < m1; ++a) {
    std::vector<size_t> counts(num_messages, 0);
    for (size_t b = 0; b < m2; ++b) ++counts[theta[a][b]];
    for (size_t c : counts) {
      if (c * num_messages != m2) {
        return Fail(checks::kUserPrivacy,
                    fmt::format("db=1 answer=A_{} theta counts {}", a + 1,
                                describe(counts)));
      }
    }
  }
  for (size_t b = 0; b < m2; ++b) {
    std::vector<size_t> counts(num_messages, 0);
    for (size_t a = 0; a < m1; ++a) ++counts[theta[a][b]];
    for (size_t c : counts) {
      if (c * num_messages != m1) {
        return Fail(checks::kUserPrivacy,
                    fmt::format("db=2 answer=B_{} theta counts {}", b + 1,
                                describe(counts)));
      }
    }
  }
  return Pass(checks::kUserPrivacy);
}

CheckRecord CheckUserPrivacy(const Scheme& scheme, const DecodeTable& table) {
  return CheckThetaUniformity(table.ThetaGrid(scheme.num_messages),
                              scheme.num_messages);
}

std::optional<Rational> CapacityThreshold(size_t num_messages) {
  switch (num_messages) {
    case 2:
      return Rational(1, 2);
    case 3:
    case 4:
      return Rational(1, 3);
    default:
      return std::nullopt;
  }
}

std::optional<Rational> MinimumRandomness(size_t num_messages) {
  switch (num_messages) {
    case 2:
      return Rational(1);
    case 3:
    case 4:
      return Rational(2);
    default:
      return std::nullopt;
  }
}

Rational MeasureInputEntropy(const Scheme& scheme) {
  const size_t width = scheme.InputWidth();
  JointDistribution joint(width);
  ForEachRealization(scheme.field, width,
                     [&](std::span<const Element> v) { joint.Add(v); });
  return *Entropy(joint, InfoUnit::Qary(scheme.field)).exact;
}

RateAudit AuditRate(const Scheme& scheme, size_t blocks) {
  RateAudit out;
  out.message_length = scheme.message_length;
  out.blocks = std::max<size_t>(blocks, 1);
  size_t max1 = 0;
  size_t max2 = 0;
  for (const auto& ans : scheme.db1) max1 = std::max(max1, ans.length());
  for (const auto& ans : scheme.db2) max2 = std::max(max2, ans.length());
  out.download_cost = max1 + max2;
  out.index_bits = CeilLog2(scheme.db1.size()) + CeilLog2(scheme.db2.size());
  const auto l = static_cast<int64_t>(scheme.message_length);
  const auto d = static_cast<int64_t>(out.download_cost);
  const auto n = static_cast<int64_t>(out.blocks);
  out.rate = d == 0 ? Rational(0) : Rational(l, d);
  const Rational cost =
      Rational(d * n) + Rational(static_cast<int64_t>(out.index_bits),
                                 static_cast<int64_t>(scheme.field.degree()));
  out.finite_rate = cost == Rational(0) ? Rational(0) : Rational(l * n) / cost;
  out.capacity = CapacityThreshold(scheme.num_messages);
  if (out.capacity) {
    out.gap = *out.capacity - out.rate;
    out.meets_capacity = *out.gap == Rational(0);
  }
  return out;
}

RandomnessAudit AuditRandomness(const Scheme& scheme) {
  RandomnessAudit out;
  const RandomnessModel model = UniformRandomness(scheme);
  JointDistribution dist(scheme.randomness_count);
  for (uint64_t seed = 0; seed < model.seed_count; ++seed) {
    dist.Add(model.draw(seed, {}));
  }
  // A scheme without randomness has a single (empty) outcome: H = 0.
  out.entropy = *Entropy(dist, InfoUnit::Qary(scheme.field)).exact;
  out.per_message_length =
      out.entropy / static_cast<int64_t>(scheme.message_length);
  out.minimum = MinimumRandomness(scheme.num_messages);
  if (out.minimum) {
    out.gap = out.per_message_length - *out.minimum;
    out.meets_minimum = *out.gap == Rational(0);
  }
  return out;
}

VerificationReport Verify(const Scheme& scheme, size_t blocks) {
  VerificationReport report;
  report.scheme_summary = fmt::format(
      "{} K={} L={} R={} GF(2^{}) M1={} M2={}", VariantName(scheme.variant),
      scheme.num_messages, scheme.message_length, scheme.randomness_count,
      scheme.field.degree(), scheme.db1.size(), scheme.db2.size());
  report.checks.push_back(CheckCardinality(scheme));
  report.checks.push_back(CheckDeterministicAnswers(scheme));
  if (!report.checks.back().passed) {
    for (auto name : {checks::kRandomnessIndependence, checks::kReliability,
                      checks::kDatabasePrivacy, checks::kUserPrivacy}) {
      report.checks.push_back(Fail(name, "not evaluated: malformed answers"));
    }
  } else {
    const DecodeTable table = DeriveDecodeTable(scheme);
    report.theta = table.ThetaGrid(scheme.num_messages);
    report.checks.push_back(CheckRandomnessIndependence(scheme));
    report.checks.push_back(CheckReliability(scheme, table));
    report.checks.push_back(CheckDatabasePrivacy(scheme, table));
    report.checks.push_back(CheckUserPrivacy(scheme, table));
  }
  report.rate = AuditRate(scheme, blocks);
  report.randomness = AuditRandomness(scheme);
  report.joint_entropy = MeasureInputEntropy(scheme);
  return report;
}

bool VerificationReport::AllPassed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.passed; });
}

const CheckRecord* VerificationReport::Find(std::string_view name) const {
  for (const CheckRecord& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string VerificationReport::ToText() const {
  std::string out = fmt::format("scheme: {}\n", scheme_summary);
  if (!theta.empty()) {
    out += "decoded message per answer pair (rows A_a, columns B_b):\n";
    for (size_t a = 0; a < theta.size(); ++a) {
      std::vector<std::string> cells;
      for (size_t t : theta[a]) cells.push_back(fmt::format("W_{}", t + 1));
      out += fmt::format("  A_{:<3} {}\n", a + 1, fmt::join(cells, " "));
    }
  }
  out += "checks:\n";
  for (const CheckRecord& c : checks) {
    out += fmt::format("  {:<24} {}", c.name, c.passed ? "PASS" : "FAIL");
    if (!c.witness.empty()) out += "  " + c.witness;
    out += '\n';
  }
  out += "measures:\n";
  out += fmt::format("  download cost D       {} symbols per block\n",
                     rate.download_cost);
  out += fmt::format("  rate L/D              {}", FormatRational(rate.rate));
  if (rate.capacity) {
    out += fmt::format("  (capacity {}, {})", FormatRational(*rate.capacity),
                       rate.meets_capacity       ? "meets"
                       : *rate.gap > Rational(0) ? "below"
                                                 : "above");
  } else {
    out += "  (capacity unknown for this K)";
  }
  out += '\n';
  out += fmt::format("  finite-block rate     {} over {} block(s), {} index "
                     "bit(s)\n",
                     FormatRational(rate.finite_rate), rate.blocks,
                     rate.index_bits);
  out += fmt::format("  H(S)                  {} symbols per block = {} L",
                     FormatRational(randomness.entropy),
                     FormatRational(randomness.per_message_length));
  if (randomness.minimum) {
    out += fmt::format("  (minimum {} L, {})",
                       FormatRational(*randomness.minimum),
                       randomness.meets_minimum       ? "meets"
                       : *randomness.gap > Rational(0) ? "above"
                                                       : "below");
  }
  out += '\n';
  out += fmt::format("  H(W,S)                {} symbols\n",
                     FormatRational(joint_entropy));
  out += fmt::format("result: {}\n", AllPassed() ? "PASS" : "FAIL");
  return out;
}

std::string VerificationReport::ToLines() const {
  std::string out;
  for (const CheckRecord& c : checks) {
    out += fmt::format("CHECK {} {}", c.name, c.passed ? "PASS" : "FAIL");
    if (!c.witness.empty()) out += " " + c.witness;
    out += '\n';
  }
  auto measure = [&out](std::string_view name, const Rational& v) {
    out += fmt::format("MEASURE {} {}\n", name, FormatRational(v));
  };
  measure("download_cost", Rational(static_cast<int64_t>(rate.download_cost)));
  measure("rate", rate.rate);
  if (rate.capacity) measure("capacity", *rate.capacity);
  if (rate.gap) measure("capacity_gap", *rate.gap);
  measure("index_bits", Rational(static_cast<int64_t>(rate.index_bits)));
  measure("blocks", Rational(static_cast<int64_t>(rate.blocks)));
  measure("finite_rate", rate.finite_rate);
  measure("randomness_entropy", randomness.entropy);
  measure("randomness_per_L", randomness.per_message_length);
  if (randomness.minimum) measure("randomness_minimum", *randomness.minimum);
  if (randomness.gap) measure("randomness_gap", *randomness.gap);
  measure("joint_entropy", joint_entropy);
  return out;
}

}  // namespace rspir
