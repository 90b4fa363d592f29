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

#include "rspir/scheme.h"

#include <array>
#include <stdexcept>

#include <fmt/format.h>

namespace rspir {

namespace {

constexpr std::array<std::pair<SchemeVariant, std::string_view>, 5>
    kVariantNames = {{
        {SchemeVariant::kRotationRandomness, "rotation-randomness"},
        {SchemeVariant::kRotationMessages, "rotation-messages"},
        {SchemeVariant::kPairwiseSum, "pairwise-sum"},
        {SchemeVariant::kK4Special, "k4-special"},
        {SchemeVariant::kCustom, "custom"},
    }};

void RequireMessageCount(size_t num_messages) {
  if (num_messages < 2) {
    throw std::invalid_argument(
        fmt::format("scheme needs K >= 2 messages, got {}", num_messages));
  }
}

Scheme EmptyScheme(SchemeVariant variant, size_t k, size_t l, size_t r,
                   const BinaryField& field) {
  Scheme s;
  s.variant = variant;
  s.num_messages = k;
  s.message_length = l;
  s.randomness_count = r;
  s.field = field;
  return s;
}

// Parses a sum of named symbols such as "a1+c2+S3". Messages are named by
// letter (a = W_1, b = W_2, ...) and 1-based symbol position; randomness as
// S<r>.
std::vector<Element> SymbolSum(const Scheme& s, std::string_view expr) {
  std::vector<Element> row(s.InputWidth(), 0);
  size_t pos = 0;
  while (pos < expr.size()) {
    size_t end = expr.find('+', pos);
    if (end == std::string_view::npos) end = expr.size();
    std::string_view term = expr.substr(pos, end - pos);
    const size_t ordinal = std::stoul(std::string(term.substr(1))) - 1;
    size_t coord;
    if (term[0] == 'S') {
      coord = s.RandomnessCoord(ordinal);
    } else {
      coord = s.MessageCoord(static_cast<size_t>(term[0] - 'a'), ordinal);
    }
    row[coord] ^= 1;
    pos = end + 1;
  }
  return row;
}

LinearAnswer AnswerFromSums(const Scheme& s, size_t index,
                            std::initializer_list<std::string_view> symbols) {
  LinearAnswer answer{index, FieldMatrix(0, s.InputWidth())};
  for (std::string_view expr : symbols) {
    answer.map.AppendRow(SymbolSum(s, expr));
  }
  return answer;
}

}  // namespace

std::string_view VariantName(SchemeVariant variant) {
  for (const auto& [v, name] : kVariantNames) {
    if (v == variant) return name;
  }
  return "custom";
}

std::optional<SchemeVariant> ParseVariant(std::string_view name) {
  for (const auto& [v, n] : kVariantNames) {
    if (n == name) return v;
  }
  if (name == "pairwise") return SchemeVariant::kPairwiseSum;
  if (name == "k4") return SchemeVariant::kK4Special;
  return std::nullopt;
}

Scheme BuildRotationScheme(size_t num_messages, SchemeVariant variant,
                           const BinaryField& field) {
  RequireMessageCount(num_messages);
  if (variant != SchemeVariant::kRotationRandomness &&
      variant != SchemeVariant::kRotationMessages) {
    throw std::invalid_argument(
        fmt::format("{} is not a rotation variant", VariantName(variant)));
  }
  const size_t k = num_messages;
  Scheme s = EmptyScheme(variant, k, 1, k, field);
  for (size_t a = 0; a < k; ++a) {
    LinearAnswer answer{a, FieldMatrix(k, s.InputWidth())};
    for (size_t j = 0; j < k; ++j) {
      const size_t shifted = (j + a) % k;
      if (variant == SchemeVariant::kRotationRandomness) {
        answer.map.At(j, s.MessageCoord(j, 0)) = 1;
        answer.map.At(j, s.RandomnessCoord(shifted)) = 1;
      } else {
        answer.map.At(j, s.MessageCoord(shifted, 0)) = 1;
        answer.map.At(j, s.RandomnessCoord(j)) = 1;
      }
    }
    s.db1.push_back(std::move(answer));
  }
  for (size_t b = 0; b < k; ++b) {
    LinearAnswer answer{b, FieldMatrix(1, s.InputWidth())};
    answer.map.At(0, s.RandomnessCoord(b)) = 1;
    s.db2.push_back(std::move(answer));
  }
  return s;
}

Scheme BuildPairwiseScheme(size_t num_messages, const BinaryField& field) {
  RequireMessageCount(num_messages);
  const size_t k = num_messages;
  Scheme s = EmptyScheme(SchemeVariant::kPairwiseSum, k, 1, k - 1, field);

  LinearAnswer first{0, FieldMatrix(k - 1, s.InputWidth())};
  for (size_t j = 0; j + 1 < k; ++j) first.map.At(j, s.RandomnessCoord(j)) = 1;
  s.db1.push_back(std::move(first));
  for (size_t a = 1; a < k; ++a) {
    // Component j carries W_j + W_{j+a} (indices mod K) masked by S_j.
    LinearAnswer answer{a, FieldMatrix(k - 1, s.InputWidth())};
    for (size_t j = 0; j + 1 < k; ++j) {
      answer.map.At(j, s.MessageCoord(j, 0)) ^= 1;
      answer.map.At(j, s.MessageCoord((j + a) % k, 0)) ^= 1;
      answer.map.At(j, s.RandomnessCoord(j)) = 1;
    }
    s.db1.push_back(std::move(answer));
  }

  for (size_t b = 0; b + 1 < k; ++b) {
    LinearAnswer answer{b, FieldMatrix(1, s.InputWidth())};
    answer.map.At(0, s.MessageCoord(b, 0)) = 1;
    answer.map.At(0, s.RandomnessCoord(b)) = 1;
    s.db2.push_back(std::move(answer));
  }
  LinearAnswer last{k - 1, FieldMatrix(1, s.InputWidth())};
  last.map.At(0, s.MessageCoord(k - 1, 0)) = 1;
  for (size_t r = 0; r + 1 < k; ++r) last.map.At(0, s.RandomnessCoord(r)) = 1;
  s.db2.push_back(std::move(last));
  return s;
}

Scheme BuildK4Scheme(const BinaryField& field) {
  Scheme s = EmptyScheme(SchemeVariant::kK4Special, 4, 2, 4, field);
  s.db1 = {
      AnswerFromSums(s, 0, {"S1", "S2", "S3"}),
      AnswerFromSums(s, 1, {"a1+c1+c2+S1", "b2+d1+S1+S3", "c2+S4"}),
      AnswerFromSums(s, 2, {"a1+d2+S1+S4", "a2+d1+d2+S2", "b1+c2+S2+S3"}),
      AnswerFromSums(s, 3,
                     {"b1+S4", "a1+a2+b1+b2+S1+S2", "c1+d2+S1+S2+S3"}),
  };
  s.db2 = {
      AnswerFromSums(s, 0, {"a1+S1", "a2+S2", "S4"}),
      AnswerFromSums(s, 1,
                     {"b1+b2+S1+S2", "b1+S2+S3", "a1+c1+d2+S1+S4"}),
      AnswerFromSums(s, 2, {"d1+d2+S2", "b1+c2+S4", "d1+S1+S3"}),
      AnswerFromSums(s, 3,
                     {"c2+S2+S3", "c1+c2+S1", "a1+a2+b2+c1+d1+S3+S4"}),
  };
  return s;
}

Scheme BuildScheme(SchemeVariant variant, size_t num_messages,
                   const BinaryField& field) {
  switch (variant) {
    case SchemeVariant::kRotationRandomness:
    case SchemeVariant::kRotationMessages:
      return BuildRotationScheme(num_messages, variant, field);
    case SchemeVariant::kPairwiseSum:
      return BuildPairwiseScheme(num_messages, field);
    case SchemeVariant::kK4Special:
      return BuildK4Scheme(field);
    case SchemeVariant::kCustom:
      break;
  }
  throw std::invalid_argument("custom schemes have no builder");
}

std::vector<ShapeViolation> ValidateShape(const Scheme& scheme) {
  std::vector<ShapeViolation> out;
  const size_t k = scheme.num_messages;
  if (k < 1) {
    out.push_back({ViolationKind::kCardinality, 0, 0, "K must be positive"});
    return out;
  }
  if (scheme.message_length < 1) {
    out.push_back({ViolationKind::kDimension, 0, 0, "L must be positive"});
  }
  for (int db : {1, 2}) {
    const auto& answers = scheme.AnswerSet(db);
    if (answers.empty() || answers.size() % k != 0) {
      out.push_back({ViolationKind::kCardinality, db, 0,
                     fmt::format("database {} has {} answers, not a positive "
                                 "multiple of K = {}",
                                 db, answers.size(), k)});
    }
    for (size_t i = 0; i < answers.size(); ++i) {
      const LinearAnswer& ans = answers[i];
      if (ans.index != i) {
        out.push_back({ViolationKind::kIndex, db, i,
                       fmt::format("answer at position {} carries index {}",
                                   i + 1, ans.index + 1)});
      }
      if (ans.map.cols() != scheme.InputWidth()) {
        out.push_back(
            {ViolationKind::kDimension, db, i,
             fmt::format("answer {} of database {} has {} columns, expected "
                         "K*L+R = {}",
                         i + 1, db, ans.map.cols(), scheme.InputWidth())});
      }
      if (!ans.map.AllBelow(scheme.field.order())) {
        out.push_back({ViolationKind::kFieldRange, db, i,
                       fmt::format("answer {} of database {} has a coefficient "
                                   ">= q = {}",
                                   i + 1, db, scheme.field.order())});
      }
    }
  }
  return out;
}

}  // namespace rspir
