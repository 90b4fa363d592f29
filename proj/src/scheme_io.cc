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

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "rspir/scheme.h"

namespace rspir {

namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) break;
    size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

uint64_t ParseNumber(std::string_view token, size_t line_no) {
  uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw SchemeParseError(line_no,
                           fmt::format("expected a decimal integer, got '{}'",
                                       token));
  }
  return value;
}

struct Line {
  size_t number;
  std::string_view text;
};

}  // namespace

SchemeParseError::SchemeParseError(size_t line, const std::string& what)
    : std::runtime_error(fmt::format("line {}: {}", line, what)), line_(line) {}

Scheme ParseScheme(std::string_view text) {
  std::vector<Line> lines;
  std::optional<SchemeVariant> variant;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++line_no;
    pos = end + 1;
    if (raw.empty() || raw.find_first_not_of(" \t") == std::string_view::npos) {
      continue;
    }
    if (raw.front() == '#') {
      auto fields = SplitFields(raw.substr(1));
      if (fields.size() == 2 && fields[0] == "variant") {
        variant = ParseVariant(fields[1]);
      }
      continue;
    }
    lines.push_back({line_no, raw});
  }

  if (lines.empty()) throw SchemeParseError(line_no, "missing header line");
  auto header = SplitFields(lines[0].text);
  if (header.size() != 7 || header[0] != "rspir") {
    throw SchemeParseError(lines[0].number,
                           "header must read 'rspir K L R m M1 M2'");
  }
  const size_t hl = lines[0].number;
  Scheme s;
  s.num_messages = ParseNumber(header[1], hl);
  s.message_length = ParseNumber(header[2], hl);
  s.randomness_count = ParseNumber(header[3], hl);
  const uint64_t degree = ParseNumber(header[4], hl);
  const uint64_t m1 = ParseNumber(header[5], hl);
  const uint64_t m2 = ParseNumber(header[6], hl);
  if (s.num_messages < 1 || s.message_length < 1) {
    throw SchemeParseError(hl, "K and L must be positive");
  }
  if (degree < 1 || degree > BinaryField::kMaxDegree) {
    throw SchemeParseError(
        hl, fmt::format("field degree m = {} outside [1, {}]", degree,
                        BinaryField::kMaxDegree));
  }
  for (auto [db, count] : {std::pair{1, m1}, std::pair{2, m2}}) {
    if (count == 0 || count % s.num_messages != 0) {
      throw SchemeParseError(
          hl, fmt::format("answer set size M{} = {} is not a positive "
                          "multiple of K = {}",
                          db, count, s.num_messages));
    }
  }
  s.field = BinaryField(static_cast<int>(degree));
  s.variant = variant.value_or(SchemeVariant::kCustom);
  const size_t width = s.InputWidth();
  const Element q = s.field.order();

  size_t cursor = 1;
  for (auto [db, count] : {std::pair{1, m1}, std::pair{2, m2}}) {
    auto& answers = db == 1 ? s.db1 : s.db2;
    for (size_t i = 0; i < count; ++i) {
      if (cursor >= lines.size()) {
        throw SchemeParseError(
            line_no, fmt::format("missing answer {} of database {}", i + 1,
                                 db));
      }
      const Line& marker = lines[cursor++];
      auto f = SplitFields(marker.text);
      if (f.size() != 4 || f[0] != "answer") {
        throw SchemeParseError(marker.number,
                               "expected 'answer <db> <index> <rows>'");
      }
      if (ParseNumber(f[1], marker.number) != static_cast<uint64_t>(db) ||
          ParseNumber(f[2], marker.number) != i + 1) {
        throw SchemeParseError(
            marker.number,
            fmt::format("expected answer {} of database {}", i + 1, db));
      }
      const uint64_t rows = ParseNumber(f[3], marker.number);
      LinearAnswer answer{i, FieldMatrix(0, width)};
      std::vector<Element> row(width);
      for (uint64_t r = 0; r < rows; ++r) {
        if (cursor >= lines.size()) {
          throw SchemeParseError(line_no, "answer ended early");
        }
        const Line& data = lines[cursor++];
        auto coeffs = SplitFields(data.text);
        if (coeffs.size() != width) {
          throw SchemeParseError(
              data.number, fmt::format("expected {} coefficients, got {}",
                                       width, coeffs.size()));
        }
        for (size_t c = 0; c < width; ++c) {
          const uint64_t v = ParseNumber(coeffs[c], data.number);
          if (v >= q) {
            throw SchemeParseError(
                data.number,
                fmt::format("coefficient {} is not an element of GF({})", v,
                            q));
          }
          row[c] = static_cast<Element>(v);
        }
        answer.map.AppendRow(row);
      }
      answers.push_back(std::move(answer));
    }
  }
  if (cursor != lines.size()) {
    throw SchemeParseError(lines[cursor].number,
                           "unexpected content after the last answer");
  }
  return s;
}

std::string SerializeScheme(const Scheme& scheme) {
  std::string out;
  out += fmt::format("# variant {}\n", VariantName(scheme.variant));
  out += fmt::format("rspir {} {} {} {} {} {}\n", scheme.num_messages,
                     scheme.message_length, scheme.randomness_count,
                     scheme.field.degree(), scheme.db1.size(),
                     scheme.db2.size());
  for (int db : {1, 2}) {
    for (const LinearAnswer& answer : scheme.AnswerSet(db)) {
      out += fmt::format("answer {} {} {}\n", db, answer.index + 1,
                         answer.map.rows());
      for (size_t r = 0; r < answer.map.rows(); ++r) {
        out += fmt::format("{}\n", fmt::join(answer.map.Row(r), " "));
      }
    }
  }
  return out;
}

Scheme ReadSchemeFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseScheme(buf.str());
}

void WriteSchemeFile(const Scheme& scheme, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path));
  out << SerializeScheme(scheme);
}

}  // namespace rspir
