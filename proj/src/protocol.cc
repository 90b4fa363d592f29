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

#include "rspir/protocol.h"

#include <bit>
#include <stdexcept>

#include <fmt/format.h>

namespace rspir {

SeededStream::SeededStream(uint64_t seed, StreamId id) {
  std::seed_seq seq{static_cast<uint32_t>(seed),
                    static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(id)};
  engine_.seed(seq);
}

uint64_t SeededStream::UniformBelow(uint64_t bound) {
  if (bound <= 1) return 0;
  // 2^64 mod bound; accepting x >= threshold leaves a multiple of bound
  // equally likely values.
  const uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

MessageSet::MessageSet(size_t num_messages, size_t length)
    : num_messages_(num_messages),
      length_(length),
      symbols_(num_messages * length, 0) {}

MessageSet::MessageSet(size_t num_messages, size_t length,
                       std::vector<Element> symbols)
    : num_messages_(num_messages),
      length_(length),
      symbols_(std::move(symbols)) {
  if (symbols_.size() != num_messages_ * length_) {
    throw std::invalid_argument(fmt::format(
        "{} symbols do not form {} messages of length {}", symbols_.size(),
        num_messages_, length_));
  }
}

std::vector<Element> MessageSet::Block(size_t block,
                                       size_t message_length) const {
  std::vector<Element> out;
  out.reserve(num_messages_ * message_length);
  for (size_t k = 0; k < num_messages_; ++k) {
    auto msg = Message(k);
    for (size_t l = 0; l < message_length; ++l) {
      out.push_back(msg[block * message_length + l]);
    }
  }
  return out;
}

MessageSet MessageSet::Random(const BinaryField& field, size_t num_messages,
                              size_t length, uint64_t seed) {
  SeededStream stream(seed, StreamId::kMessages);
  MessageSet out(num_messages, length);
  for (size_t k = 0; k < num_messages; ++k) {
    for (Element& e : out.Message(k)) {
      e = static_cast<Element>(stream.UniformBelow(field.order()));
    }
  }
  return out;
}

MessageSet ParseMessages(std::string_view text, const BinaryField& field) {
  std::vector<Element> symbols;
  size_t count = 0;
  size_t length = 0;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos ||
        line.front() == '#') {
      continue;
    }
    size_t fields = 0;
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i == line.size()) break;
      size_t j = i;
      uint64_t v = 0;
      while (j < line.size() && line[j] >= '0' && line[j] <= '9') {
        v = v * 10 + static_cast<uint64_t>(line[j] - '0');
        if (v > field.order()) v = field.order();
        ++j;
      }
      if (j == i || (j < line.size() && line[j] != ' ' && line[j] != '\t')) {
        throw SchemeParseError(line_no, "expected decimal field elements");
      }
      if (v >= field.order()) {
        throw SchemeParseError(
            line_no, fmt::format("symbol is not an element of GF({})",
                                 field.order()));
      }
      symbols.push_back(static_cast<Element>(v));
      ++fields;
      i = j;
    }
    if (count == 0) {
      length = fields;
    } else if (fields != length) {
      throw SchemeParseError(
          line_no, fmt::format("message has {} symbols, the first has {}",
                               fields, length));
    }
    ++count;
  }
  return MessageSet(count, length, std::move(symbols));
}

std::string SerializeMessages(const MessageSet& messages) {
  std::string out;
  for (size_t k = 0; k < messages.num_messages(); ++k) {
    out += fmt::format("{}\n", fmt::join(messages.Message(k), " "));
  }
  return out;
}

CommonRandomness::CommonRandomness(const Scheme& scheme, uint64_t seed)
    : order_(scheme.field.order()),
      count_(scheme.randomness_count),
      stream_(seed, StreamId::kCommonRandomness) {}

std::vector<Element> CommonRandomness::NextBlock() {
  std::vector<Element> s(count_);
  for (Element& e : s) e = static_cast<Element>(stream_.UniformBelow(order_));
  return s;
}

DatabaseActor::DatabaseActor(const Scheme& scheme, int db, uint64_t seed)
    : scheme_(scheme),
      db_(db),
      selection_(seed, db == 1 ? StreamId::kDatabase1Selection
                               : StreamId::kDatabase2Selection) {}

size_t DatabaseActor::SelectAnswer() {
  return static_cast<size_t>(
      selection_.UniformBelow(scheme_.AnswerSet(db_).size()));
}

std::vector<Element> DatabaseActor::Respond(
    size_t answer, std::span<const Element> messages_block,
    std::span<const Element> randomness) const {
  std::vector<Element> input(messages_block.begin(), messages_block.end());
  input.insert(input.end(), randomness.begin(), randomness.end());
  return Apply(scheme_.field, scheme_.AnswerSet(db_).at(answer).map, input);
}

UserActor::UserActor(const Scheme& scheme, DecodeTable table)
    : scheme_(scheme), table_(std::move(table)) {}

DecodedMessage UserActor::Receive(size_t a, size_t b,
                                  std::span<const Element> from_db1,
                                  std::span<const Element> from_db2) const {
  std::vector<Element> observed(from_db1.begin(), from_db1.end());
  observed.insert(observed.end(), from_db2.begin(), from_db2.end());
  return Decode(scheme_, table_, a, b, observed);
}

std::string SchemeId(const Scheme& scheme) {
  uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : SerializeScheme(scheme)) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return fmt::format("{}-K{}-{:016x}", VariantName(scheme.variant),
                     scheme.num_messages, hash);
}

Transcript RunProtocol(const Scheme& scheme, const MessageSet& messages,
                       uint64_t seed, size_t blocks) {
  return RunProtocol(scheme, DeriveDecodeTable(scheme), messages, seed,
                     blocks);
}

Transcript RunProtocol(const Scheme& scheme, const DecodeTable& table,
                       const MessageSet& messages, uint64_t seed,
                       size_t blocks) {
  if (blocks == 0) throw std::invalid_argument("blocks must be positive");
  if (scheme.db1.empty() || scheme.db2.empty()) {
    throw std::invalid_argument("both answer sets must be non-empty");
  }
  const size_t l_count = scheme.message_length;
  if (messages.num_messages() != scheme.num_messages ||
      messages.length() != l_count * blocks) {
    throw std::invalid_argument(fmt::format(
        "messages are {}x{}, scheme needs {}x{} for {} block(s)",
        messages.num_messages(), messages.length(), scheme.num_messages,
        l_count * blocks, blocks));
  }

  DatabaseActor db1(scheme, 1, seed);
  DatabaseActor db2(scheme, 2, seed);
  CommonRandomness shared1(scheme, seed);
  CommonRandomness shared2(scheme, seed);
  UserActor user(scheme, table);

  Transcript t;
  t.scheme_id = SchemeId(scheme);
  t.blocks = blocks;
  t.a = db1.SelectAnswer();
  t.b = db2.SelectAnswer();
  t.index_bits = static_cast<size_t>(
      std::bit_width(scheme.db1.size() - 1) +
      std::bit_width(scheme.db2.size() - 1));

  bool first = true;
  for (size_t block = 0; block < blocks; ++block) {
    const std::vector<Element> w = messages.Block(block, l_count);
    const std::vector<Element> s1 = shared1.NextBlock();
    const std::vector<Element> s2 = shared2.NextBlock();
    t.from_db1.push_back(db1.Respond(t.a, w, s1));
    t.from_db2.push_back(db2.Respond(t.b, w, s2));
    t.symbols_downloaded += t.from_db1.back().size() + t.from_db2.back().size();
    DecodedMessage got = user.Receive(t.a, t.b, t.from_db1.back(),
                                      t.from_db2.back());
    if (first) {
      t.theta = got.message;
      first = false;
    }
    t.decoded.insert(t.decoded.end(), got.symbols.begin(), got.symbols.end());
  }
  return t;
}

std::string Transcript::Serialize() const {
  std::string out;
  out += fmt::format("scheme {}\n", scheme_id);
  out += fmt::format("blocks {}\n", blocks);
  out += fmt::format("indices {} {}\n", a + 1, b + 1);
  for (size_t i = 0; i < from_db1.size(); ++i) {
    out += fmt::format("block {} db1 {} db2 {}\n", i + 1,
                       fmt::join(from_db1[i], " "),
                       fmt::join(from_db2[i], " "));
  }
  out += fmt::format("decoded W_{} {}\n", theta + 1, fmt::join(decoded, " "));
  out += fmt::format("download symbols {} index_bits {}\n", symbols_downloaded,
                     index_bits);
  return out;
}

RandomnessModel SimulatorRandomness(const Scheme& scheme, uint64_t seed_count) {
  return {seed_count, [&scheme](uint64_t seed, std::span<const Element>) {
            return CommonRandomness(scheme, seed).NextBlock();
          }};
}

}  // namespace rspir
