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
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rspir/decode.h"
#include "rspir/scheme.h"
#include "rspir/verifier.h"

namespace rspir {

// Independent streams derived from one run seed. Both databases hold the
// common-randomness stream; each database's index selection has its own.
enum class StreamId : uint64_t {
  kDatabase1Selection = 1,
  kDatabase2Selection = 2,
  kCommonRandomness = 3,
  kMessages = 4,
};

class SeededStream {
 public:
  SeededStream(uint64_t seed, StreamId id);

  uint64_t Next() { return engine_(); }
  // Uniform on [0, bound) by rejection, identical on every platform.
  uint64_t UniformBelow(uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// K messages of equal length (L * blocks symbols each), row-major.
class MessageSet {
 public:
  MessageSet() = default;
  MessageSet(size_t num_messages, size_t length);
  MessageSet(size_t num_messages, size_t length, std::vector<Element> symbols);

  size_t num_messages() const { return num_messages_; }
  size_t length() const { return length_; }

  std::span<const Element> Message(size_t k) const {
    return {symbols_.data() + k * length_, length_};
  }
  std::span<Element> Message(size_t k) {
    return {symbols_.data() + k * length_, length_};
  }

  // W_1..W_K restricted to symbols [block * L, (block + 1) * L), laid out as
  // a scheme input prefix.
  std::vector<Element> Block(size_t block, size_t message_length) const;

  static MessageSet Random(const BinaryField& field, size_t num_messages,
                           size_t length, uint64_t seed);

  bool operator==(const MessageSet&) const = default;

 private:
  size_t num_messages_ = 0;
  size_t length_ = 0;
  std::vector<Element> symbols_;
};

// One line per message, space-separated decimal field elements; blocks are
// concatenated along the line. Throws SchemeParseError with a line number.
MessageSet ParseMessages(std::string_view text, const BinaryField& field);
std::string SerializeMessages(const MessageSet& messages);

// Per-block common randomness shared by both databases.
class CommonRandomness {
 public:
  CommonRandomness(const Scheme& scheme, uint64_t seed);
  std::vector<Element> NextBlock();

 private:
  Element order_;
  size_t count_;
  SeededStream stream_;
};

class DatabaseActor {
 public:
  DatabaseActor(const Scheme& scheme, int db, uint64_t seed);

  // Uniform draw from the answer set; made once per run.
  size_t SelectAnswer();

  std::vector<Element> Respond(size_t answer,
                               std::span<const Element> messages_block,
                               std::span<const Element> randomness) const;

 private:
  const Scheme& scheme_;
  int db_;
  SeededStream selection_;
};

class UserActor {
 public:
  UserActor(const Scheme& scheme, DecodeTable table);

  const DecodeTable& table() const { return table_; }

  DecodedMessage Receive(size_t a, size_t b,
                         std::span<const Element> from_db1,
                         std::span<const Element> from_db2) const;

 private:
  const Scheme& scheme_;
  DecodeTable table_;
};

struct Transcript {
  std::string scheme_id;
  size_t blocks = 0;
  size_t a = 0;  // 0-based
  size_t b = 0;
  std::vector<std::vector<Element>> from_db1;  // one vector per block
  std::vector<std::vector<Element>> from_db2;
  size_t theta = 0;
  std::vector<Element> decoded;  // L * blocks symbols of W_theta
  size_t symbols_downloaded = 0;
  size_t index_bits = 0;  // sent once, before the first block

  std::string Serialize() const;
};

// Scheme name plus an FNV-1a hash of its serialized form.
std::string SchemeId(const Scheme& scheme);

// Throws std::invalid_argument if messages are not K x (L * blocks) or
// blocks == 0, and NotReliableError if the drawn pair decodes nothing.
Transcript RunProtocol(const Scheme& scheme, const MessageSet& messages,
                       uint64_t seed, size_t blocks);
Transcript RunProtocol(const Scheme& scheme, const DecodeTable& table,
                       const MessageSet& messages, uint64_t seed,
                       size_t blocks);

// The simulator's randomness wiring as a verifier model: seed i yields the
// first block of CommonRandomness(scheme, i).
RandomnessModel SimulatorRandomness(const Scheme& scheme, uint64_t seed_count);

}  // namespace rspir
