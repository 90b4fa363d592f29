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
#include <stdexcept>
#include <vector>

#include "rspir/field.h"
#include "rspir/scheme.h"

namespace rspir {

// All linear schemes with the given dimensions whose answers have at most
// max_answer_length symbols. m1 / m2 of zero mean K.
struct SearchSpace {
  size_t num_messages = 2;
  size_t message_length = 1;
  size_t randomness_count = 0;
  int field_degree = 1;
  size_t max_answer_length = 1;
  size_t m1 = 0;
  size_t m2 = 0;
};

struct SearchResult {
  // One representative per equivalence class, each passing Verify.
  std::vector<Scheme> schemes;
  uint64_t nodes = 0;
  size_t subspaces = 0;  // distinct answers considered
};

class SearchBudgetExceeded : public std::runtime_error {
 public:
  SearchBudgetExceeded(SearchResult partial, std::vector<size_t> cursor);

  const SearchResult& partial() const { return partial_; }
  // Answer choices (subspace positions) on the stack when the budget ran
  // out: database 1 first, then database 2.
  const std::vector<size_t>& cursor() const { return cursor_; }

 private:
  SearchResult partial_;
  std::vector<size_t> cursor_;
};

// Row spaces of dimension <= max_rank in GF(q)^width, each as its reduced
// row echelon basis, ordered by (rank, entries).
std::vector<FieldMatrix> EnumerateSubspaces(const BinaryField& field,
                                            size_t width, size_t max_rank);

// Representative of a scheme's class: every answer replaced by the reduced
// echelon basis of its row space, answers sorted within each database, and
// the randomness symbols permuted to the lexicographically least result.
// Answer row spaces determine everything the verifier measures.
Scheme Canonicalize(const Scheme& scheme);

// Exhaustive search. Answer sets whose size is not a positive multiple of K
// are pruned before any node is visited. Throws SearchBudgetExceeded once
// more than budget nodes have been expanded.
SearchResult SearchSchemes(const SearchSpace& space, uint64_t budget);

}  // namespace rspir
