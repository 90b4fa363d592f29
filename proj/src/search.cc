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

#include "rspir/search.h"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "rspir/verifier.h"

namespace rspir {

namespace {

bool AnswerLess(const FieldMatrix& x, const FieldMatrix& y) {
  if (x.rows() != y.rows()) return x.rows() < y.rows();
  return x.entries() < y.entries();
}

bool AnswerSetLess(const std::vector<LinearAnswer>& x,
                   const std::vector<LinearAnswer>& y) {
  return std::lexicographical_compare(
      x.begin(), x.end(), y.begin(), y.end(),
      [](const LinearAnswer& p, const LinearAnswer& q) {
        return AnswerLess(p.map, q.map);
      });
}

void SortAnswers(std::vector<LinearAnswer>& answers) {
  std::sort(answers.begin(), answers.end(),
            [](const LinearAnswer& p, const LinearAnswer& q) {
              return AnswerLess(p.map, q.map);
            });
  for (size_t i = 0; i < answers.size(); ++i) answers[i].index = i;
}

void FillFree(const BinaryField& field, FieldMatrix& basis,
              const std::vector<std::pair<size_t, size_t>>& free_cells,
              size_t next, std::vector<FieldMatrix>& out) {
  if (next == free_cells.size()) {
    out.push_back(basis);
    return;
  }
  auto [r, c] = free_cells[next];
  for (Element v = 0; v < field.order(); ++v) {
    basis.At(r, c) = v;
    FillFree(field, basis, free_cells, next + 1, out);
  }
  basis.At(r, c) = 0;
}

void ChoosePivots(const BinaryField& field, size_t width, size_t rank,
                  std::vector<size_t>& pivots, std::vector<FieldMatrix>& out) {
  if (pivots.size() == rank) {
    FieldMatrix basis(rank, width);
    std::vector<bool> is_pivot(width, false);
    for (size_t i = 0; i < rank; ++i) {
      basis.At(i, pivots[i]) = 1;
      is_pivot[pivots[i]] = true;
    }
    std::vector<std::pair<size_t, size_t>> free_cells;
    for (size_t i = 0; i < rank; ++i) {
      for (size_t c = pivots[i] + 1; c < width; ++c) {
        if (!is_pivot[c]) free_cells.emplace_back(i, c);
      }
    }
    FillFree(field, basis, free_cells, 0, out);
    return;
  }
  const size_t start = pivots.empty() ? 0 : pivots.back() + 1;
  for (size_t c = start; c + (rank - pivots.size()) <= width; ++c) {
    pivots.push_back(c);
    ChoosePivots(field, width, rank, pivots, out);
    pivots.pop_back();
  }
}

Scheme PermuteRandomness(const Scheme& s, const std::vector<size_t>& perm) {
  Scheme out = s;
  for (int db : {1, 2}) {
    auto& answers = db == 1 ? out.db1 : out.db2;
    for (size_t i = 0; i < answers.size(); ++i) {
      LinearAnswer& ans = answers[i];
      const FieldMatrix& src = s.AnswerSet(db)[i].map;
      for (size_t r = 0; r < src.rows(); ++r) {
        for (size_t j = 0; j < s.randomness_count; ++j) {
          ans.map.At(r, s.RandomnessCoord(perm[j])) =
              src.At(r, s.RandomnessCoord(j));
        }
      }
    }
  }
  return out;
}

// theta if the pair of row spaces reveals exactly one message and nothing
// about the others, -1 otherwise.
int PairVerdict(const BinaryField& field, const FieldMatrix& a,
                const FieldMatrix& b, const std::vector<FieldMatrix>& units,
                const std::vector<FieldMatrix>& complements) {
  const FieldMatrix pair = a.Stack(b);
  const size_t rank = Rank(field, pair);
  int theta = -1;
  for (size_t k = 0; k < units.size(); ++k) {
    if (Rank(field, pair.Stack(units[k])) != rank) continue;
    if (theta != -1) return -1;
    theta = static_cast<int>(k);
  }
  if (theta == -1) return -1;
  const FieldMatrix& others = complements[static_cast<size_t>(theta)];
  if (Rank(field, pair.Stack(others)) != rank + others.rows()) return -1;
  return theta;
}

class Searcher {
 public:
  Searcher(const SearchSpace& space, uint64_t budget)
      : space_(space),
        budget_(budget),
        field_(space.field_degree),
        k_(space.num_messages),
        m1_(space.m1 == 0 ? space.num_messages : space.m1),
        m2_(space.m2 == 0 ? space.num_messages : space.m2) {}

  SearchResult Run() {
    if (k_ == 0 || m1_ % k_ != 0 || m2_ % k_ != 0 || space_.message_length == 0) {
      return std::move(result_);
    }
    template_.variant = SchemeVariant::kCustom;
    template_.num_messages = k_;
    template_.message_length = space_.message_length;
    template_.randomness_count = space_.randomness_count;
    template_.field = field_;
    const size_t width = template_.InputWidth();

    subspaces_ = EnumerateSubspaces(field_, width, space_.max_answer_length);
    result_.subspaces = subspaces_.size();

    std::vector<FieldMatrix> units(k_, FieldMatrix(0, width));
    std::vector<FieldMatrix> complements(k_, FieldMatrix(0, width));
    std::vector<Element> row(width);
    for (size_t k = 0; k < k_; ++k) {
      for (size_t l = 0; l < space_.message_length; ++l) {
        std::fill(row.begin(), row.end(), 0);
        row[template_.MessageCoord(k, l)] = 1;
        units[k].AppendRow(row);
        for (size_t other = 0; other < k_; ++other) {
          if (other != k) complements[other].AppendRow(row);
        }
      }
    }

    const size_t n = subspaces_.size();
    verdict_.assign(n * n, -1);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        verdict_[i * n + j] =
            PairVerdict(field_, subspaces_[i], subspaces_[j], units, complements);
      }
    }
    // An answer can only sit in a uniform row (column) if it reaches every
    // message with some partner.
    for (size_t i = 0; i < n; ++i) {
      std::vector<bool> row_hits(k_, false), col_hits(k_, false);
      for (size_t j = 0; j < n; ++j) {
        if (int t = verdict_[i * n + j]; t >= 0) row_hits[t] = true;
        if (int t = verdict_[j * n + i]; t >= 0) col_hits[t] = true;
      }
      auto all = [](const std::vector<bool>& v) {
        return std::all_of(v.begin(), v.end(), [](bool x) { return x; });
      };
      if (all(row_hits)) viable1_.push_back(i);
      if (all(col_hits)) viable2_.push_back(i);
    }
    ChooseDb1(0);
    return std::move(result_);
  }

 private:
  int Verdict(size_t i, size_t j) const {
    return verdict_[i * subspaces_.size() + j];
  }

  void Expand() {
    if (++result_.nodes > budget_) {
      std::vector<size_t> cursor;
      for (size_t i : db1_) cursor.push_back(i);
      for (size_t j : db2_) cursor.push_back(j);
      throw SearchBudgetExceeded(std::move(result_), std::move(cursor));
    }
  }

  void ChooseDb1(size_t start) {
    if (db1_.size() == m1_) {
      row_counts_.assign(m1_ * k_, 0);
      ChooseDb2(0);
      return;
    }
    for (size_t p = start; p < viable1_.size(); ++p) {
      Expand();
      db1_.push_back(viable1_[p]);
      ChooseDb1(p);
      db1_.pop_back();
    }
  }

  void ChooseDb2(size_t start) {
    if (db2_.size() == m2_) {
      Emit();
      return;
    }
    const size_t per_row = m2_ / k_;
    const size_t per_col = m1_ / k_;
    std::vector<size_t> col(k_);
    for (size_t p = start; p < viable2_.size(); ++p) {
      const size_t j = viable2_[p];
      std::fill(col.begin(), col.end(), 0);
      bool ok = true;
      for (size_t a = 0; a < m1_ && ok; ++a) {
        const int t = Verdict(db1_[a], j);
        if (t < 0) {
          ok = false;
          break;
        }
        const size_t tk = static_cast<size_t>(t);
        if (++col[tk] > per_col || row_counts_[a * k_ + tk] + 1 > per_row) {
          ok = false;
        }
      }
      if (!ok) continue;
      Expand();
      for (size_t a = 0; a < m1_; ++a) {
        ++row_counts_[a * k_ + static_cast<size_t>(Verdict(db1_[a], j))];
      }
      db2_.push_back(j);
      ChooseDb2(p);
      db2_.pop_back();
      for (size_t a = 0; a < m1_; ++a) {
        --row_counts_[a * k_ + static_cast<size_t>(Verdict(db1_[a], j))];
      }
    }
  }

  void Emit() {
    Scheme s = template_;
    for (size_t i = 0; i < db1_.size(); ++i) {
      s.db1.push_back({i, subspaces_[db1_[i]]});
    }
    for (size_t j = 0; j < db2_.size(); ++j) {
      s.db2.push_back({j, subspaces_[db2_[j]]});
    }
    if (!(Canonicalize(s) == s)) return;
    if (!Verify(s).AllPassed()) return;
    result_.schemes.push_back(std::move(s));
  }

  SearchSpace space_;
  uint64_t budget_;
  BinaryField field_;
  size_t k_, m1_, m2_;
  Scheme template_;
  std::vector<FieldMatrix> subspaces_;
  std::vector<int> verdict_;
  std::vector<size_t> viable1_, viable2_;
  std::vector<size_t> db1_, db2_;
  std::vector<size_t> row_counts_;
  SearchResult result_;
};

}  // namespace

SearchBudgetExceeded::SearchBudgetExceeded(SearchResult partial,
                                           std::vector<size_t> cursor)
    : std::runtime_error(fmt::format(
          "search budget exhausted after {} nodes with {} scheme(s) found",
          partial.nodes, partial.schemes.size())),
      partial_(std::move(partial)),
      cursor_(std::move(cursor)) {}

std::vector<FieldMatrix> EnumerateSubspaces(const BinaryField& field,
                                            size_t width, size_t max_rank) {
  std::vector<FieldMatrix> out;
  std::vector<size_t> pivots;
  for (size_t rank = 0; rank <= std::min(max_rank, width); ++rank) {
    ChoosePivots(field, width, rank, pivots, out);
  }
  std::sort(out.begin(), out.end(), AnswerLess);
  return out;
}

Scheme Canonicalize(const Scheme& scheme) {
  Scheme reduced = scheme;
  reduced.variant = SchemeVariant::kCustom;
  for (int db : {1, 2}) {
    for (LinearAnswer& ans : db == 1 ? reduced.db1 : reduced.db2) {
      ans.map = RowReduce(scheme.field, ans.map).reduced;
    }
  }
  std::vector<size_t> perm(scheme.randomness_count);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Scheme> best;
  do {
    Scheme candidate = PermuteRandomness(reduced, perm);
    for (int db : {1, 2}) {
      for (LinearAnswer& ans : db == 1 ? candidate.db1 : candidate.db2) {
        ans.map = RowReduce(scheme.field, ans.map).reduced;
      }
      SortAnswers(db == 1 ? candidate.db1 : candidate.db2);
    }
    if (!best || AnswerSetLess(candidate.db1, best->db1) ||
        (!AnswerSetLess(best->db1, candidate.db1) &&
         AnswerSetLess(candidate.db2, best->db2))) {
      best = std::move(candidate);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

SearchResult SearchSchemes(const SearchSpace& space, uint64_t budget) {
  return Searcher(space, budget).Run();
}

}  // namespace rspir
