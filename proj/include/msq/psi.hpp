// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "msq/construction.hpp"
#include "msq/magic.hpp"

namespace msq::psi {

// The packing number of a full-row-rank matrix: the maximum number of
// pairwise-disjoint column sets, each a basis of the column space (size =
// row count).

struct Budget {
  std::uint64_t max_nodes = 50'000'000;  // independence-oracle call cap
  double max_seconds = 1500.0;
  int max_cols = 160;
};

struct Spent {
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

struct PackingResult {
  int set_size = 0;  // row count of the matrix
  int lower = 0;     // certified: witness below
  int upper = 0;     // pigeonhole cap floor(cols / set_size)
  std::optional<int> exact;
  std::vector<std::vector<int>> witness;  // disjoint independent sets, flat column indices
  Spent spent;
};

// floor(cols / rows).
int packing_upper_bound(const ExactMatrix& m);

// Exact packing number by matroid union: repeatedly grows k disjoint
// independent sets with breadth-first augmenting exchange paths, certifying
// for each k whether k disjoint bases exist.  Requires full row rank.  When
// the budget runs out the result carries bounds only, never a guess.  The
// returned witness is re-certified by exact elimination before returning.
PackingResult exact_packing(const ExactMatrix& m, const Budget& budget = {});

// Greedy lower bound: repeatedly extracts an independent basis-sized set by a
// rank-increasing scan of the remaining columns in the given order.  An
// optional warm start seeds the extraction with already-known disjoint
// independent sets (validated, then extended).
PackingResult greedy_packing(const ExactMatrix& m, std::span<const int> order = {},
                             const std::vector<std::vector<int>>* warm_start = nullptr);

struct MergeSurvivorsReport {
  int n = 0;
  int required = 0;             // floor(n/4) - 3, clamped at 0
  int survivors = 0;            // sets kept after dropping the deleted-cell set
  int certified = 0;            // survivors that re-certify in the merged matrix
  std::vector<int> dropped;     // strip indices of dropped sets
  bool disjoint_after_map = false;
  bool ok = false;              // certified >= required and mapping stayed disjoint
  // Optional comparison: a greedy packing built directly on the merged matrix
  // can beat the surviving sets; both numbers are reported when requested.
  std::optional<int> fresh_greedy;
};

// Takes the certified partition for n, drops every set containing the merged
// cell's deleted column (the set containing the surviving cell keeps it: that
// column absorbs the merged variable), maps the rest into the contracted
// matrix's coordinates and re-certifies independence there.  True iff at
// least floor(n/4) - 3 certified disjoint sets survive.
MergeSurvivorsReport merge_survivors(int n, const CellMerge& merge,
                                     bool with_fresh_greedy = false);

inline bool verify_merge_bound(int n, const CellMerge& merge) {
  return merge_survivors(n, merge).ok;
}

}  // namespace msq::psi
