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
#include <string>
#include <vector>

#include "msq/exact.hpp"

namespace msq::squares {

// An n x n grid of positive bases x_{i,j} whose d-th powers are the square's
// entries.  Distinctness of bases and of powers coincide because the bases
// are positive.
struct SquareGrid {
  int n = 0;
  int d = 1;
  std::vector<Int> entries;  // row-major bases

  Int& at(int i, int j) { return entries[static_cast<size_t>(i - 1) * n + (j - 1)]; }
  const Int& at(int i, int j) const {
    return entries[static_cast<size_t>(i - 1) * n + (j - 1)];
  }
};

struct VerifyResult {
  bool ok = false;
  Int mu = 0;  // first-row power sum; the reference line value
  std::vector<std::string> failures;
};

// Checks that every row, column and both diagonals of d-th powers sum to a
// common value and that all n^2 bases are pairwise distinct.  Each failing
// line is reported by name.
VerifyResult verify_square(const SquareGrid& g);

struct CountResult {
  long long total = 0;       // grids satisfying all 2n+2 line equations
  long long distinct = 0;    // those with pairwise-distinct entries
  long long degenerate = 0;  // total - distinct
  std::uint64_t nodes = 0;
};

// Exact count of grids with bases in [1, X] whose d-th powers satisfy all
// line equations for the given mu, with and without distinctness.  Rows are
// enumerated from precomputed row candidates with column/diagonal interval
// pruning; the node count is capped by the budget.
CountResult count_solutions(int n, int d, long X, const Int& mu, std::uint64_t budget);

// Single-count view: distinct = false counts all solutions, distinct = true
// only those with pairwise-distinct entries.
long long count_solutions(int n, int d, long X, const Int& mu, bool distinct,
                          std::uint64_t budget);

// Plain-text format: a header line "n d", then n lines of n base integers.
// Blank lines and lines starting with '#' are ignored, so fixture files can
// carry provenance notes.
SquareGrid parse_grid(const std::string& text);
std::string emit_grid(const SquareGrid& g);

}  // namespace msq::squares
