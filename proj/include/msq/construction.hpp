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

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msq/magic.hpp"

namespace msq::construction {

using ColumnSet = std::set<ColumnRef>;

// Positions j with c_{i,j} in the set, for block i.
std::set<int> block_view(const ColumnSet& s, int i);

struct Params {
  int n = 0;
  int eps = 0;   // 1 for even n, 0 for odd
  int N = 0;     // largest strip index: (n - 1 + eps)/2 - 2
  int zmax = 0;  // number of packed sets: floor(n/4) - 1
};

// Requires n >= 8; asserts N >= zmax >= 1.
Params params(int n);

// The ell-th diagonal strip: the wrapped diagonal at offset 2*ell together
// with the one at offset 2*ell + 1 minus its single last-column member
// c_{n-2ell-1, n}.  Size 2n-1; the unique remaining last-column member is
// c_{n-2ell, n}.  Strips with distinct indices in [0, N] are disjoint.
ColumnSet diagonal_strip(int n, int ell);

// The two strip members carrying a nonzero entry in one of the last two rows
// (both lie on the antidiagonal), in closed form:
//   c_{(n+1-eps)/2 - ell, (n+1-eps)/2 + eps + ell}  and  c_{n-ell, ell+1}.
// Requires 1 <= ell <= N.
std::pair<ColumnRef, ColumnRef> strip_diagonal_hits(int n, int ell);

// Block indices whose strip columns get swapped during repair.
int swap_block_low(int n, int ell);   // (n + 1 - eps)/2 - ell
int swap_block_high(int n, int ell);  // n - ell

// The repaired strip: the two columns of the strip in each of the swap blocks
// are replaced by the columns at the other block's positions.  Every member
// of the result has zeros in the two diagonal rows, and the repaired strips
// for distinct admissible indices stay pairwise disjoint.
ColumnSet repaired_strip(int n, int ell);

// Admissible strip indices {1, ..., floor(n/4) - 1}.  Verifies the spacing
// property (n+1-eps)/2 != 2(m - ell) + delta (mod n) for all members m, ell
// and delta in {-1, 0, 1}, which is what keeps the repaired strips disjoint.
std::vector<int> admissible_strips(int n);

// Columns carrying the main-diagonal row (c_{i,i}) and those carrying the
// antidiagonal row but not the main one.
std::pair<ColumnSet, ColumnSet> diagonal_carriers(int n);

struct PartSet {
  int ell = 0;
  ColumnSet columns;  // 2n+1 columns
  ColumnRef a;        // main-diagonal carrier added to the repaired strip
  ColumnRef b;        // antidiagonal carrier added to the repaired strip
  std::vector<ColumnRef> removed;  // strip columns swapped out during repair
  std::vector<ColumnRef> added;    // replacement columns swapped in
};

struct Partition {
  int n = 0;
  std::vector<PartSet> sets;
  bool certified = false;
};

// Builds floor(n/4) - 1 pairwise-disjoint sets of 2n+1 columns, each the
// repaired strip plus one main-diagonal and one antidiagonal carrier
// (a_ell = c_{ell,ell}, b_ell = c_{ell,n+1-ell}).  Every set is certified
// linearly independent by exact elimination and the family is certified
// disjoint; a certification failure throws CertificationError.
Partition assemble_partition(int n);

struct SetReport {
  int ell = 0;
  size_t size = 0;
  bool size_ok = false;
  bool independent = false;
};

struct VerificationReport {
  int n = 0;
  std::vector<SetReport> sets;
  bool pairwise_disjoint = false;
  bool all_ok = false;
  // Number of valid sets that are also disjoint from every other valid set;
  // a sound lower bound for the packing number.
  int implied_packing_lower = 0;
};

// Re-certifies a partition from scratch against the given matrix.  Failures
// are report entries, never exceptions.
VerificationReport verify_partition(const MagicMatrix& m, const Partition& p);

// Smallest side length covered by the counting machinery for exponent d:
//   4*min(2^d, d(d+1)) + 20          for 2 <= d <= 4,
//   4*ceil(d*(log d + 4.20032)) + 20 for d >= 5 (natural log).
// The ceiling is checked for stability against rounding before returning.
long n0_threshold(int d);

}  // namespace msq::construction
