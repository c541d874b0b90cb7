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

#include <utility>
#include <vector>

#include "msq/exact.hpp"

namespace msq {

// Reference to the column of the magic-square coefficient matrix belonging to
// grid cell (i, j).  The position index j is periodic with period n and is
// normalized into [1, n] at construction, so equality and ordering are
// structural.
class ColumnRef {
 public:
  ColumnRef(int n, int i, int j);

  int i() const { return i_; }
  int j() const { return j_; }

  // Flat column index (i-1)*n + (j-1) in the row-major column order.
  int flat(int n) const { return (i_ - 1) * n + (j_ - 1); }

  auto operator<=>(const ColumnRef&) const = default;

 private:
  int i_;
  int j_;
};

// Identification of two distinct grid cells (the second is merged into the
// first), or the distinguished "no merge" value.
class CellMerge {
 public:
  CellMerge(int i1, int j1, int i2, int j2);
  static CellMerge none();

  bool is_none() const { return none_; }
  int i1() const { return i1_; }
  int j1() const { return j1_; }
  int i2() const { return i2_; }
  int j2() const { return j2_; }

  void check_range(int n) const;  // all coordinates must lie in [1, n]

 private:
  CellMerge() : none_(true) {}
  bool none_ = false;
  int i1_ = 0, j1_ = 0, i2_ = 0, j2_ = 0;
};

// The (2n+1) x n^2 coefficient matrix of the magic-square line equations.
// Row order: n row constraints, the first n-1 column constraints, the main
// diagonal, the antidiagonal.  The n-th column constraint is the omitted
// redundant one.  Column c_{i,j} sits at flat index (i-1)*n + (j-1).
struct MagicMatrix {
  int n = 0;
  ExactMatrix mat;

  int rows() const { return 2 * n + 1; }
  int cols() const { return n * n; }
};

MagicMatrix build_magic_matrix(int n);  // n >= 3

// Column extraction with periodic position normalization.
std::vector<Int> column(const MagicMatrix& m, const ColumnRef& ref);

// Matrix of the system after identifying cell (i2,j2) with (i1,j1): column
// (i2,j2) is added entrywise into column (i1,j1) and then deleted.  Shape
// (2n+1) x (n^2 - 1).
ExactMatrix contracted_matrix(const MagicMatrix& m, const CellMerge& merge);

// Checks that the Jacobian of the degree-d diagonal system at the constant
// point (z, ..., z), evaluated entrywise from the derivative of each
// monomial, equals d * z^(d-1) times the coefficient matrix and has full row
// rank 2n+1.  Requires z != 0.
bool jacobian_rank_check(int n, int d, const Rat& z);

// Dual vector beta = e_1 together with the number of columns orthogonal to
// it.  Every column outside the first block is orthogonal, so the count is
// n^2 - n: the pencil beta . grad F vanishes on a coordinate subspace of that
// dimension.
struct SingularWitness {
  std::vector<Rat> beta;  // length 2n+1
  long count = 0;
};

SingularWitness singular_pencil_witness(int n);

}  // namespace msq
