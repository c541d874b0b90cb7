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

#include <gmpxx.h>

#include <optional>
#include <span>
#include <vector>

namespace msq {

using Int = mpz_class;
using Rat = mpq_class;

// Dense matrix of arbitrary-precision integers.  All rank and independence
// questions in this library are answered exactly; there is no tolerance
// parameter anywhere in this module.
struct ExactMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;  // row-major

  ExactMatrix() = default;
  ExactMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  std::vector<Int> column(int c) const;
  ExactMatrix transposed() const;
  ExactMatrix columns_submatrix(std::span<const int> which) const;

  // Builds an integer matrix from rational entries by scaling each row by the
  // lcm of its denominators.  Row scaling preserves rank.
  static ExactMatrix from_rational(int rows, int cols, const std::vector<Rat>& entries);

  bool operator==(const ExactMatrix&) const = default;
};

// Row-echelon accumulator over the integers.  Rows are kept fraction-free:
// each elimination step forms (pivot_lead * v - v_lead * pivot) and the result
// is divided by its content, so entries stay minimal and no rational rounding
// ever occurs.  Pivot choice is the first nonzero position, which makes every
// certificate reproducible.
class IncrementalBasis {
 public:
  explicit IncrementalBasis(int width);

  // Reduces v against the current rows.  Returns true (and absorbs the
  // residual as a new pivot row) iff v is independent of the span so far.
  bool insert(std::vector<Int> v);

  int rank() const { return rank_; }
  int width() const { return width_; }

 private:
  int width_;
  int rank_ = 0;
  std::vector<std::vector<Int>> rows_;  // indexed by leading position; empty = no pivot
};

// Exact rank over the rationals.  Fraction-free elimination; early exit once
// the rank reaches min(rows, cols).
int rank(const ExactMatrix& m);

int nullspace_dim(const ExactMatrix& m);

// True iff the selected columns are linearly independent.  Duplicate indices
// are rejected: a set never contains the same column twice.
bool is_independent_columns(const ExactMatrix& m, std::span<const int> cols);

// Expresses `target` in the span of the selected columns.  Returns the unique
// coefficient vector when the columns are independent and target lies in
// their span; nullopt when target is independent of them.  Preconditions: the
// selected columns are independent (callers maintain this).
std::optional<std::vector<Rat>> combination_in_span(const ExactMatrix& m,
                                                    std::span<const int> basis_cols,
                                                    const std::vector<Int>& target);

// Coefficient matrix, of shape 2n x 2n, of the linear system on
// (x_1..x_n, y_1..y_n) consisting of two interleaved cyclic chains with four
// rewired links and one anchored variable:
//   x_i + y_i = 0                 for 1 <= i <= n,
//   x_{i+1} + y_i = 0             for i not in {i1-1, i1, i2-1, i2, m},
//   x_{i2} + y_{i1-1} = 0,   x_{i2+1} + y_{i1} = 0,
//   x_{i1} + y_{i2-1} = 0,   x_{i1+1} + y_{i2} = 0,
//   y_m = 0,
// with x_{n+1} identified as x_1.  Requires 2 <= i1 < m, m + 1 < i2 <= n
// (i1 = 1 would reference the nonexistent y_0).
ExactMatrix chain_system(int n, int i1, int m, int i2);

}  // namespace msq
