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

#include "msq/exact.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace msq {

std::vector<Int> ExactMatrix::column(int c) const {
  std::vector<Int> v(rows);
  for (int r = 0; r < rows; ++r) v[r] = at(r, c);
  return v;
}

ExactMatrix ExactMatrix::transposed() const {
  ExactMatrix t(cols, rows);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
  return t;
}

ExactMatrix ExactMatrix::columns_submatrix(std::span<const int> which) const {
  ExactMatrix s(rows, static_cast<int>(which.size()));
  for (int r = 0; r < rows; ++r)
    for (size_t k = 0; k < which.size(); ++k) {
      int c = which[k];
      if (c < 0 || c >= cols) throw std::invalid_argument("column index out of range");
      s.at(r, static_cast<int>(k)) = at(r, c);
    }
  return s;
}

ExactMatrix ExactMatrix::from_rational(int rows, int cols, const std::vector<Rat>& entries) {
  if (entries.size() != static_cast<size_t>(rows) * cols)
    throw std::invalid_argument("entry count does not match dimensions");
  ExactMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    Int scale = 1;
    for (int c = 0; c < cols; ++c) {
      const Int den = entries[static_cast<size_t>(r) * cols + c].get_den();
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
    }
    for (int c = 0; c < cols; ++c) {
      Rat scaled = entries[static_cast<size_t>(r) * cols + c] * scale;
      m.at(r, c) = scaled.get_num();  // denominator is 1 after scaling
    }
  }
  return m;
}

namespace {

// Divide by the content and make the leading coefficient positive.
void normalize_row(std::vector<Int>& v, int from) {
  Int g = 0;
  for (size_t k = from; k < v.size(); ++k)
    if (v[k] != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[k].get_mpz_t());
  if (g == 0) return;
  int lead = -1;
  for (size_t k = from; k < v.size(); ++k)
    if (v[k] != 0) {
      lead = static_cast<int>(k);
      break;
    }
  if (v[lead] < 0) g = -g;
  if (g != 1)
    for (size_t k = from; k < v.size(); ++k)
      if (v[k] != 0) v[k] /= g;
}

}  // namespace

IncrementalBasis::IncrementalBasis(int width) : width_(width), rows_(width) {}

bool IncrementalBasis::insert(std::vector<Int> v) {
  if (static_cast<int>(v.size()) != width_)
    throw std::invalid_argument("vector width mismatch");
  int lead = 0;
  while (lead < width_) {
    if (v[lead] == 0) {
      ++lead;
      continue;
    }
    if (rows_[lead].empty()) {
      normalize_row(v, lead);
      rows_[lead] = std::move(v);
      ++rank_;
      return true;
    }
    const std::vector<Int>& b = rows_[lead];
    const Int vl = v[lead];
    const Int& bl = b[lead];  // positive by normalization
    for (int k = lead; k < width_; ++k) v[k] = bl * v[k] - vl * b[k];
    normalize_row(v, lead + 1);
    ++lead;
  }
  return false;
}

int rank(const ExactMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  // Insert the more numerous family of lines; stop once the echelon is full.
  const bool by_cols = m.cols >= m.rows;
  const int width = by_cols ? m.rows : m.cols;
  const int count = by_cols ? m.cols : m.rows;
  IncrementalBasis basis(width);
  for (int t = 0; t < count && basis.rank() < width; ++t) {
    std::vector<Int> v(width);
    for (int k = 0; k < width; ++k) v[k] = by_cols ? m.at(k, t) : m.at(t, k);
    basis.insert(std::move(v));
  }
  return basis.rank();
}

int nullspace_dim(const ExactMatrix& m) { return m.cols - rank(m); }

bool is_independent_columns(const ExactMatrix& m, std::span<const int> cols) {
  std::set<int> seen;
  for (int c : cols) {
    if (c < 0 || c >= m.cols) throw std::invalid_argument("column index out of range");
    if (!seen.insert(c).second)
      throw std::invalid_argument("duplicate column reference in set");
  }
  if (cols.size() > static_cast<size_t>(m.rows)) return false;
  IncrementalBasis basis(m.rows);
  for (int c : cols)
    if (!basis.insert(m.column(c))) return false;
  return true;
}

std::optional<std::vector<Rat>> combination_in_span(const ExactMatrix& m,
                                                    std::span<const int> basis_cols,
                                                    const std::vector<Int>& target) {
  const int rows = m.rows;
  const int s = static_cast<int>(basis_cols.size());
  if (static_cast<int>(target.size()) != rows)
    throw std::invalid_argument("target height mismatch");
  // Rational elimination on [A | target].
  std::vector<std::vector<Rat>> w(rows, std::vector<Rat>(s + 1));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < s; ++c) w[r][c] = Rat(m.at(r, basis_cols[c]));
    w[r][s] = Rat(target[r]);
  }
  std::vector<int> pivot_row_of_col(s, -1);
  int r = 0;
  for (int c = 0; c < s && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (w[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(w[p], w[r]);
    const Rat inv = 1 / w[r][c];
    for (int k = c; k <= s; ++k) w[r][k] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || w[i][c] == 0) continue;
      const Rat f = w[i][c];
      for (int k = c; k <= s; ++k) w[i][k] -= f * w[r][k];
    }
    pivot_row_of_col[c] = r;
    ++r;
  }
  // Any leftover nonzero right-hand side means the target is independent.
  for (int i = r; i < rows; ++i)
    if (w[i][s] != 0) return std::nullopt;
  std::vector<Rat> lambda(s);
  for (int c = 0; c < s; ++c) {
    if (pivot_row_of_col[c] < 0)
      throw std::invalid_argument("basis columns are not independent");
    lambda[c] = w[pivot_row_of_col[c]][s];
  }
  return lambda;
}

ExactMatrix chain_system(int n, int i1, int m, int i2) {
  if (!(2 <= i1 && i1 < m && m + 1 < i2 && i2 <= n))
    throw std::invalid_argument("chain_system requires 2 <= i1 < m < m+1 < i2 <= n");
  // Variables: x_1..x_n at columns 0..n-1, y_1..y_n at columns n..2n-1.
  const auto x = [&](int i) { return (i - 1) % n; };  // x_{n+1} wraps to x_1
  const auto y = [&](int i) { return n + i - 1; };
  ExactMatrix sys(2 * n, 2 * n);
  int row = 0;
  for (int i = 1; i <= n; ++i) {
    sys.at(row, x(i)) = 1;
    sys.at(row, y(i)) = 1;
    ++row;
  }
  for (int i = 1; i <= n; ++i) {
    if (i == i1 - 1 || i == i1 || i == i2 - 1 || i == i2 || i == m) continue;
    sys.at(row, x(i + 1)) = 1;
    sys.at(row, y(i)) = 1;
    ++row;
  }
  sys.at(row, x(i2)) = 1;
  sys.at(row, y(i1 - 1)) = 1;
  ++row;
  sys.at(row, x(i2 + 1)) = 1;
  sys.at(row, y(i1)) = 1;
  ++row;
  sys.at(row, x(i1)) = 1;
  sys.at(row, y(i2 - 1)) = 1;
  ++row;
  sys.at(row, x(i1 + 1)) = 1;
  sys.at(row, y(i2)) = 1;
  ++row;
  sys.at(row, y(m)) = 1;
  ++row;
  if (row != 2 * n) throw std::logic_error("chain system row count mismatch");
  return sys;
}

}  // namespace msq
