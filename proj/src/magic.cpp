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

#include "msq/magic.hpp"

#include <stdexcept>
#include <string>

namespace msq {

ColumnRef::ColumnRef(int n, int i, int j) {
  if (n < 1) throw std::invalid_argument("side length must be positive");
  if (i < 1 || i > n) throw std::invalid_argument("block index out of [1, n]");
  i_ = i;
  // Periodic position: c_{i, j + m*n} = c_{i, j}.
  int jm = (j - 1) % n;
  if (jm < 0) jm += n;
  j_ = jm + 1;
}

CellMerge::CellMerge(int i1, int j1, int i2, int j2)
    : i1_(i1), j1_(j1), i2_(i2), j2_(j2) {
  if (i1 < 1 || j1 < 1 || i2 < 1 || j2 < 1)
    throw std::invalid_argument("cell coordinates must be positive");
  if (i1 == i2 && j1 == j2)
    throw std::invalid_argument("merge requires two distinct cells");
}

CellMerge CellMerge::none() { return CellMerge(); }

void CellMerge::check_range(int n) const {
  if (is_none()) return;
  if (i1_ > n || j1_ > n || i2_ > n || j2_ > n)
    throw std::invalid_argument("cell coordinates exceed side length");
}

MagicMatrix build_magic_matrix(int n) {
  if (n < 3) throw std::invalid_argument("side length must be at least 3");
  MagicMatrix m;
  m.n = n;
  m.mat = ExactMatrix(2 * n + 1, n * n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int c = (i - 1) * n + (j - 1);
      m.mat.at(i - 1, c) = 1;                       // row constraint
      if (j <= n - 1) m.mat.at(n + j - 1, c) = 1;   // column constraint (last omitted)
      if (i == j) m.mat.at(2 * n - 1, c) = 1;       // main diagonal
      if (i + j == n + 1) m.mat.at(2 * n, c) = 1;   // antidiagonal
    }
  }
  return m;
}

std::vector<Int> column(const MagicMatrix& m, const ColumnRef& ref) {
  if (ref.i() < 1 || ref.i() > m.n) throw std::invalid_argument("block index out of range");
  return m.mat.column(ref.flat(m.n));
}

ExactMatrix contracted_matrix(const MagicMatrix& m, const CellMerge& merge) {
  if (merge.is_none())
    throw std::invalid_argument("identity merge is not a contraction");
  merge.check_range(m.n);
  const int src = (merge.i2() - 1) * m.n + (merge.j2() - 1);
  const int dst = (merge.i1() - 1) * m.n + (merge.j1() - 1);
  ExactMatrix out(m.rows(), m.cols() - 1);
  for (int r = 0; r < m.rows(); ++r) {
    int oc = 0;
    for (int c = 0; c < m.cols(); ++c) {
      if (c == src) continue;
      out.at(r, oc) = m.mat.at(r, c);
      if (c == dst) out.at(r, oc) += m.mat.at(r, src);
      ++oc;
    }
  }
  return out;
}

bool jacobian_rank_check(int n, int d, const Rat& z) {
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  if (z == 0) throw std::invalid_argument("the constant point must be nonzero");
  const MagicMatrix m = build_magic_matrix(n);
  Rat zpow = 1;
  for (int k = 0; k < d - 1; ++k) zpow *= z;
  const Rat scale = Rat(d) * zpow;

  // Entrywise derivative of each diagonal monomial at the constant point.
  std::vector<Rat> jac(static_cast<size_t>(m.rows()) * m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      jac[static_cast<size_t>(r) * m.cols() + c] = Rat(m.mat.at(r, c)) * Rat(d) * zpow;

  // Same matrix as the scalar multiple of the coefficient matrix?
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (jac[static_cast<size_t>(r) * m.cols() + c] != scale * Rat(m.mat.at(r, c)))
        return false;

  const ExactMatrix cleared = ExactMatrix::from_rational(m.rows(), m.cols(), jac);
  return rank(cleared) == m.rows();
}

SingularWitness singular_pencil_witness(int n) {
  if (n < 3) throw std::invalid_argument("side length must be at least 3");
  const MagicMatrix m = build_magic_matrix(n);
  SingularWitness w;
  w.beta.assign(m.rows(), Rat(0));
  w.beta[0] = 1;
  for (int c = 0; c < m.cols(); ++c) {
    Rat dot = 0;
    for (int r = 0; r < m.rows(); ++r)
      if (w.beta[r] != 0) dot += w.beta[r] * Rat(m.mat.at(r, c));
    if (dot == 0) ++w.count;
  }
  return w;
}

}  // namespace msq
