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

#include "msq/construction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "msq/errors.hpp"

namespace msq::construction {

std::set<int> block_view(const ColumnSet& s, int i) {
  std::set<int> out;
  for (const ColumnRef& c : s)
    if (c.i() == i) out.insert(c.j());
  return out;
}

Params params(int n) {
  if (n < 8) throw std::invalid_argument("construction requires n >= 8");
  Params p;
  p.n = n;
  p.eps = (n % 2 == 0) ? 1 : 0;
  p.N = (n - 1 + p.eps) / 2 - 2;
  p.zmax = n / 4 - 1;
  if (p.N < p.zmax || p.zmax < 1)
    throw std::logic_error("strip count must dominate the packing count");
  return p;
}

ColumnSet diagonal_strip(int n, int ell) {
  const Params p = params(n);
  if (ell < 0 || ell > p.N) throw std::invalid_argument("strip index out of [0, N]");
  ColumnSet s;
  for (int i = 1; i <= n; ++i) s.insert(ColumnRef(n, i, i + 2 * ell));
  const ColumnRef skipped(n, n - 2 * ell - 1, n);  // = c_{n-2ell-1, (n-2ell-1)+2ell+1}
  for (int i = 1; i <= n; ++i) {
    const ColumnRef c(n, i, i + 2 * ell + 1);
    if (c != skipped) s.insert(c);
  }
  if (s.size() != static_cast<size_t>(2 * n - 1))
    throw std::logic_error("diagonal strip has wrong size");
  return s;
}

std::pair<ColumnRef, ColumnRef> strip_diagonal_hits(int n, int ell) {
  const Params p = params(n);
  if (ell < 1 || ell > p.N) throw std::invalid_argument("strip index out of [1, N]");
  const int half = (n + 1 - p.eps) / 2;
  return {ColumnRef(n, half - ell, half + p.eps + ell), ColumnRef(n, n - ell, ell + 1)};
}

int swap_block_low(int n, int ell) { return (n + 1 - params(n).eps) / 2 - ell; }

int swap_block_high(int n, int ell) {
  params(n);  // validates n
  return n - ell;
}

std::vector<int> admissible_strips(int n) {
  const Params p = params(n);
  std::vector<int> z;
  for (int ell = 1; ell <= p.zmax; ++ell) z.push_back(ell);
  const int half = (n + 1 - p.eps) / 2;
  for (int m : z)
    for (int ell : z)
      for (int delta : {-1, 0, 1}) {
        int diff = half - (2 * (m - ell) + delta);
        diff %= n;
        if (diff == 0)
          throw std::logic_error("strip spacing property violated at n=" +
                                 std::to_string(n));
      }
  return z;
}

ColumnSet repaired_strip(int n, int ell) {
  const std::vector<int> z = admissible_strips(n);
  if (std::find(z.begin(), z.end(), ell) == z.end()) {
    if (ell == n / 4 || ell == n / 4 + 1)
      throw std::invalid_argument(
          "strip index " + std::to_string(ell) +
          " is excluded: its replacement columns would meet the diagonal rows");
    throw std::invalid_argument("strip index not admissible");
  }
  const int i1 = swap_block_low(n, ell);
  const int i2 = swap_block_high(n, ell);
  if (!(1 < i1 && i1 < n - 2 * ell - 1 && n - 2 * ell < i2 && i2 < n))
    throw std::logic_error("swap blocks fell outside their required interleaving");

  ColumnSet s = diagonal_strip(n, ell);
  const std::vector<ColumnRef> removed = {
      ColumnRef(n, i1, i1 + 2 * ell), ColumnRef(n, i1, i1 + 2 * ell + 1),
      ColumnRef(n, i2, i2 + 2 * ell), ColumnRef(n, i2, i2 + 2 * ell + 1)};
  const std::vector<ColumnRef> added = {
      ColumnRef(n, i1, i2 + 2 * ell), ColumnRef(n, i1, i2 + 2 * ell + 1),
      ColumnRef(n, i2, i1 + 2 * ell), ColumnRef(n, i2, i1 + 2 * ell + 1)};
  for (const ColumnRef& c : removed)
    if (s.erase(c) != 1) throw std::logic_error("column to remove was not in the strip");
  for (const ColumnRef& c : added)
    if (!s.insert(c).second) throw std::logic_error("replacement column already present");
  if (s.size() != static_cast<size_t>(2 * n - 1))
    throw std::logic_error("repaired strip has wrong size");

  // No member may touch the two diagonal rows.
  for (const ColumnRef& c : s)
    if (c.i() == c.j() || c.i() + c.j() == n + 1)
      throw std::logic_error("repaired strip still meets a diagonal row");

  // The swapped blocks carry exactly the other block's positions.
  const auto norm = [&](int j) { return ColumnRef(n, 1, j).j(); };
  if (block_view(s, i1) != std::set<int>{norm(i2 + 2 * ell), norm(i2 + 2 * ell + 1)} ||
      block_view(s, i2) != std::set<int>{norm(i1 + 2 * ell), norm(i1 + 2 * ell + 1)})
    throw std::logic_error("swap blocks carry unexpected positions");
  return s;
}

std::pair<ColumnSet, ColumnSet> diagonal_carriers(int n) {
  if (n < 3) throw std::invalid_argument("side length must be at least 3");
  ColumnSet s1, s2;
  for (int i = 1; i <= n; ++i) s1.insert(ColumnRef(n, i, i));
  for (int i = 1; i <= n; ++i) {
    const ColumnRef c(n, i, n + 1 - i);
    if (!s1.contains(c)) s2.insert(c);
  }
  return {s1, s2};
}

Partition assemble_partition(int n) {
  const MagicMatrix mm = build_magic_matrix(n);
  const auto [s1, s2] = diagonal_carriers(n);
  Partition out;
  out.n = n;
  for (int ell : admissible_strips(n)) {
    PartSet ps{.ell = ell,
               .columns = {},
               .a = ColumnRef(n, ell, ell),
               .b = ColumnRef(n, ell, n + 1 - ell),
               .removed = {},
               .added = {}};
    const int i1 = swap_block_low(n, ell);
    const int i2 = swap_block_high(n, ell);
    ps.removed = {ColumnRef(n, i1, i1 + 2 * ell), ColumnRef(n, i1, i1 + 2 * ell + 1),
                  ColumnRef(n, i2, i2 + 2 * ell), ColumnRef(n, i2, i2 + 2 * ell + 1)};
    ps.added = {ColumnRef(n, i1, i2 + 2 * ell), ColumnRef(n, i1, i2 + 2 * ell + 1),
                ColumnRef(n, i2, i1 + 2 * ell), ColumnRef(n, i2, i1 + 2 * ell + 1)};
    ps.columns = repaired_strip(n, ell);
    if (!s1.contains(ps.a) || !s2.contains(ps.b))
      throw CertificationError("diagonal carriers fell outside their families");
    if (!ps.columns.insert(ps.a).second || !ps.columns.insert(ps.b).second)
      throw CertificationError("carrier column collided with the repaired strip");
    if (ps.columns.size() != static_cast<size_t>(2 * n + 1))
      throw CertificationError("assembled set has wrong size");
    std::vector<int> flat;
    for (const ColumnRef& c : ps.columns) flat.push_back(c.flat(n));
    if (!is_independent_columns(mm.mat, flat))
      throw CertificationError("assembled set failed the independence certificate at ell=" +
                               std::to_string(ell));
    out.sets.push_back(std::move(ps));
  }
  for (size_t u = 0; u < out.sets.size(); ++u)
    for (size_t v = u + 1; v < out.sets.size(); ++v)
      for (const ColumnRef& c : out.sets[u].columns)
        if (out.sets[v].columns.contains(c))
          throw CertificationError("assembled sets are not disjoint");
  if (out.sets.size() != static_cast<size_t>(n / 4 - 1))
    throw CertificationError("unexpected number of assembled sets");
  out.certified = true;
  return out;
}

VerificationReport verify_partition(const MagicMatrix& m, const Partition& p) {
  VerificationReport rep;
  rep.n = p.n;
  const size_t want = static_cast<size_t>(2 * m.n + 1);
  for (const PartSet& ps : p.sets) {
    SetReport sr;
    sr.ell = ps.ell;
    sr.size = ps.columns.size();
    sr.size_ok = (sr.size == want);
    std::vector<int> flat;
    for (const ColumnRef& c : ps.columns) flat.push_back(c.flat(m.n));
    sr.independent = sr.size_ok && is_independent_columns(m.mat, flat);
    rep.sets.push_back(sr);
  }
  std::vector<std::vector<bool>> collides(p.sets.size(),
                                          std::vector<bool>(p.sets.size(), false));
  rep.pairwise_disjoint = true;
  for (size_t u = 0; u < p.sets.size(); ++u)
    for (size_t v = u + 1; v < p.sets.size(); ++v)
      for (const ColumnRef& c : p.sets[u].columns)
        if (p.sets[v].columns.contains(c)) {
          rep.pairwise_disjoint = false;
          collides[u][v] = collides[v][u] = true;
          break;
        }
  // Valid sets free of collisions with other valid sets form a disjoint
  // independent family, so their count is a sound packing lower bound.
  for (size_t u = 0; u < p.sets.size(); ++u) {
    if (!rep.sets[u].size_ok || !rep.sets[u].independent) continue;
    bool clean = true;
    for (size_t v = 0; v < p.sets.size() && clean; ++v)
      if (v != u && rep.sets[v].size_ok && rep.sets[v].independent && collides[u][v])
        clean = false;
    if (clean) ++rep.implied_packing_lower;
  }
  rep.all_ok = rep.pairwise_disjoint;
  for (const SetReport& sr : rep.sets)
    rep.all_ok = rep.all_ok && sr.size_ok && sr.independent;
  return rep;
}

long n0_threshold(int d) {
  if (d < 2) throw std::invalid_argument("exponent must be at least 2");
  if (d <= 4) {
    const long pow2 = 1L << d;
    const long quad = static_cast<long>(d) * (d + 1);
    return 4 * std::min(pow2, quad) + 20;
  }
  const long double x = static_cast<long double>(d) * (std::log(static_cast<long double>(d)) + 4.20032L);
  const long double c = std::ceil(x);
  // The ceiling must be insensitive to the precision of the logarithm.
  if (c - x < 1e-9L || x - std::floor(x) < 1e-9L)
    throw std::logic_error("ceiling too close to an integer to evaluate reliably");
  return 4 * static_cast<long>(c) + 20;
}

}  // namespace msq::construction
