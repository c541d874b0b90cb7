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

#include "msq/squares.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "msq/errors.hpp"

namespace msq::squares {

namespace {

Int power(const Int& base, int d) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(d));
  return out;
}

}  // namespace

VerifyResult verify_square(const SquareGrid& g) {
  VerifyResult res;
  if (g.n < 1 || g.entries.size() != static_cast<size_t>(g.n) * g.n)
    throw std::invalid_argument("grid dimensions do not match entry count");
  for (const Int& e : g.entries)
    if (e < 1) res.failures.push_back("nonpositive entry");

  std::vector<Int> pw(g.entries.size());
  for (size_t k = 0; k < g.entries.size(); ++k) pw[k] = power(g.entries[k], g.d);
  const auto pat = [&](int i, int j) -> const Int& {
    return pw[static_cast<size_t>(i - 1) * g.n + (j - 1)];
  };

  // The first row fixes the reference line value.
  res.mu = 0;
  for (int j = 1; j <= g.n; ++j) res.mu += pat(1, j);

  for (int i = 1; i <= g.n; ++i) {
    Int s = 0;
    for (int j = 1; j <= g.n; ++j) s += pat(i, j);
    if (s != res.mu) res.failures.push_back("row " + std::to_string(i));
  }
  for (int j = 1; j <= g.n; ++j) {
    Int s = 0;
    for (int i = 1; i <= g.n; ++i) s += pat(i, j);
    if (s != res.mu) res.failures.push_back("column " + std::to_string(j));
  }
  Int diag = 0, anti = 0;
  for (int i = 1; i <= g.n; ++i) {
    diag += pat(i, i);
    anti += pat(i, g.n + 1 - i);
  }
  if (diag != res.mu) res.failures.push_back("main diagonal");
  if (anti != res.mu) res.failures.push_back("antidiagonal");

  std::vector<Int> sorted = g.entries;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    res.failures.push_back("distinctness");

  res.ok = res.failures.empty();
  return res;
}

namespace {

struct CountState {
  int n;
  long X;
  Int mu;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<Int> powers;              // [0..X], powers[v] = v^d
  std::vector<std::vector<int>> rows;   // all base rows with power sum mu
  std::vector<int> grid;                // chosen bases, row-major
  std::vector<Int> col_sum;
  Int diag_sum = 0, anti_sum = 0;
  long long total = 0, distinct = 0;

  void charge() {
    if (++nodes > budget) throw BudgetExceeded("enumeration node cap reached");
  }

  bool feasible_partial(int next_row) {
    const int remaining = n - next_row;
    const Int lo = remaining * powers[1];
    const Int hi = remaining * powers[X];
    for (int j = 0; j < n; ++j)
      if (col_sum[j] + lo > mu || col_sum[j] + hi < mu) return false;
    // One diagonal cell arrives per remaining row.
    if (diag_sum + lo > mu || diag_sum + hi < mu) return false;
    if (anti_sum + lo > mu || anti_sum + hi < mu) return false;
    return true;
  }

  void place(int row) {
    if (row == n) {
      for (int j = 0; j < n; ++j)
        if (col_sum[j] != mu) return;
      if (diag_sum != mu || anti_sum != mu) return;
      ++total;
      std::vector<int> sorted = grid;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) ++distinct;
      return;
    }
    for (const auto& cand : rows) {
      charge();
      for (int j = 0; j < n; ++j) {
        grid[row * n + j] = cand[j];
        col_sum[j] += powers[cand[j]];
      }
      diag_sum += powers[cand[row]];
      anti_sum += powers[cand[n - 1 - row]];
      if (feasible_partial(row + 1)) place(row + 1);
      for (int j = 0; j < n; ++j) col_sum[j] -= powers[cand[j]];
      diag_sum -= powers[cand[row]];
      anti_sum -= powers[cand[n - 1 - row]];
    }
  }
};

}  // namespace

CountResult count_solutions(int n, int d, long X, const Int& mu, std::uint64_t budget) {
  if (n < 1 || d < 1 || X < 1) throw std::invalid_argument("n, d, X must be positive");
  CountState st;
  st.n = n;
  st.X = X;
  st.mu = mu;
  st.budget = budget;
  st.powers.resize(X + 1);
  for (long v = 0; v <= X; ++v) {
    Int b = v;
    mpz_pow_ui(st.powers[v].get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(d));
  }

  // All rows with the required power sum, by direct odometer over [1, X]^n.
  std::vector<int> row(n, 1);
  for (;;) {
    st.charge();
    Int s = 0;
    for (int v : row) s += st.powers[v];
    if (s == mu) st.rows.push_back(row);
    int k = 0;
    while (k < n && row[k] == X) row[k++] = 1;
    if (k == n) break;
    ++row[k];
  }

  st.grid.assign(static_cast<size_t>(n) * n, 0);
  st.col_sum.assign(n, Int(0));
  st.place(0);

  CountResult out;
  out.total = st.total;
  out.distinct = st.distinct;
  out.degenerate = st.total - st.distinct;
  out.nodes = st.nodes;
  return out;
}

long long count_solutions(int n, int d, long X, const Int& mu, bool distinct,
                          std::uint64_t budget) {
  const CountResult r = count_solutions(n, d, X, mu, budget);
  return distinct ? r.distinct : r.total;
}

SquareGrid parse_grid(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  std::string raw;
  int lineno = 0;
  std::vector<int> linenos;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    lines.push_back(raw);
    linenos.push_back(lineno);
  }
  if (lines.empty()) throw std::runtime_error("empty grid file");

  SquareGrid g;
  {
    std::istringstream head(lines[0]);
    if (!(head >> g.n >> g.d) || g.n < 1 || g.d < 1)
      throw std::runtime_error("line " + std::to_string(linenos[0]) +
                               ": header must be \"n d\" with positive values");
    std::string extra;
    if (head >> extra)
      throw std::runtime_error("line " + std::to_string(linenos[0]) +
                               ": trailing tokens after header");
  }
  if (static_cast<int>(lines.size()) != g.n + 1)
    throw std::runtime_error("expected " + std::to_string(g.n) + " rows, found " +
                             std::to_string(lines.size() - 1));
  for (int i = 1; i <= g.n; ++i) {
    std::istringstream ls(lines[i]);
    std::string tok;
    int found = 0;
    while (ls >> tok) {
      Int v;
      if (mpz_set_str(v.get_mpz_t(), tok.c_str(), 10) != 0)
        throw std::runtime_error("line " + std::to_string(linenos[i]) +
                                 ": not an integer: " + tok);
      if (v < 1)
        throw std::runtime_error("line " + std::to_string(linenos[i]) +
                                 ": entries must be positive");
      ++found;
      if (found > g.n)
        throw std::runtime_error("line " + std::to_string(linenos[i]) +
                                 ": too many entries (expected " + std::to_string(g.n) + ")");
      g.entries.push_back(v);
    }
    if (found != g.n)
      throw std::runtime_error("line " + std::to_string(linenos[i]) + ": expected " +
                               std::to_string(g.n) + " entries, found " +
                               std::to_string(found));
  }
  return g;
}

std::string emit_grid(const SquareGrid& g) {
  std::ostringstream out;
  out << g.n << ' ' << g.d << '\n';
  for (int i = 1; i <= g.n; ++i) {
    for (int j = 1; j <= g.n; ++j) {
      if (j > 1) out << ' ';
      out << g.at(i, j).get_str();
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace msq::squares
