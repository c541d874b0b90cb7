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

#include "msq/psi.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>

#include "msq/errors.hpp"

namespace msq::psi {

namespace {

using Clock = std::chrono::steady_clock;

struct OracleState {
  const ExactMatrix* m = nullptr;
  std::uint64_t nodes = 0;
  std::uint64_t max_nodes = 0;
  Clock::time_point start;
  double max_seconds = 0.0;

  void charge() {
    ++nodes;
    if (nodes > max_nodes) throw BudgetExceeded("independence-oracle call cap reached");
    if ((nodes & 0x3ff) == 0 &&
        std::chrono::duration<double>(Clock::now() - start).count() > max_seconds)
      throw BudgetExceeded("wall-clock budget reached");
  }

  // nullopt: `extra` is independent of `set` (the set can absorb it).
  // Otherwise the fundamental circuit: the members carrying a nonzero
  // coefficient when `extra` is written in the set's span.
  std::optional<std::vector<int>> circuit(const std::vector<int>& set, int extra) {
    charge();
    const auto lambda = combination_in_span(*m, set, m->column(extra));
    if (!lambda) return std::nullopt;
    std::vector<int> out;
    for (size_t k = 0; k < set.size(); ++k)
      if ((*lambda)[k] != 0) out.push_back(set[k]);
    return out;
  }
};

// One round of matroid partitioning: grow k disjoint independent sets to
// maximum total size by breadth-first augmenting exchange paths.  Returns the
// sets; the caller checks whether every set reached basis size.
std::vector<std::vector<int>> partition_into(const ExactMatrix& m, int k,
                                             OracleState& oracle) {
  const int elements = m.cols;
  std::vector<std::vector<int>> sets(k);
  std::vector<int> member(elements, -1);

  for (int x = 0; x < elements; ++x) {
    // BFS over the exchange digraph from x; a sink is any (element, set) pair
    // whose set accepts the element directly.
    std::vector<int> parent(elements, -2);  // -2 unvisited, -1 root
    parent[x] = -1;
    std::deque<int> queue{x};
    int sink_elem = -1, sink_set = -1;
    while (!queue.empty() && sink_elem < 0) {
      const int z = queue.front();
      queue.pop_front();
      for (int j = 0; j < k && sink_elem < 0; ++j) {
        if (member[z] == j) continue;
        const auto circuit = oracle.circuit(sets[j], z);
        if (!circuit) {
          sink_elem = z;
          sink_set = j;
          break;
        }
        for (int y : *circuit) {
          if (parent[y] == -2) {
            parent[y] = z;
            queue.push_back(y);
          }
        }
      }
    }
    if (sink_elem < 0) continue;  // x is not augmentable; leave it unplaced

    // Walk the path back to the root: each element moves into the set vacated
    // by its successor, the sink element moves into the accepting set.
    int elem = sink_elem;
    int into = sink_set;
    while (elem >= 0) {
      const int prev_set = member[elem];
      if (prev_set >= 0)
        std::erase(sets[prev_set], elem);
      sets[into].push_back(elem);
      member[elem] = into;
      into = prev_set;
      elem = parent[elem];
    }
  }
  for (auto& s : sets) std::sort(s.begin(), s.end());
  return sets;
}

void recertify_family(const ExactMatrix& m, const std::vector<std::vector<int>>& sets,
                      int set_size) {
  std::vector<bool> used(m.cols, false);
  for (const auto& s : sets) {
    if (static_cast<int>(s.size()) != set_size)
      throw CertificationError("witness set has wrong size");
    if (!is_independent_columns(m, s))
      throw CertificationError("witness set failed re-certification");
    for (int c : s) {
      if (used[c]) throw CertificationError("witness sets are not disjoint");
      used[c] = true;
    }
  }
}

}  // namespace

int packing_upper_bound(const ExactMatrix& m) {
  if (m.rows <= 0) throw std::invalid_argument("matrix must have rows");
  return m.cols / m.rows;
}

PackingResult exact_packing(const ExactMatrix& m, const Budget& budget) {
  PackingResult res;
  res.set_size = m.rows;
  res.upper = packing_upper_bound(m);
  if (m.cols > budget.max_cols)
    throw BudgetExceeded("column count exceeds the configured search cap");
  if (rank(m) != m.rows) throw std::invalid_argument("matrix must have full row rank");

  OracleState oracle{.m = &m,
                     .nodes = 0,
                     .max_nodes = budget.max_nodes,
                     .start = Clock::now(),
                     .max_seconds = budget.max_seconds};
  bool budget_hit = false;
  for (int k = 1; k <= res.upper; ++k) {
    std::vector<std::vector<int>> sets;
    try {
      sets = partition_into(m, k, oracle);
    } catch (const BudgetExceeded&) {
      budget_hit = true;
      break;
    }
    const int total = std::accumulate(
        sets.begin(), sets.end(), 0,
        [](int acc, const std::vector<int>& s) { return acc + static_cast<int>(s.size()); });
    if (total == k * m.rows) {
      recertify_family(m, sets, m.rows);
      res.lower = k;
      res.witness = std::move(sets);
    } else {
      // k disjoint bases are impossible, hence so are more than k.
      res.exact = res.lower;
      break;
    }
    if (k == res.upper) res.exact = res.lower;
  }
  res.spent.nodes = oracle.nodes;
  res.spent.seconds = std::chrono::duration<double>(Clock::now() - oracle.start).count();
  if (budget_hit) res.exact.reset();
  return res;
}

PackingResult greedy_packing(const ExactMatrix& m, std::span<const int> order,
                             const std::vector<std::vector<int>>* warm_start) {
  PackingResult res;
  res.set_size = m.rows;
  res.upper = packing_upper_bound(m);
  const auto start = Clock::now();

  std::vector<int> scan(order.begin(), order.end());
  if (scan.empty()) {
    scan.resize(m.cols);
    std::iota(scan.begin(), scan.end(), 0);
  }
  for (int c : scan)
    if (c < 0 || c >= m.cols) throw std::invalid_argument("scan order index out of range");

  std::vector<bool> used(m.cols, false);
  if (warm_start) {
    recertify_family(m, *warm_start, m.rows);
    for (const auto& s : *warm_start) {
      res.witness.push_back(s);
      for (int c : s) used[c] = true;
    }
  }

  for (;;) {
    IncrementalBasis basis(m.rows);
    std::vector<int> current;
    for (int c : scan) {
      if (used[c]) continue;
      ++res.spent.nodes;
      if (basis.insert(m.column(c))) {
        current.push_back(c);
        if (static_cast<int>(current.size()) == m.rows) break;
      }
    }
    if (static_cast<int>(current.size()) < m.rows) break;
    for (int c : current) used[c] = true;
    res.witness.push_back(std::move(current));
  }
  recertify_family(m, res.witness, m.rows);
  res.lower = static_cast<int>(res.witness.size());
  res.spent.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return res;
}

MergeSurvivorsReport merge_survivors(int n, const CellMerge& merge,
                                     bool with_fresh_greedy) {
  if (merge.is_none()) throw std::invalid_argument("merge must identify two cells");
  merge.check_range(n);
  MergeSurvivorsReport rep;
  rep.n = n;
  rep.required = std::max(0, n / 4 - 3);

  const construction::Partition part = construction::assemble_partition(n);
  const MagicMatrix mm = build_magic_matrix(n);
  const ExactMatrix merged = contracted_matrix(mm, merge);

  const ColumnRef deleted(n, merge.i2(), merge.j2());
  const int deleted_flat = deleted.flat(n);

  std::vector<std::vector<int>> mapped;
  for (const construction::PartSet& ps : part.sets) {
    if (ps.columns.contains(deleted)) {
      rep.dropped.push_back(ps.ell);
      continue;
    }
    ++rep.survivors;
    // The kept cell's column stays at its own index, now holding the sum of
    // the two merged columns; later indices shift down by one.
    std::vector<int> cols;
    for (const ColumnRef& c : ps.columns) {
      int f = c.flat(n);
      cols.push_back(f < deleted_flat ? f : f - 1);
    }
    mapped.push_back(std::move(cols));
  }

  rep.disjoint_after_map = true;
  std::vector<bool> used(merged.cols, false);
  for (const auto& s : mapped)
    for (int c : s) {
      if (used[c]) rep.disjoint_after_map = false;
      used[c] = true;
    }

  for (const auto& s : mapped)
    if (is_independent_columns(merged, s)) ++rep.certified;

  rep.ok = rep.disjoint_after_map && rep.certified >= rep.required;
  if (with_fresh_greedy) {
    // Best of a few fixed scan orders; the natural order tends to exhaust
    // whole blocks on the first set and stall.
    int best = greedy_packing(merged).lower;
    std::vector<int> order(merged.cols);
    std::iota(order.begin(), order.end(), 0);
    for (std::uint64_t seed : {1, 2, 3}) {
      std::mt19937_64 rng(seed);
      std::shuffle(order.begin(), order.end(), rng);
      best = std::max(best, greedy_packing(merged, order).lower);
    }
    rep.fresh_greedy = best;
  }
  return rep;
}

}  // namespace msq::psi
