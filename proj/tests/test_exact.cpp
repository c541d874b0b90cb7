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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "msq/exact.hpp"
#include "msq/magic.hpp"
#include "support/oracles.hpp"

using namespace msq;

namespace {

ExactMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  ExactMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = dist(rng);
  return m;
}

}  // namespace

TEST_CASE("rank of the coefficient matrix equals 2n+1") {
  CHECK(rank(build_magic_matrix(4).mat) == 9);
  CHECK(rank(build_magic_matrix(3).mat) == 7);
  CHECK(rank(build_magic_matrix(3).mat) == testing::rank_rational_oracle(build_magic_matrix(3).mat));
}

TEST_CASE("rank of the zero matrix is zero") {
  ExactMatrix z(3, 3);
  CHECK(rank(z) == 0);
  CHECK(nullspace_dim(z) == 3);
}

TEST_CASE("nullspace dimension is cols minus rank") {
  CHECK(nullspace_dim(build_magic_matrix(4).mat) == 16 - 9);
  ExactMatrix id(5, 5);
  for (int k = 0; k < 5; ++k) id.at(k, k) = 1;
  CHECK(nullspace_dim(id) == 0);
  ExactMatrix z(2, 6);
  CHECK(nullspace_dim(z) == 6);
}

TEST_CASE("fraction-free rank agrees with the rational oracle on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 7);
    const int cols = 1 + static_cast<int>(rng() % 7);
    const ExactMatrix m = random_matrix(rng, rows, cols, -4, 4);
    CHECK(rank(m) == testing::rank_rational_oracle(m));
  }
}

TEST_CASE("rank is invariant under permutations and transposition") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int rows = 2 + static_cast<int>(rng() % 6);
    const int cols = 2 + static_cast<int>(rng() % 6);
    const ExactMatrix m = random_matrix(rng, rows, cols, -3, 3);
    const int base = rank(m);
    CHECK(rank(m.transposed()) == base);

    std::vector<int> rp(rows), cp(cols);
    for (int k = 0; k < rows; ++k) rp[k] = k;
    for (int k = 0; k < cols; ++k) cp[k] = k;
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    ExactMatrix p(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) p.at(r, c) = m.at(rp[r], cp[c]);
    CHECK(rank(p) == base);
  }
}

TEST_CASE("independence of selected columns") {
  const MagicMatrix m = build_magic_matrix(8);
  SUBCASE("a single nonzero column is independent") {
    const std::vector<int> one{0};
    CHECK(is_independent_columns(m.mat, one));
  }
  SUBCASE("duplicate references are rejected") {
    const std::vector<int> dup{0, 0};
    CHECK_THROWS_AS((void)is_independent_columns(m.mat, dup), std::invalid_argument);
  }
  SUBCASE("two columns of one block share the block row, three are dependent with their difference pattern") {
    // All columns of block 1 contain e_1; any 2n+2 columns must be dependent.
    std::vector<int> all;
    for (int c = 0; c < 2 * 8 + 2; ++c) all.push_back(c);
    CHECK_FALSE(is_independent_columns(m.mat, all));
  }
}

TEST_CASE("combination_in_span recovers exact coefficients") {
  const MagicMatrix m = build_magic_matrix(5);
  // Columns 0 and 1 plus target = col0 + 2*col1.
  std::vector<Int> target(m.rows());
  for (int r = 0; r < m.rows(); ++r) target[r] = m.mat.at(r, 0) + 2 * m.mat.at(r, 1);
  const std::vector<int> basis{0, 1};
  const auto lambda = combination_in_span(m.mat, basis, target);
  REQUIRE(lambda.has_value());
  CHECK((*lambda)[0] == 1);
  CHECK((*lambda)[1] == 2);

  const auto none = combination_in_span(m.mat, basis, m.mat.column(7));
  CHECK_FALSE(none.has_value());
}

TEST_CASE("chain system is square and regular in the strict range") {
  SUBCASE("16x16 with trivial nullspace") {
    const ExactMatrix sys = chain_system(8, 2, 4, 7);
    CHECK(sys.rows == 16);
    CHECK(sys.cols == 16);
    CHECK(nullspace_dim(sys) == 0);
  }
  SUBCASE("odd side length") {
    CHECK(nullspace_dim(chain_system(9, 2, 4, 8)) == 0);
  }
  SUBCASE("dropping the anchor row caps the rank at 2n-1") {
    const ExactMatrix sys = chain_system(8, 2, 4, 7);
    ExactMatrix trimmed(sys.rows - 1, sys.cols);
    for (int r = 0; r + 1 < sys.rows; ++r)
      for (int c = 0; c < sys.cols; ++c) trimmed.at(r, c) = sys.at(r, c);
    CHECK(rank(trimmed) <= 15);
  }
  SUBCASE("index constraints are enforced") {
    CHECK_THROWS_AS(chain_system(8, 1, 4, 7), std::invalid_argument);  // y_0 undefined
    CHECK_THROWS_AS(chain_system(8, 2, 2, 7), std::invalid_argument);
    CHECK_THROWS_AS(chain_system(8, 2, 4, 5), std::invalid_argument);
    CHECK_THROWS_AS(chain_system(8, 2, 4, 9), std::invalid_argument);
  }
  SUBCASE("the boundary i2 = n builds through the wrap x_{n+1} = x_1") {
    const ExactMatrix sys = chain_system(8, 2, 4, 8);
    CHECK(sys.rows == 16);
    CHECK(sys.cols == 16);
  }
}

TEST_CASE("chain system nullspace is trivial across the admissible sweep") {
  for (int n = 8; n <= 12; ++n)
    for (int i1 = 2; i1 < n; ++i1)
      for (int m = i1 + 1; m < n; ++m)
        for (int i2 = m + 2; i2 < n; ++i2) {
          CAPTURE(n);
          CAPTURE(i1);
          CAPTURE(m);
          CAPTURE(i2);
          CHECK(nullspace_dim(chain_system(n, i1, m, i2)) == 0);
        }
}

TEST_CASE("rational input rows are cleared to integers without changing rank") {
  std::vector<Rat> entries = {Rat(1, 2), Rat(1, 3), Rat(2, 3), Rat(1, 6),
                              Rat(0),    Rat(5, 7), Rat(1),    Rat(0)};
  const ExactMatrix m = ExactMatrix::from_rational(2, 4, entries);
  for (const Int& v : m.a) CHECK(v.fits_slong_p());
  CHECK(rank(m) == 2);
  // First row scaled by lcm(2,3,6) = 6: (3, 2, 4, 1).
  CHECK(m.at(0, 0) == 3);
  CHECK(m.at(0, 1) == 2);
  CHECK(m.at(0, 2) == 4);
  CHECK(m.at(0, 3) == 1);
}
