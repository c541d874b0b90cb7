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

#include <complex>
#include <cstdint>

#include "msq/magic.hpp"

namespace msq::analytic {

struct AnalyticParams {
  int n = 0;
  int d = 1;
  Int mu = 1;  // target line sum
};

// Complete exponential sum S(q, a) = sum_{x=1..q} e^(2*pi*i * a*x^d / q).
// The power x^d and the product a*x^d are reduced modulo q in integer
// arithmetic; only the final exponential is floating point.  Values are
// cached per (q, a mod q, d).
std::complex<double> gauss_sum(long q, long a, int d);

struct SeriesTerm {
  double value = 0.0;          // real part of the normalized sum
  double imag_residual = 0.0;  // |imaginary part|; must vanish by conjugation
  std::uint64_t tuples = 0;    // coefficient vectors enumerated
};

// The q-th term of the singular series:
//   q^(-n^2) * sum over coefficient vectors a in [1,q]^(2n+1) with
//   gcd(q, a_1, ..., a_{2n+1}) = 1 of
//     prod_{columns c} S(q, a.c) * e^(-2*pi*i * mu * sum(a) / q).
// Enumerates q^(2n+1) tuples; throws BudgetExceeded when that exceeds the
// budget.  Accumulation is compensated in extended precision.
SeriesTerm series_term(const AnalyticParams& p, long q, std::uint64_t budget);

struct LocalFactor {
  double value = 0.0;
  double last_term_abs = 0.0;  // truncation indicator
};

// Truncated local factor 1 + sum_{k=1..kmax} of the series terms at q = p^k.
LocalFactor local_factor_partial(const AnalyticParams& p, long prime, int kmax,
                                 std::uint64_t budget);

// Exact number of solutions x in (Z/p^m)^{n^2} of all 2n+1 line equations
// sum x_c^d = mu (mod p^m).  Direct enumeration of q^(n^2) grids with
// incremental line sums; throws BudgetExceeded beyond the budget.
Int congruence_solution_count(const AnalyticParams& p, long prime, int m,
                              std::uint64_t budget);

// Oscillatory archimedean density factor I(beta) = integral over [0,1] of
// e^(2*pi*i * beta * xi^d), by adaptive quadrature to absolute tolerance
// 1e-10.
std::complex<double> singular_integral_1d(double beta, int d);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double zeta = 0.0;  // recovered scale parameter (mu / X^d = n * zeta^d)
  std::uint64_t samples = 0;
};

// Monte Carlo estimate of the full singular integral through its triangle
// window representation: integral over [0,1]^(n^2) of
//   prod_{i=1..2n+1} Phi_L(F_i(x) - mu/X^d),  Phi_L(t) = L*(1 - L|t|)^+.
// Requires the recovered zeta = (mu / (n X^d))^(1/d) to lie in
// [eps0, 1 - eps0].  Explicitly approximate: the standard error is part of
// the result.  Deterministic for a fixed seed.
McEstimate singular_integral_estimate(const AnalyticParams& p, double L,
                                      std::uint64_t samples, double X,
                                      std::uint64_t seed, double eps0 = 0.01);

}  // namespace msq::analytic
