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

#include "msq/analytic.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>

#include "msq/errors.hpp"

namespace msq::analytic {

namespace {

long mod_pow(long base, int exp, long mod) {
  if (mod == 1) return 0;
  unsigned __int128 acc = 1;
  unsigned __int128 b = static_cast<unsigned long>(((base % mod) + mod) % mod);
  int e = exp;
  while (e > 0) {
    if (e & 1) acc = acc * b % static_cast<unsigned long>(mod);
    b = b * b % static_cast<unsigned long>(mod);
    e >>= 1;
  }
  return static_cast<long>(acc);
}

template <typename T>
struct Kahan {
  T sum{};
  T carry{};
  void add(T x) {
    const T y = x - carry;
    const T t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Nonzero rows of each column of the coefficient matrix, and the cells of
// each row, read off the matrix itself so contracted variants would scan the
// same way.
std::vector<std::vector<int>> nonzero_rows_per_column(const ExactMatrix& m) {
  std::vector<std::vector<int>> out(m.cols);
  for (int c = 0; c < m.cols; ++c)
    for (int r = 0; r < m.rows; ++r)
      if (m.at(r, c) != 0) out[c].push_back(r);
  return out;
}

std::vector<std::vector<int>> cells_per_row(const ExactMatrix& m) {
  std::vector<std::vector<int>> out(m.rows);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      if (m.at(r, c) != 0) out[r].push_back(c);
  return out;
}

long mu_mod(const Int& mu, long q) {
  Int r = mu % q;
  if (r < 0) r += q;
  return r.get_si();
}

void check_params(const AnalyticParams& p) {
  if (p.n < 3) throw std::invalid_argument("side length must be at least 3");
  if (p.d < 1) throw std::invalid_argument("degree must be at least 1");
  if (p.mu < 1) throw std::invalid_argument("target line sum must be positive");
}

}  // namespace

std::complex<double> gauss_sum(long q, long a, int d) {
  if (q < 1) throw std::invalid_argument("modulus must be positive");
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  long am = a % q;
  if (am < 0) am += q;

  static std::map<std::tuple<long, long, int>, std::complex<double>> cache;
  static std::mutex cache_mutex;
  const auto key = std::make_tuple(q, am, d);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  Kahan<double> re, im;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(q);
  for (long x = 1; x <= q; ++x) {
    const long t = static_cast<long>(
        static_cast<unsigned __int128>(am) * mod_pow(x, d, q) % static_cast<unsigned long>(q));
    re.add(std::cos(step * static_cast<double>(t)));
    im.add(std::sin(step * static_cast<double>(t)));
  }
  const std::complex<double> val(re.sum, im.sum);
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(key, val);
  return val;
}

SeriesTerm series_term(const AnalyticParams& p, long q, std::uint64_t budget) {
  check_params(p);
  if (q < 1) throw std::invalid_argument("modulus must be positive");
  const int R = 2 * p.n + 1;
  // Tuple count q^R against the budget.
  Int tuple_count = 1;
  for (int k = 0; k < R; ++k) tuple_count *= q;
  if (tuple_count > Int(budget))
    throw BudgetExceeded("series term at q=" + std::to_string(q) +
                         " needs " + tuple_count.get_str() + " tuples");

  const MagicMatrix mm = build_magic_matrix(p.n);
  const auto col_rows = nonzero_rows_per_column(mm.mat);

  // S(q, r) for every residue class and the phase table for the -mu shift.
  std::vector<std::complex<long double>> s_table(q);
  for (long r = 0; r < q; ++r) {
    const auto v = gauss_sum(q, r, p.d);
    s_table[r] = std::complex<long double>(v.real(), v.imag());
  }
  const long mu_q = mu_mod(p.mu, q);
  std::vector<std::complex<long double>> phase(q);
  for (long t = 0; t < q; ++t) {
    const long double ang =
        -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(mu_q * t % q) / q;
    phase[t] = std::complex<long double>(std::cos(ang), std::sin(ang));
  }

  SeriesTerm out;
  Kahan<long double> re, im;
  std::vector<long> a(R, 1);  // odometer over [1, q]^R
  for (;;) {
    ++out.tuples;
    long g = q;
    for (int k = 0; k < R && g != 1; ++k) g = std::gcd(g, a[k]);
    if (g == 1) {
      long asum = 0;
      for (int k = 0; k < R; ++k) asum += a[k];
      std::complex<long double> prod = phase[asum % q];
      for (const auto& rows : col_rows) {
        long dot = 0;
        for (int r : rows) dot += a[r];
        prod *= s_table[dot % q];
        if (prod.real() == 0.0L && prod.imag() == 0.0L) break;
      }
      re.add(prod.real());
      im.add(prod.imag());
    }
    int k = 0;
    while (k < R && a[k] == q) a[k++] = 1;
    if (k == R) break;
    ++a[k];
  }

  long double norm = 1.0L;
  for (int k = 0; k < p.n * p.n; ++k) norm /= q;
  out.value = static_cast<double>(re.sum * norm);
  out.imag_residual = static_cast<double>(std::fabs(static_cast<double>(im.sum * norm)));
  // The sum is real: coefficient vectors pair off under a -> q - a with
  // conjugate terms.  A residual beyond accumulation noise is a defect here.
  if (out.imag_residual > 1e-9 * std::max(1.0, std::fabs(out.value)))
    throw CertificationError("conjugation symmetry violated in the series term");
  return out;
}

LocalFactor local_factor_partial(const AnalyticParams& p, long prime, int kmax,
                                 std::uint64_t budget) {
  if (prime < 2) throw std::invalid_argument("prime must be at least 2");
  if (kmax < 0) throw std::invalid_argument("truncation order must be nonnegative");
  LocalFactor out;
  out.value = 1.0;
  long q = 1;
  for (int k = 1; k <= kmax; ++k) {
    q *= prime;
    const SeriesTerm term = series_term(p, q, budget);
    out.value += term.value;
    out.last_term_abs = std::fabs(term.value);
  }
  return out;
}

Int congruence_solution_count(const AnalyticParams& p, long prime, int m,
                              std::uint64_t budget) {
  check_params(p);
  if (prime < 2 || m < 1) throw std::invalid_argument("prime power required");
  long q = 1;
  for (int k = 0; k < m; ++k) q *= prime;
  const int cells = p.n * p.n;
  Int grid_count = 1;
  for (int k = 0; k < cells; ++k) grid_count *= q;
  if (grid_count > Int(budget))
    throw BudgetExceeded("congruence count mod " + std::to_string(q) + " needs " +
                         grid_count.get_str() + " grids");

  const MagicMatrix mm = build_magic_matrix(p.n);
  const auto col_rows = nonzero_rows_per_column(mm.mat);
  const int R = mm.rows();
  const long target = mu_mod(p.mu, q);
  std::vector<long> powd(q);
  for (long v = 0; v < q; ++v) powd[v] = mod_pow(v, p.d, q);

  // Incremental odometer: keep every line sum and the number of lines
  // currently hitting the target, updating only the cells that change.
  std::vector<long> x(cells, 0);
  std::vector<long> line(R, 0);
  int lines_ok = 0;
  for (int r = 0; r < R; ++r)
    if (line[r] == target) ++lines_ok;
  const auto bump_line = [&](int r, long delta) {
    if (line[r] == target) --lines_ok;
    line[r] = (line[r] + delta) % q;
    if (line[r] < 0) line[r] += q;
    if (line[r] == target) ++lines_ok;
  };

  Int count = 0;
  for (;;) {
    if (lines_ok == R) ++count;
    int c = 0;
    while (c < cells && x[c] == q - 1) {
      for (int r : col_rows[c]) bump_line(r, powd[0] - powd[q - 1]);
      x[c++] = 0;
    }
    if (c == cells) break;
    for (int r : col_rows[c]) bump_line(r, powd[x[c] + 1] - powd[x[c]]);
    ++x[c];
  }
  return count;
}

namespace {

std::complex<double> unit_phase_integrand(double beta, int d, double xi) {
  double pw = 1.0;
  for (int k = 0; k < d; ++k) pw *= xi;
  const double ang = 2.0 * std::numbers::pi * beta * pw;
  return {std::cos(ang), std::sin(ang)};
}

std::complex<double> adaptive_simpson(double beta, int d, double a, double b,
                                      std::complex<double> fa, std::complex<double> fm,
                                      std::complex<double> fb, std::complex<double> whole,
                                      double tol, int depth) {
  const double m = 0.5 * (a + b);
  const std::complex<double> flm = unit_phase_integrand(beta, d, 0.5 * (a + m));
  const std::complex<double> frm = unit_phase_integrand(beta, d, 0.5 * (m + b));
  const std::complex<double> left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const std::complex<double> right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const std::complex<double> delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(beta, d, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(beta, d, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

std::complex<double> singular_integral_1d(double beta, int d) {
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
  const std::complex<double> fa = unit_phase_integrand(beta, d, 0.0);
  const std::complex<double> fm = unit_phase_integrand(beta, d, 0.5);
  const std::complex<double> fb = unit_phase_integrand(beta, d, 1.0);
  const std::complex<double> whole = 1.0 / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(beta, d, 0.0, 1.0, fa, fm, fb, whole, 1e-10, 48);
}

McEstimate singular_integral_estimate(const AnalyticParams& p, double L,
                                      std::uint64_t samples, double X,
                                      std::uint64_t seed, double eps0) {
  check_params(p);
  if (L <= 0.0 || X <= 0.0 || samples == 0)
    throw std::invalid_argument("window, scale and sample count must be positive");
  if (!(eps0 > 0.0 && eps0 < 0.5)) throw std::invalid_argument("eps0 must lie in (0, 1/2)");

  const double shift = p.mu.get_d() / std::pow(X, p.d);  // = n * zeta^d
  const double zeta = std::pow(shift / p.n, 1.0 / p.d);
  if (!(zeta >= eps0 && zeta <= 1.0 - eps0))
    throw std::invalid_argument("scale parameter zeta outside [eps0, 1-eps0]");

  const MagicMatrix mm = build_magic_matrix(p.n);
  const auto row_cells = cells_per_row(mm.mat);
  const int cells = p.n * p.n;

  std::mt19937_64 rng(seed);
  const auto uniform01 = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  Kahan<double> acc, acc_sq;
  std::vector<double> pw(cells);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int c = 0; c < cells; ++c) {
      const double x = uniform01();
      double v = 1.0;
      for (int k = 0; k < p.d; ++k) v *= x;
      pw[c] = v;
    }
    double prod = 1.0;
    for (const auto& rc : row_cells) {
      double sum = 0.0;
      for (int c : rc) sum += pw[c];
      const double t = std::fabs(sum - shift);
      if (t >= 1.0 / L) {
        prod = 0.0;
        break;
      }
      prod *= L * (1.0 - L * t);
    }
    acc.add(prod);
    acc_sq.add(prod * prod);
  }

  McEstimate out;
  out.samples = samples;
  out.zeta = zeta;
  const double mean = acc.sum / static_cast<double>(samples);
  out.value = mean;
  if (samples > 1) {
    const double var =
        std::max(0.0, acc_sq.sum / static_cast<double>(samples) - mean * mean);
    out.std_error = std::sqrt(var / static_cast<double>(samples - 1));
  }
  return out;
}

}  // namespace msq::analytic
