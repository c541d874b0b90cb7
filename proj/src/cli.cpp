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

#include "msq/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "msq/analytic.hpp"
#include "msq/construction.hpp"
#include "msq/errors.hpp"
#include "msq/io.hpp"
#include "msq/magic.hpp"
#include "msq/psi.hpp"
#include "msq/squares.hpp"

namespace msq::cli {

namespace {

using io::Json;

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

Int parse_mu(const std::string& s) {
  Int v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
    throw CLI::ValidationError("--mu", "not an integer: " + s);
  if (v < 1) throw CLI::ValidationError("--mu", "must be positive");
  return v;
}

Rat parse_rational(const std::string& s) {
  Rat v;
  if (mpq_set_str(v.get_mpq_t(), s.c_str(), 10) != 0)
    throw CLI::ValidationError("--z", "not a rational: " + s);
  if (mpz_sgn(mpq_denref(v.get_mpq_t())) == 0)
    throw CLI::ValidationError("--z", "zero denominator: " + s);
  v.canonicalize();
  return v;
}

CellMerge parse_merge(const std::string& s) {
  int a[4];
  char comma;
  std::istringstream in(s);
  for (int k = 0; k < 4; ++k) {
    if (k && !(in >> comma && comma == ','))
      throw CLI::ValidationError("--sigma", "expected i1,j1,i2,j2");
    if (!(in >> a[k])) throw CLI::ValidationError("--sigma", "expected i1,j1,i2,j2");
  }
  std::string trailing;
  if (in >> trailing) throw CLI::ValidationError("--sigma", "trailing tokens: " + trailing);
  return CellMerge(a[0], a[1], a[2], a[3]);
}

std::uint64_t as_budget(double b) {
  if (b < 1.0) throw CLI::ValidationError("--budget", "must be at least 1");
  return static_cast<std::uint64_t>(b);
}

int cmd_matrix(int n, const std::string& out, bool witness, bool jacobian, int d,
               const std::string& z) {
  if (witness) {
    const SingularWitness w = singular_pencil_witness(n);
    Json j;
    j["n"] = n;
    j["count"] = w.count;
    Json beta = Json::array();
    for (const Rat& b : w.beta) beta.push_back(b.get_str());
    j["beta"] = std::move(beta);
    emit(j);
    return kExitOk;
  }
  if (jacobian) {
    const bool ok = jacobian_rank_check(n, d, parse_rational(z));
    Json j;
    j["n"] = n;
    j["d"] = d;
    j["z"] = z;
    j["full_rank"] = ok;
    emit(j);
    return ok ? kExitOk : kExitVerificationFailure;
  }
  const MagicMatrix m = build_magic_matrix(n);
  if (out == "text") {
    std::cout << io::matrix_to_text(m.mat);
    return kExitOk;
  }
  Json j = io::matrix_to_json(m.mat, n);
  j["rank"] = rank(m.mat);
  emit(j);
  return kExitOk;
}

int cmd_partition(int n, const std::string& out, bool with_report) {
  const construction::Partition p = construction::assemble_partition(n);
  const MagicMatrix m = build_magic_matrix(n);
  const construction::VerificationReport rep = verify_partition(m, p);
  if (out == "text") {
    std::cout << "n=" << n << " sets=" << p.sets.size() << " certified="
              << (p.certified ? "yes" : "no") << '\n';
    for (const auto& sr : rep.sets)
      std::cout << "  ell=" << sr.ell << " size=" << sr.size
                << " independent=" << (sr.independent ? "yes" : "no") << '\n';
    std::cout << "pairwise_disjoint=" << (rep.pairwise_disjoint ? "yes" : "no")
              << " packing_lower=" << rep.implied_packing_lower << '\n';
  } else {
    Json j = io::partition_to_json(p);
    if (with_report) j["report"] = io::report_to_json(rep);
    emit(j);
  }
  return rep.all_ok ? kExitOk : kExitVerificationFailure;
}

int cmd_psi(int n, bool exact, double budget, std::optional<std::uint64_t> seed,
            bool timing) {
  const MagicMatrix m = build_magic_matrix(n);
  psi::PackingResult res;
  if (exact) {
    psi::Budget b;
    b.max_nodes = as_budget(budget);
    res = psi::exact_packing(m.mat, b);
  } else {
    std::vector<int> order(m.cols());
    for (int c = 0; c < m.cols(); ++c) order[c] = c;
    if (seed) {
      std::mt19937_64 rng(*seed);
      std::shuffle(order.begin(), order.end(), rng);
    }
    res = psi::greedy_packing(m.mat, order);
  }
  emit(io::packing_to_json(res, n, timing));
  return kExitOk;
}

int cmd_contract(int n, const std::string& sigma, const std::string& out,
                 bool check_bound, int sample, std::uint64_t seed) {
  if (sample > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(1, n);
    std::vector<CellMerge> merges;
    // Two structured merges first, then distinct random ones.
    merges.push_back(CellMerge(1, 1, 1, 2));
    merges.push_back(CellMerge(1, 2, 1, 1));
    std::set<std::array<int, 4>> seen{{1, 1, 1, 2}, {1, 2, 1, 1}};
    if (static_cast<int>(merges.size()) > sample)
      merges.erase(merges.begin() + sample, merges.end());
    while (static_cast<int>(merges.size()) < sample) {
      const int i1 = coord(rng), j1 = coord(rng), i2 = coord(rng), j2 = coord(rng);
      if (i1 == i2 && j1 == j2) continue;
      if (!seen.insert({i1, j1, i2, j2}).second) continue;
      merges.push_back(CellMerge(i1, j1, i2, j2));
    }
    Json reports = Json::array();
    bool all_ok = true;
    for (const CellMerge& mg : merges) {
      const psi::MergeSurvivorsReport rep = psi::merge_survivors(n, mg);
      Json jr = io::merge_report_to_json(rep);
      jr["sigma"] = Json::array({mg.i1(), mg.j1(), mg.i2(), mg.j2()});
      reports.push_back(std::move(jr));
      all_ok = all_ok && rep.ok;
    }
    Json j;
    j["n"] = n;
    j["sample"] = sample;
    j["seed"] = seed;
    j["all_ok"] = all_ok;
    j["reports"] = std::move(reports);
    emit(j);
    return all_ok ? kExitOk : kExitVerificationFailure;
  }

  const CellMerge merge = parse_merge(sigma);
  if (check_bound) {
    const psi::MergeSurvivorsReport rep =
        psi::merge_survivors(n, merge, /*with_fresh_greedy=*/true);
    Json j = io::merge_report_to_json(rep);
    j["sigma"] = Json::array({merge.i1(), merge.j1(), merge.i2(), merge.j2()});
    emit(j);
    return rep.ok ? kExitOk : kExitVerificationFailure;
  }
  const MagicMatrix m = build_magic_matrix(n);
  const ExactMatrix merged = contracted_matrix(m, merge);
  if (out == "text") {
    std::cout << io::matrix_to_text(merged);
  } else {
    Json j = io::matrix_to_json(merged, n);
    j["sigma"] = Json::array({merge.i1(), merge.j1(), merge.i2(), merge.j2()});
    emit(j);
  }
  return kExitOk;
}

int cmd_analytic(const std::string& op, int n, int d, const std::string& mu_s, long q,
                 long a, long p, int m, int kmax, double beta, double L, double samples,
                 double X, std::uint64_t seed, double eps0, double budget) {
  Json j;
  j["op"] = op;
  if (op == "gauss") {
    const auto v = analytic::gauss_sum(q, a, d);
    j["q"] = q;
    j["a"] = a;
    j["d"] = d;
    j["re"] = v.real();
    j["im"] = v.imag();
    emit(j);
    return kExitOk;
  }
  if (op == "i1d") {
    const auto v = analytic::singular_integral_1d(beta, d);
    j["beta"] = beta;
    j["d"] = d;
    j["re"] = v.real();
    j["im"] = v.imag();
    emit(j);
    return kExitOk;
  }
  analytic::AnalyticParams params{.n = n, .d = d, .mu = parse_mu(mu_s)};
  j["params"] = Json{{"n", n}, {"d", d}, {"mu", mu_s}};
  if (op == "aq") {
    const auto t = analytic::series_term(params, q, as_budget(budget));
    j["q"] = q;
    j["value"] = t.value;
    j["imag_residual"] = t.imag_residual;
    j["budget"] = Json{{"tuples", t.tuples}};
  } else if (op == "chi") {
    const auto f = analytic::local_factor_partial(params, p, kmax, as_budget(budget));
    j["p"] = p;
    j["kmax"] = kmax;
    j["value"] = f.value;
    j["last_term_abs"] = f.last_term_abs;
  } else if (op == "nu") {
    const Int c = analytic::congruence_solution_count(params, p, m, as_budget(budget));
    j["p"] = p;
    j["m"] = m;
    j["count"] = c.get_str();
  } else if (op == "phi") {
    const auto e = analytic::singular_integral_estimate(
        params, L, static_cast<std::uint64_t>(samples), X, seed, eps0);
    j["L"] = L;
    j["X"] = X;
    j["seed"] = seed;
    j["value"] = e.value;
    j["stderr"] = e.std_error;
    j["zeta"] = e.zeta;
    j["samples"] = e.samples;
    j["approximate"] = true;
  } else {
    throw CLI::ValidationError("--op", "unknown operation: " + op);
  }
  emit(j);
  return kExitOk;
}

int cmd_verify(const std::string& path, const std::string& out) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open grid file: " << path << '\n';
    return kExitUsage;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const squares::SquareGrid g = squares::parse_grid(buf.str());
  const squares::VerifyResult res = squares::verify_square(g);
  if (out == "text") {
    std::cout << (res.ok ? "magic" : "not magic") << " mu=" << res.mu.get_str() << '\n';
    for (const auto& f : res.failures) std::cout << "  failed: " << f << '\n';
  } else {
    Json j;
    j["n"] = g.n;
    j["d"] = g.d;
    j["ok"] = res.ok;
    j["mu"] = res.mu.get_str();
    j["failures"] = res.failures;
    emit(j);
  }
  return res.ok ? kExitOk : kExitVerificationFailure;
}

int cmd_count(int n, int d, long X, const std::string& mu_s, double budget) {
  const squares::CountResult r =
      squares::count_solutions(n, d, X, parse_mu(mu_s), as_budget(budget));
  Json j;
  j["n"] = n;
  j["d"] = d;
  j["X"] = X;
  j["mu"] = mu_s;
  j["total"] = r.total;
  j["distinct"] = r.distinct;
  j["degenerate"] = r.degenerate;
  j["nodes"] = r.nodes;
  emit(j);
  return kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"exact tools for the linear system behind magic squares of powers"};
  app.require_subcommand(1);

  int n = 8, d = 2, m = 1, kmax = 1, sample = 0;
  long q = 2, a = 1, p = 2, X = 3;
  double beta = 0.0, L = 4.0, samples = 100000, Xscale = 1.0, eps0 = 0.01;
  double budget = 1e9;
  std::uint64_t seed = 1;
  bool exact = false, timing = false, with_report = false, check_bound = false;
  bool witness = false, jacobian = false;
  std::string out = "json", mu_s = "1", sigma, grid_path, op = "aq", z = "1";
  std::optional<std::uint64_t> psi_seed;

  auto* c_matrix = app.add_subcommand("matrix", "coefficient matrix export and checks");
  c_matrix->add_option("--n", n, "side length")->required();
  c_matrix->add_option("--out", out)->check(CLI::IsMember({"json", "text"}));
  c_matrix->add_flag("--witness", witness, "emit the singular-pencil witness instead");
  c_matrix->add_flag("--jacobian", jacobian, "check the scaled-Jacobian rank instead");
  c_matrix->add_option("--d", d, "degree (with --jacobian)");
  c_matrix->add_option("--z", z, "rational point, e.g. 1/2 (with --jacobian)");

  auto* c_part = app.add_subcommand("partition", "certified disjoint independent sets");
  c_part->add_option("--n", n, "side length (>= 8)")->required();
  c_part->add_option("--out", out)->check(CLI::IsMember({"json", "text"}));
  c_part->add_flag("--report", with_report, "embed the re-certification report");

  auto* c_psi = app.add_subcommand("psi", "packing bounds for the column matroid");
  c_psi->add_option("--n", n, "side length")->required();
  c_psi->add_flag("--exact", exact, "run the matroid-union search");
  c_psi->add_option("--budget", budget, "oracle-call cap");
  c_psi->add_option("--seed", psi_seed, "shuffle the greedy scan order");
  c_psi->add_flag("--timing", timing, "include elapsed time (breaks reproducibility)");

  auto* c_con = app.add_subcommand("contract", "merge two cells and study the result");
  c_con->add_option("--n", n, "side length")->required();
  c_con->add_option("--sigma", sigma, "merge as i1,j1,i2,j2");
  c_con->add_option("--out", out)->check(CLI::IsMember({"json", "text"}));
  c_con->add_flag("--check-bound", check_bound, "certify surviving packed sets");
  c_con->add_option("--sample", sample, "check a sample of this many merges");
  c_con->add_option("--seed", seed, "sample seed");

  auto* c_ana = app.add_subcommand("analytic", "local densities and integrals");
  c_ana->add_option("--op", op, "gauss|aq|chi|nu|i1d|phi")->required();
  c_ana->add_option("--n", n);
  c_ana->add_option("--d", d);
  c_ana->add_option("--mu", mu_s);
  c_ana->add_option("--q", q);
  c_ana->add_option("--a", a);
  c_ana->add_option("--p", p);
  c_ana->add_option("--m", m);
  c_ana->add_option("--kmax", kmax);
  c_ana->add_option("--beta", beta);
  c_ana->add_option("--L", L);
  c_ana->add_option("--samples", samples);
  c_ana->add_option("--X", Xscale);
  c_ana->add_option("--seed", seed);
  c_ana->add_option("--eps0", eps0);
  c_ana->add_option("--budget", budget);

  auto* c_ver = app.add_subcommand("verify", "verify a grid of d-th powers");
  c_ver->add_option("--grid", grid_path, "grid file")->required();
  c_ver->add_option("--out", out)->check(CLI::IsMember({"json", "text"}));

  auto* c_cnt = app.add_subcommand("count", "exact solution counts at toy scale");
  c_cnt->add_option("--n", n)->required();
  c_cnt->add_option("--d", d)->required();
  c_cnt->add_option("--x", X, "entry bound")->required();
  c_cnt->add_option("--mu", mu_s)->required();
  c_cnt->add_option("--budget", budget);

  try {
    app.parse(argc, argv);
    if (c_matrix->parsed()) return cmd_matrix(n, out, witness, jacobian, d, z);
    if (c_part->parsed()) return cmd_partition(n, out, with_report);
    if (c_psi->parsed()) return cmd_psi(n, exact, budget, psi_seed, timing);
    if (c_con->parsed()) {
      if (sample == 0 && sigma.empty())
        throw CLI::ValidationError("--sigma", "required unless --sample is given");
      return cmd_contract(n, sigma, out, check_bound, sample, seed);
    }
    if (c_ana->parsed())
      return cmd_analytic(op, n, d, mu_s, q, a, p, m, kmax, beta, L, samples, Xscale,
                          seed, eps0, budget);
    if (c_ver->parsed()) return cmd_verify(grid_path, out);
    if (c_cnt->parsed()) return cmd_count(n, d, X, mu_s, budget);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const CertificationError& e) {
    std::cerr << "certification failure: " << e.what() << '\n';
    return kExitVerificationFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace msq::cli
