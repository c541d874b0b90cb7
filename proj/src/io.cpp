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

#include "msq/io.hpp"

#include <sstream>
#include <stdexcept>

namespace msq::io {

namespace {

// Matrix entries we exchange are tiny; anything outside int64 is a misuse of
// the interchange format rather than a supported case.
std::int64_t to_i64(const Int& v) {
  if (!v.fits_slong_p()) throw std::invalid_argument("entry too large for JSON export");
  return v.get_si();
}

}  // namespace

Json matrix_to_json(const ExactMatrix& m, std::optional<int> n) {
  Json j;
  if (n) j["n"] = *n;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  Json entries = Json::array();
  for (const Int& v : m.a) entries.push_back(to_i64(v));
  j["entries"] = std::move(entries);
  return j;
}

ExactMatrix matrix_from_json(const nlohmann::json& j) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  if (rows < 1 || cols < 1) throw std::invalid_argument("dimensions must be positive");
  const auto& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != rows * cols)
    throw std::invalid_argument("entry count does not match dimensions");
  ExactMatrix m(rows, cols);
  for (int k = 0; k < rows * cols; ++k) {
    const auto& e = entries[k];
    if (e.is_string())
      m.a[k] = Int(e.get<std::string>());
    else
      m.a[k] = Int(e.get<std::int64_t>());
  }
  return m;
}

std::string matrix_to_text(const ExactMatrix& m) {
  std::ostringstream out;
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      if (c) out << ' ';
      out << m.at(r, c).get_str();
    }
    out << '\n';
  }
  return out.str();
}

ExactMatrix matrix_from_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<Int>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<Int> row;
    std::string tok;
    while (ls >> tok) {
      Int v;
      if (mpz_set_str(v.get_mpz_t(), tok.c_str(), 10) != 0)
        throw std::runtime_error("not an integer: " + tok);
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("ragged row in dense matrix text");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty matrix text");
  ExactMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
  return m;
}

Json partition_to_json(const construction::Partition& p) {
  Json j;
  j["n"] = p.n;
  Json sets = Json::array();
  for (const construction::PartSet& ps : p.sets) {
    Json s;
    s["ell"] = ps.ell;
    Json cols = Json::array();
    for (const ColumnRef& c : ps.columns) cols.push_back(Json::array({c.i(), c.j()}));
    s["columns"] = std::move(cols);
    s["a"] = Json::array({ps.a.i(), ps.a.j()});
    s["b"] = Json::array({ps.b.i(), ps.b.j()});
    sets.push_back(std::move(s));
  }
  j["sets"] = std::move(sets);
  j["certified"] = p.certified;
  return j;
}

Json report_to_json(const construction::VerificationReport& r) {
  Json j;
  j["n"] = r.n;
  Json sets = Json::array();
  for (const construction::SetReport& sr : r.sets) {
    Json s;
    s["ell"] = sr.ell;
    s["size"] = sr.size;
    s["size_ok"] = sr.size_ok;
    s["independent"] = sr.independent;
    sets.push_back(std::move(s));
  }
  j["sets"] = std::move(sets);
  j["pairwise_disjoint"] = r.pairwise_disjoint;
  j["all_ok"] = r.all_ok;
  j["implied_packing_lower"] = r.implied_packing_lower;
  return j;
}

Json packing_to_json(const psi::PackingResult& r, std::optional<int> n, bool with_timing) {
  Json j;
  if (n) j["n"] = *n;
  j["set_size"] = r.set_size;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  if (r.exact) j["exact"] = *r.exact;
  if (!r.witness.empty()) {
    // Witness columns in (i, j) cell addressing when the side length is
    // known, flat indices otherwise.
    Json w = Json::array();
    for (const auto& s : r.witness) {
      if (n) {
        Json cols = Json::array();
        for (int c : s) cols.push_back(Json::array({c / *n + 1, c % *n + 1}));
        w.push_back(std::move(cols));
      } else {
        w.push_back(s);
      }
    }
    j["witness"] = std::move(w);
  }
  Json budget;
  budget["nodes"] = r.spent.nodes;
  if (with_timing) budget["elapsed"] = r.spent.seconds;
  j["budget"] = std::move(budget);
  return j;
}

Json merge_report_to_json(const psi::MergeSurvivorsReport& r) {
  Json j;
  j["n"] = r.n;
  j["required"] = r.required;
  j["survivors"] = r.survivors;
  j["certified"] = r.certified;
  j["dropped"] = r.dropped;
  j["disjoint_after_map"] = r.disjoint_after_map;
  j["ok"] = r.ok;
  if (r.fresh_greedy) j["fresh_greedy"] = *r.fresh_greedy;
  return j;
}

}  // namespace msq::io
