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

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(MSQ_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.out.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

const std::string kEuler = std::string(MSQ_FIXTURE_DIR) + "/euler.txt";

}  // namespace

TEST_CASE("matrix export in both formats") {
  const RunResult text = run_cli("matrix --n 3 --out text");
  CHECK(text.exit_code == 0);
  CHECK(text.out.substr(0, 18) == "1 1 1 0 0 0 0 0 0\n");

  const RunResult js = run_cli("matrix --n 3");
  CHECK(js.exit_code == 0);
  const json j = json::parse(js.out);
  CHECK(j["n"] == 3);
  CHECK(j["rows"] == 7);
  CHECK(j["cols"] == 9);
  CHECK(j["rank"] == 7);
  CHECK(j["entries"].size() == 63);
}

TEST_CASE("verifier exit codes distinguish magic from non-magic") {
  const RunResult good = run_cli("verify --grid " + kEuler);
  CHECK(good.exit_code == 0);
  const json j = json::parse(good.out);
  CHECK(j["ok"] == true);
  CHECK(j["mu"] == "8515");

  // A non-magic grid through a temp file.
  const std::string tmp = "/tmp/msq_cli_bad_grid.txt";
  FILE* f = fopen(tmp.c_str(), "w");
  REQUIRE(f);
  fputs("3 1\n1 2 3\n4 5 6\n7 8 9\n", f);
  fclose(f);
  const RunResult bad = run_cli("verify --grid " + tmp);
  CHECK(bad.exit_code == 1);
  CHECK(json::parse(bad.out)["ok"] == false);
}

TEST_CASE("partition report for n=12") {
  const RunResult r = run_cli("partition --n 12 --report");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["certified"] == true);
  CHECK(j["sets"].size() == 2);
  for (const auto& s : j["sets"]) CHECK(s["columns"].size() == 25);
  CHECK(j["report"]["all_ok"] == true);
  CHECK(j["report"]["implied_packing_lower"] == 2);
}

TEST_CASE("packing bounds with a budget") {
  const RunResult r = run_cli("psi --n 8 --budget 1e7");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["lower"].get<int>() >= 1);
  CHECK(j["upper"] == 3);
}

TEST_CASE("identical invocations produce byte-identical output") {
  const std::string cmds[] = {
      "psi --n 8 --exact --budget 1e7",
      "psi --n 9 --seed 5",
      "contract --n 16 --sample 10 --seed 3",
      "analytic --op phi --n 3 --d 2 --mu 3 --X 2 --L 4 --samples 20000 --seed 9",
      "analytic --op aq --n 4 --d 2 --mu 4 --q 3",
  };
  for (const std::string& cmd : cmds) {
    const RunResult a = run_cli(cmd);
    const RunResult b = run_cli(cmd);
    CAPTURE(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("matrix").exit_code == 2);          // missing --n
  CHECK(run_cli("matrix --n 2").exit_code == 2);    // domain violation
  CHECK(run_cli("partition --n 6").exit_code == 2); // below supported range
  CHECK(run_cli("contract --n 8").exit_code == 2);  // no sigma, no sample
  CHECK(run_cli("contract --n 8 --sigma 1,1,1").exit_code == 2);
  CHECK(run_cli("contract --n 8 --sigma 1,1,1,2,9").exit_code == 2);
  CHECK(run_cli("matrix --n 4 --jacobian --d 2 --z 1/0").exit_code == 2);
  CHECK(run_cli("verify --grid /nonexistent").exit_code == 2);
}

TEST_CASE("budget exhaustion exits with code 3") {
  CHECK(run_cli("analytic --op aq --n 4 --d 2 --mu 4 --q 5 --budget 100").exit_code == 3);
  CHECK(run_cli("count --n 3 --d 1 --x 5 --mu 9 --budget 10").exit_code == 3);
}

TEST_CASE("merge bound check and counting round trip") {
  const RunResult r = run_cli("contract --n 16 --sigma 1,1,1,2 --check-bound");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out)["ok"] == true);

  const RunResult c = run_cli("count --n 3 --d 1 --x 5 --mu 9");
  CHECK(c.exit_code == 0);
  const json j = json::parse(c.out);
  CHECK(j["total"] == 13);
  CHECK(j["distinct"] == 0);
  CHECK(j["degenerate"] == 13);
}

TEST_CASE("target line values beyond machine words flow through") {
  // mu is reduced modulo the prime power exactly; this value is 1 mod 2.
  const RunResult r = run_cli(
      "analytic --op nu --n 3 --d 1 --mu 1000000000000000000000000000003 --p 2 --m 1");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out)["count"] == "4");
}
