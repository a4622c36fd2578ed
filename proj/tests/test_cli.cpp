// Copyright 2026 The kamforge Authors
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

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <regex>
#include <string>

#include "doctest.h"
#include "kamforge/io.hpp"

using namespace kamforge;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " KAMFORGE_CLI " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) r.out += buf;
  const int s = pclose(p);
  r.status = WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  return r;
}

double field(const std::string& out, const std::string& key) {
  std::smatch m;
  const std::regex re(key + ": ([-+0-9.eEinf]+)");
  REQUIRE(std::regex_search(out, m, re));
  return std::stod(m[1]);
}

}  // namespace

TEST_CASE("solve at the golden mean") {
  const auto r = run("solve --omega 0.6180339887 --eps 0.05 --f cos --modes 256 --out cli_golden");
  INFO(r.out);
  CHECK(r.status == 0);
  CHECK(field(r.out, "dynamical_residual") < 1e-10);
  const auto j = io::json::parse(io::read_text("cli_golden.json"));
  CHECK(j["report"]["converged"] == true);
  const auto csv = io::read_text("cli_golden.csv");
  CHECK(csv.rfind("theta,re_x,im_x,re_y,im_y", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1025);
}

TEST_CASE("Picard solve off the circle") {
  const auto r = run("solve --q-re 0.3 --q-im 0 --method picard --eps 0.05 --out cli_picard");
  INFO(r.out);
  CHECK(r.status == 0);
  CHECK(field(r.out, "abs_beta") < 1e-12);
}

TEST_CASE("solve at a rational frequency fails with a diagnostic") {
  const auto r = run("solve --omega 0.5 --eps 0.05 --out cli_half");
  CHECK(r.status == 2);
  const auto j = io::json::parse(r.out);
  CHECK(j["error"] == "Resonance");
  CHECK(j.contains("message"));
}

TEST_CASE("frequency forms are exclusive") {
  CHECK(run("solve --omega 0.3 --q-re 0.3").status != 0);
  CHECK(run("solve --eps 0.05").status == 2);
  CHECK(run("solve --omega 0.3 --f 1:x").status == 2);
}

TEST_CASE("sweep is independent of the worker count") {
  const std::string grid =
      "sweep --re-n 3 --im-n 2 --eps-list 0.03 0.05 --modes 64 --out ";
  CHECK(run(grid + "cli_w1 --workers 1").status == 0);
  CHECK(run(grid + "cli_w8 --workers 8").status == 0);
  CHECK(run(grid + "cli_env --workers 1", "KAMFORGE_WORKERS=4").status == 0);
  const auto a = io::read_text("cli_w1.jsonl");
  CHECK(std::count(a.begin(), a.end(), '\n') == 12);
  CHECK(io::read_text("cli_w8.jsonl") == a);
  CHECK(io::read_text("cli_env.jsonl") == a);
  CHECK(io::read_text("cli_w8.family.json") == io::read_text("cli_w1.family.json"));
}

TEST_CASE("single-point sweep matches solve") {
  CHECK(run("sweep --re-lo 0.6180339887 --re-hi 0.6180339887 --re-n 1 --im-n 1 "
            "--out cli_single")
            .status == 0);
  CHECK(run("solve --omega 0.6180339887 --out cli_single_solve").status == 0);
  const auto line = io::json::parse(io::read_text("cli_single.jsonl"));
  const auto solved = io::json::parse(io::read_text("cli_single_solve.json"));
  CHECK(line["u"] == solved["u"]);
  CHECK(line["dynamical_residual"] == solved["dynamical_residual"]);
}

TEST_CASE("geometry") {
  const auto r = run("geometry --M 6 --tau 0.5 --mmax 2000 --out cli_geometry");
  INFO(r.out);
  CHECK(r.status == 0);
  const auto j = io::json::parse(io::read_text("cli_geometry.json"));
  CHECK(io::real_from_json(j["total_gap_measure"]) <= 0.8707);
  CHECK(j["gaps"].size() > 0);
}

TEST_CASE("obstruction") {
  const auto r = run("obstruction --p 1 --m 3 --f cos --max-order 5 --out cli_obs");
  INFO(r.out);
  CHECK(r.status == 0);
  CHECK(r.out.find("n_star: 3") != std::string::npos);
  const auto j = io::json::parse(io::read_text("cli_obs.json"));
  CHECK(j["n_star"] == 3);
}

TEST_CASE("taylor0 and crosscheck") {
  const auto t = run("taylor0 --eps 0.05 --orders 20 --q-re 0.3 --out cli_taylor");
  INFO(t.out);
  CHECK(t.status == 0);
  CHECK(field(t.out, "last_term") < 1e-8);
  const auto c = run("crosscheck --q-re 0.3 --eps 0.05 --out cli_cross");
  INFO(c.out);
  CHECK(c.status == 0);
  CHECK(field(c.out, "picard\\|taylor0") < 1e-8);
  CHECK(field(c.out, "newton\\|picard") < 1e-10);
}

TEST_CASE("verify reports one line per check and exits accordingly") {
  const auto r = run("verify --suite properties --out cli_verify");
  const auto j = io::json::parse(io::read_text("cli_verify.json"));
  bool all = true;
  for (const auto& c : j) all = all && c["pass"].get<bool>();
  CHECK(j.size() == 7);
  CHECK(r.status == (all ? 0 : 1));
  CHECK(run("verify --suite nothing").status == 2);
}
