// Copyright 2026 The topogame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "topogame/cli.hpp"
#include "topogame/codec.hpp"

using namespace topogame;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("topogame_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const char* name) { return (scratch() / name).string(); }

void write(const std::string& p, const std::string& text) { std::ofstream(p) << text; }

const char* kSierpinski = R"({"kind":"finite","atoms":["a","b"],"opens":[[],["a"],["a","b"]]})";

}  // namespace

TEST_CASE("simulate writes a transcript that verifies") {
  const std::string t = path("t.json");
  Run r = cli({"simulate", "--space", "real-line", "--alpha", "completeness", "--beta", "random", "--rounds", "20",
               "--seed", "7", "--out", t});
  CHECK(r.code == 0);
  const json j = load_json_file(t);
  CHECK(j["rounds"] == 20);
  CHECK(j["certificate"]["kind"] == "shrinking-closures");
  r = cli({"verify", t});
  CHECK(r.code == 0);
  CHECK(r.out == "valid shrinking-closures\n");
}

TEST_CASE("simulate prints to stdout without --out, identically per seed") {
  const Run a = cli({"simulate", "--space", "cantor", "--alpha", "cylinder-extend", "--beta", "random", "--rounds",
                     "6", "--seed", "3"});
  const Run b = cli({"simulate", "--space", "cantor", "--alpha", "cylinder-extend", "--beta", "random", "--rounds",
                     "6", "--seed", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(parse_json(a.out)["space"]["kind"] == "cantor");
}

TEST_CASE("a tampered transcript is invalid") {
  const std::string t = path("tampered.json");
  REQUIRE(cli({"simulate", "--space", "real-line", "--alpha", "completeness", "--beta", "random", "--rounds", "5",
               "--out", t})
              .code == 0);
  json j = load_json_file(t);
  j["certificate"]["steps"][2]["open"] = json{{"interval", {"-5", "5"}}};
  write(t, j.dump());
  const Run r = cli({"verify", t});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("invalid", 0) == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({"simulate", "--space", "bogus", "--alpha", "completeness", "--beta", "random"}).code == 2);
  CHECK(cli({"simulate", "--space", "real-line", "--alpha", "nope", "--beta", "random"}).code == 2);
  CHECK(cli({"simulate", "--space", "cantor", "--alpha", "completeness", "--beta", "random"}).code == 2);
  CHECK(cli({"simulate", "--space", "real-line", "--alpha", "completeness", "--beta", "random", "--mode", "xx"})
            .code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("compile-rep then check-rep on a Sierpinski fragment") {
  const std::string rep = path("sier.json");
  Run r = cli({"compile-rep", "--space", kSierpinski, "--strategy", "minimal-open", "--depth", "2", "--branching",
               "2", "--out", rep});
  REQUIRE(r.code == 0);
  const std::string report = path("report.json");
  r = cli({"check-rep", "--in", rep, "--system", "pi", "--max-directed", "5", "--out", report});
  CHECK(r.code == 0);
  for (const char* line : {"piD1 pass", "piD2 pass", "piD3 pass", "piD4 pass", "piD5 bound-exceeded", "piD5w1 pass"})
    CHECK(r.out.find(line) != std::string::npos);
  const json j = load_json_file(report);
  CHECK(j["bounds"]["max_directed"] == 5);

  r = cli({"check-rep", "--in", rep, "--quotient", "--singleton"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\nsingleton-upgrade bound-exceeded\n") != std::string::npos);

  r = cli({"extract-chain", "--in", rep, "--directed", "q0"});
  CHECK(r.code == 0);
  CHECK(parse_json(r.out)["chain"] == json::array({"q0"}));

  r = cli({"product", "--in", rep, "--in", rep, "--per-factor", "3"});
  CHECK(r.code == 0);
  CHECK(parse_json(r.out)["origin"] == "product");
}

TEST_CASE("check-rep fails with a witness on a bad triple") {
  const std::string rep = path("bad.json");
  write(rep, R"({"origin":"handcrafted","space":)" + std::string(kSierpinski) +
                 R"(,"elements":[{"id":"x","B":{"open":["a"]}},{"id":"y","B":{"open":["a","b"]}}],)"
                 R"("leq":[["x","x"],["y","y"],["x","y"]]})");
  const Run r = cli({"check-rep", "--in", rep});
  CHECK(r.code == 1);
  CHECK(r.out.find("piD3 fail") != std::string::npos);
  const Run c = cli({"extract-chain", "--in", rep, "--directed", "x,zz"});
  CHECK(c.code == 2);
}

TEST_CASE("play replays human moves against an engine") {
  const std::string moves = path("moves.json");
  write(moves, R"([{"open":{"interval":["0","1"]}},{"open":{"interval":["2/5","1/2"]}}])");
  Run r = cli({"play", "--space", "real-line", "--engine", "completeness", "--moves", moves});
  CHECK(r.code == 0);
  const json t = parse_json(r.out);
  CHECK(t["beta"] == "human");
  CHECK(t["moves"][1]["open"] == json{{"interval", {"3/8", "5/8"}}});
  CHECK(t["moves"].size() == 4);

  write(moves, R"([{"open":{"interval":["0","1"]}},{"open":{"interval":["0","1"]}}])");
  r = cli({"play", "--space", "real-line", "--engine", "completeness", "--moves", moves});
  CHECK(r.code == 1);
  CHECK(r.err.find("move 1") != std::string::npos);
}

#ifndef _WIN32
TEST_CASE("the installed binary runs") {
  const std::string cmd = std::string("\"") + TOPOGAME_CLI_PATH +
                          "\" simulate --space rational-line --alpha completeness --beta random --rounds 3 > " +
                          path("bin.json");
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(load_json_file(path("bin.json"))["rounds"] == 3);
  const std::string bad = std::string("\"") + TOPOGAME_CLI_PATH + "\" simulate --space bogus --alpha a --beta b 2>/dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
#endif
