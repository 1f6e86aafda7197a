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

#include <httplib.h>

#include <thread>

#include "topogame/cli.hpp"
#include "topogame/error.hpp"
#include "topogame/session.hpp"
#include "topogame/strategies.hpp"

using namespace topogame;

namespace {

json interval(const char* lo, const char* hi) { return {{"move", {{"open", {{"interval", {lo, hi}}}}}}}; }

}  // namespace

TEST_CASE("human beta against the completeness engine") {
  SessionManager m;
  const json created = m.create({{"space", "rational-line"}, {"mode", "bm"}, {"human", "beta"}, {"engine", "completeness"}});
  const std::string g = created["game"];
  CHECK(created["state"]["turn"] == "beta");

  json r = m.submit(g, interval("0", "1"));
  CHECK(r["verdict"] == "ok");
  CHECK(r["reply"]["open"] == json{{"interval", {"3/8", "5/8"}}});
  CHECK(r["certificate"]["kind"] == "exclusion-list");
  CHECK(r["delta"].is_array());

  const json before = m.state(g);
  r = m.submit(g, interval("0", "1"));
  CHECK(r["verdict"] == "NotNested");
  CHECK(r["reply"].is_null());
  CHECK(m.state(g) == before);

  r = m.submit(g, {{"move", {{"open", {{"cylinder", "0"}}}}}});
  CHECK(r["verdict"] == "KindMismatch");
  CHECK(m.state(g) == before);

  CHECK_THROWS_AS(m.submit(g, json{{"nothing", 1}}), Error);
}

TEST_CASE("session state matches the offline game") {
  SessionManager m;
  const std::string g = m.create({{"space", "real-line"}, {"engine", "completeness"}})["game"];
  const std::vector<json> moves = {interval("0", "1"), interval("2/5", "1/2"), interval("7/16", "9/20")};
  for (const json& mv : moves) REQUIRE(m.submit(g, mv)["verdict"] == "ok");

  const Space s = Space::real_line();
  auto alpha = make_alpha("completeness", s, Mode::BM);
  PartialPlay play(Mode::BM);
  for (const json& mv : moves) {
    play = step(play, decode_move(mv["move"], s, Role::Beta), s);
    play = step(play, alpha->respond(play), s);
  }
  const json st = m.state(g);
  CHECK(st["moves"] == encode(play, s));
  CHECK(st["transcript"]["rounds"] == 3);
  CHECK(st["transcript"]["beta"] == "human");
}

TEST_CASE("engine playing beta moves first") {
  SessionManager m;
  const json c = m.create({{"space", "cantor"}, {"human", "alpha"}, {"engine", "random"}, {"seed", 4}});
  CHECK(c["state"]["turn"] == "alpha");
  CHECK(c["state"]["moves"].size() == 1);
  CHECK_THROWS_AS(m.rep(c["game"]), Error);
}

TEST_CASE("rep of the engine and unknown games") {
  SessionManager m;
  const std::string g = m.create({{"space", "cantor"}, {"engine", "cylinder-extend"}})["game"];
  const json rep = m.rep(g);
  CHECK(rep["origin"] == "compiled-bm");
  try {
    m.state("g999");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownGame);
    CHECK(http_status(e.code()) == 404);
  }
  CHECK(http_status(Errc::NotNested) == 400);
}

TEST_CASE("HTTP front end") {
  WireServer server;
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread t([&] { server.listen(); });

  httplib::Client client("127.0.0.1", port);
  auto res = client.Post("/games", R"({"space":"real-line","engine":"completeness"})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  const std::string g = json::parse(res->body)["game"];

  res = client.Post(("/games/" + g + "/moves").c_str(), interval("0", "1").dump(), "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["reply"]["open"] == json{{"interval", {"3/8", "5/8"}}});

  res = client.Get(("/games/" + g).c_str());
  REQUIRE(res);
  CHECK(json::parse(res->body)["moves"].size() == 2);

  res = client.Get(("/games/" + g + "/rep").c_str());
  REQUIRE(res);
  CHECK(res->status == 200);

  res = client.Get("/games/nope");
  REQUIRE(res);
  CHECK(res->status == 404);
  CHECK(json::parse(res->body)["error"] == "UnknownGame");

  res = client.Post("/games", "{not json", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);

  server.stop();
  t.join();
}
