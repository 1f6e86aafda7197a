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

#include "topogame/session.hpp"

#include "topogame/error.hpp"
#include "topogame/representations.hpp"
#include "topogame/strategies.hpp"

namespace topogame {

struct SessionManager::Session {
  std::mutex mu;
  std::string id;
  Space space;
  Mode mode;
  Role human;
  std::string engine_id;
  std::uint64_t seed;
  std::unique_ptr<Strategy> engine;
  std::unique_ptr<StrategyMemo> memo;
  PartialPlay play;
  std::optional<Certificate> certificate;

  Session(std::string i, Space s, Mode m, Role h, std::string e, std::uint64_t sd)
      : id(std::move(i)), space(std::move(s)), mode(m), human(h), engine_id(std::move(e)), seed(sd), play(m) {}

  Role engine_role() const { return human == Role::Beta ? Role::Alpha : Role::Beta; }

  void refresh_certificate() {
    certificate.reset();
    if (engine_role() == Role::Alpha) certificate = engine->certificate(play, memo.get());
    if (!certificate && play.alpha_count() > 0) certificate = default_certificate(space, play);
  }

  Transcript transcript() const {
    const std::string alpha = human == Role::Alpha ? "human" : engine->id();
    const std::string beta = human == Role::Beta ? "human" : engine->id();
    return {space, mode, alpha, beta, seed, play.alpha_count(), play, certificate};
  }

  json state() const {
    return {{"game", id},
            {"space", encode(space)},
            {"mode", std::string(mode_name(mode))},
            {"human", std::string(role_name(human))},
            {"engine", engine->id()},
            {"turn", std::string(role_name(play.turn()))},
            {"moves", encode(play, space)},
            {"certificate", certificate ? encode(*certificate, space) : json(nullptr)},
            {"transcript", encode(transcript())}};
  }
};

SessionManager::SessionManager() = default;
SessionManager::~SessionManager() = default;

namespace {

// The part of a certificate added by the latest round.
json certificate_delta(const std::optional<Certificate>& c, const Space& space) {
  if (!c) return nullptr;
  json full = encode(*c, space);
  if (full.contains("steps") && !full["steps"].empty()) return full["steps"].back();
  if (full.contains("chain") && !full["chain"].empty()) return full["chain"].back();
  if (full.contains("excluded")) return full["excluded"];
  return full;
}

}  // namespace

json SessionManager::create(const json& body) {
  if (!body.is_object()) throw Error(Errc::ParseError, "body must be an object");
  const Space space = body.at("space").is_string() ? parse_space_arg(body.at("space").get<std::string>())
                                                  : decode_space(body.at("space"));
  const Mode mode = parse_mode(body.value("mode", std::string("bm")));
  const Role human = parse_role(body.value("human", std::string("beta")));
  const std::string engine = body.at("engine").get<std::string>();
  const std::uint64_t seed = body.value("seed", std::uint64_t{0});
  const Role engine_role = human == Role::Beta ? Role::Alpha : Role::Beta;

  std::string id;
  {
    std::lock_guard<std::mutex> lock(mu_);
    id = "g" + std::to_string(next_++);
  }
  auto s = std::make_shared<Session>(id, space, mode, human, engine, seed);
  s->engine = make_strategy(engine, space, mode, engine_role, seed);
  s->memo = s->engine->make_memo();
  if (engine_role == Role::Beta) s->play = step(s->play, s->engine->respond(s->play, s->memo.get()), space);
  json st = s->state();
  {
    std::lock_guard<std::mutex> lock(mu_);
    sessions_[id] = s;
  }
  return {{"game", id}, {"state", std::move(st)}};
}

std::shared_ptr<SessionManager::Session> SessionManager::lookup(const std::string& game) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(game);
  if (it == sessions_.end()) throw Error(Errc::UnknownGame, "no game '" + game + "'");
  return it->second;
}

json SessionManager::submit(const std::string& game, const json& body) {
  auto s = lookup(game);
  std::lock_guard<std::mutex> lock(s->mu);
  if (!body.is_object() || !body.contains("move")) throw Error(Errc::ParseError, "body needs a 'move'");
  json out;
  PartialPlay next = s->play;
  try {
    if (next.turn() != s->human) throw Error(Errc::NotYourTurn, "engine is to move");
    next = step(next, decode_move(body.at("move"), s->space, s->human), s->space);
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    out["verdict"] = std::string(e.name());
    out["message"] = e.what();
    out["reply"] = nullptr;
    out["delta"] = nullptr;
    out["certificate"] = s->certificate ? encode(*s->certificate, s->space) : json(nullptr);
    out["state"] = s->state();
    return out;
  }
  // The engine is pure; its reply is always legal.
  Move reply = s->engine->respond(next, s->memo.get());
  next = step(next, reply, s->space);
  s->play = std::move(next);
  s->refresh_certificate();
  out["verdict"] = "ok";
  out["reply"] = encode(reply, s->space);
  out["certificate"] = s->certificate ? encode(*s->certificate, s->space) : json(nullptr);
  out["delta"] = certificate_delta(s->certificate, s->space);
  out["state"] = s->state();
  return out;
}

json SessionManager::state(const std::string& game) const {
  auto s = lookup(game);
  std::lock_guard<std::mutex> lock(s->mu);
  return s->state();
}

json SessionManager::rep(const std::string& game) const {
  auto s = lookup(game);
  std::lock_guard<std::mutex> lock(s->mu);
  if (s->engine_role() != Role::Alpha) throw Error(Errc::IncompatibleStrategy, "engine plays beta");
  std::shared_ptr<const Strategy> alpha = make_strategy(s->engine_id, s->space, s->mode, Role::Alpha, s->seed);
  return encode_rep(*compile_rep(std::move(alpha), s->space, s->mode, 2, 3, 512));
}

int http_status(Errc code) {
  switch (code) {
    case Errc::UnknownGame: return 404;
    default: return 400;
  }
}

}  // namespace topogame
