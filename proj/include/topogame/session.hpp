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

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "topogame/error.hpp"
#include "topogame/games.hpp"

namespace topogame {

// Games between one human side and an engine strategy. Each session is
// guarded by its own mutex; the session table by another.
class SessionManager {
 public:
  SessionManager();
  ~SessionManager();

  // {space, mode, human: "beta"|"alpha", engine, seed?} -> {game, state}.
  // If the engine plays beta it moves at once.
  json create(const json& body);
  // {move: {open, point?}} -> {verdict, reply, certificate, delta, state}.
  // An illegal move leaves the session untouched and reports the error name
  // as the verdict. Throws UnknownGame, ParseError.
  json submit(const std::string& game, const json& body);
  json state(const std::string& game) const;
  // Compiled fragment of an alpha engine. Throws IncompatibleStrategy for
  // beta engines.
  json rep(const std::string& game) const;

 private:
  struct Session;
  std::shared_ptr<Session> lookup(const std::string& game) const;

  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_ = 1;
};

// HTTP status a wire error maps to.
int http_status(Errc code);

}  // namespace topogame
