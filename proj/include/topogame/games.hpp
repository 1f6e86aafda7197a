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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "topogame/codec.hpp"
#include "topogame/topology.hpp"

namespace topogame {

// bm: Banach-Mazur. ch: strong Choquet (beta also names a point).
enum class Mode { BM, Ch };
enum class Role { Beta, Alpha };

std::string_view mode_name(Mode m);
Mode parse_mode(std::string_view s);
std::string_view role_name(Role r);
Role parse_role(std::string_view s);

struct Move {
  Role role;
  BaseElement open;
  std::optional<Point> point;  // beta moves in ch mode only
  friend bool operator==(const Move&, const Move&) = default;
};

// Legal alternating sequence beta, alpha, beta, ... of nested opens.
class PartialPlay {
 public:
  explicit PartialPlay(Mode mode) : mode_(mode) {}
  // No legality checks; callers validate with step() or verify_certificate().
  static PartialPlay unchecked(Mode mode, std::vector<Move> moves);

  Mode mode() const { return mode_; }
  const std::vector<Move>& moves() const { return moves_; }
  std::size_t size() const { return moves_.size(); }
  bool empty() const { return moves_.empty(); }
  Role turn() const { return moves_.size() % 2 == 0 ? Role::Beta : Role::Alpha; }
  std::size_t beta_count() const { return (moves_.size() + 1) / 2; }
  std::size_t alpha_count() const { return moves_.size() / 2; }
  // Open of the most recent move; nullptr for the empty play.
  const BaseElement* current() const { return moves_.empty() ? nullptr : &moves_.back().open; }
  const Move& back() const { return moves_.back(); }

  // The prefix of the first n moves.
  PartialPlay prefix(std::size_t n) const;

  friend bool operator==(const PartialPlay&, const PartialPlay&) = default;

 private:
  friend PartialPlay step(const PartialPlay& play, Move move, const Space& space);
  Mode mode_;
  std::vector<Move> moves_;
};

// Appends a move after checking turn order, nesting, and (ch) point rules.
// Errors: NotYourTurn, NotNested, PointOutside, MalformedMove, KindMismatch.
PartialPlay step(const PartialPlay& play, Move move, const Space& space);

// p1 <= p2: p2 is at least as long and agrees with p1 on every beta open
// (and beta point in ch mode). Alpha entries are not compared: along a
// strategy they are determined by the beta entries. Error: ModeMismatch.
bool stronger(const PartialPlay& p1, const PartialPlay& p2);

std::string key(const PartialPlay& play);
json encode(const PartialPlay& play, const Space& space);
PartialPlay decode_play(const json& j, const Space& space, Mode mode);
json encode(const Move& m, const Space& space);
Move decode_move(const json& j, const Space& space, Role role);

// ---------------------------------------------------------------------------
// Certificates: finite-depth attestations of a play's intersection.

struct ClosureStep {
  BaseElement open;
  Rational diameter;
  Rational bound;
  // Interval gaps (lo_V - lo_U, hi_U - hi_V); absent for cylinders.
  std::optional<std::pair<Rational, Rational>> gap;
  friend bool operator==(const ClosureStep&, const ClosureStep&) = default;
};
struct ShrinkingClosures {
  std::vector<ClosureStep> steps;
  friend bool operator==(const ShrinkingClosures&, const ShrinkingClosures&) = default;
};
struct Stabilized {
  BaseElement stable;
  std::size_t since_round;
  friend bool operator==(const Stabilized&, const Stabilized&) = default;
};
struct ChainLink {
  std::string id;
  BaseElement value;
  friend bool operator==(const ChainLink&, const ChainLink&) = default;
};
struct RepChain {
  std::string rep;
  std::vector<ChainLink> chain;
  friend bool operator==(const RepChain&, const RepChain&) = default;
};
struct ExclusionList {
  std::vector<Rational> excluded;
  std::size_t prefix;
  friend bool operator==(const ExclusionList&, const ExclusionList&) = default;
};

using Certificate = std::variant<ShrinkingClosures, Stabilized, RepChain, ExclusionList>;

std::string_view certificate_kind(const Certificate& c);
json encode(const Certificate& c, const Space& space);
Certificate decode_certificate(const json& j, const Space& space);

// Diameter used by ShrinkingClosures: width for intervals, 2^-len for cylinders.
std::optional<Rational> diameter(const BaseElement& b);

// The certificate a play earns from the space's completeness class alone
// (no strategy-specific evidence). nullopt when no schema applies.
std::optional<Certificate> default_certificate(const Space& space, const PartialPlay& play);

// ---------------------------------------------------------------------------
// Agents

// Opaque per-play state a strategy may thread through a game (for example
// the chain of a representation-derived strategy). Strategy objects stay
// immutable; the memo belongs to the game.
class StrategyMemo {
 public:
  virtual ~StrategyMemo() = default;
};

class Strategy {
 public:
  Strategy(std::string id, Mode mode, Role role, Space space)
      : id_(std::move(id)), mode_(mode), role_(role), space_(std::move(space)) {}
  virtual ~Strategy() = default;

  const std::string& id() const { return id_; }
  Mode mode() const { return mode_; }
  Role role() const { return role_; }
  const Space& space() const { return space_; }

  // Pure: equal plays give equal moves. The memo, when supplied, must have
  // been created by make_memo() and fed every earlier position of this play.
  virtual Move respond(const PartialPlay& play, StrategyMemo* memo) const = 0;
  Move respond(const PartialPlay& play) const { return respond(play, nullptr); }
  virtual std::unique_ptr<StrategyMemo> make_memo() const { return nullptr; }

  // Strategy-specific certificate for a finished play (rep-derived alpha).
  virtual std::optional<Certificate> certificate(const PartialPlay&, StrategyMemo*) const {
    return std::nullopt;
  }
  // Checks a strategy-specific certificate against the play.
  virtual bool check_certificate(const PartialPlay&, const Certificate&) const { return false; }

 private:
  std::string id_;
  Mode mode_;
  Role role_;
  Space space_;
};

struct Transcript {
  Space space;
  Mode mode;
  std::string alpha;
  std::string beta;
  std::uint64_t seed = 0;
  std::size_t rounds = 0;
  PartialPlay play;
  std::optional<Certificate> certificate;
};

json encode(const Transcript& t);
Transcript decode_transcript(const json& j);

// Plays `rounds` full rounds (beta then alpha). Deterministic: the agents are
// pure and `seed` is only recorded.
Transcript simulate(const Space& space, const Strategy& alpha, const Strategy& beta,
                    std::size_t rounds, std::uint64_t seed);

// Checks play legality and the certificate invariants in exact arithmetic.
// RepChain certificates need the alpha strategy that produced them.
// Throws UnknownCertificateKind if the transcript carries no certificate.
bool verify_certificate(const Transcript& t, const Strategy* alpha = nullptr);

}  // namespace topogame
