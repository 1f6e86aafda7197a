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

#include "topogame/strategies.hpp"

#include <charconv>
#include <random>

#include "topogame/enumerate.hpp"
#include "topogame/error.hpp"
#include "topogame/representations.hpp"

namespace topogame {

BaseElement beta_frame(const PartialPlay& play, const Space& space) {
  if (const BaseElement* cur = play.current()) return *cur;
  return canonical_opener(space);
}

namespace {

[[noreturn]] void incompatible(std::string_view kind, const Space& space) {
  throw Error(Errc::IncompatibleStrategy,
              std::string(kind) + " does not apply to " + std::string(kind_name(space.kind())));
}

const Move& last_beta(const PartialPlay& play) {
  if (play.turn() != Role::Alpha) throw Error(Errc::NotYourTurn, "alpha answers a beta move");
  return play.back();
}

// (c - r, c + r) around the midpoint, or around beta's point in ch mode.
class Completeness final : public Strategy {
 public:
  using Strategy::Strategy;

  Move respond(const PartialPlay& play, StrategyMemo*) const override {
    const Move& u = last_beta(play);
    const auto& iv = *u.open.get_if<Interval>();
    const Rational cap = Rational::pow2(-static_cast<int>(play.beta_count() - 1) - 2);
    if (mode() == Mode::BM) {
      const Rational c = (iv.lo + iv.hi) / Rational(2);
      const Rational r = min((iv.hi - iv.lo) / Rational(8), cap);
      return {Role::Alpha, interval(c - r, c + r), std::nullopt};
    }
    const Rational& x = u.point->get_if<RationalPoint>()->value;
    const Rational r = min(min(x - iv.lo, iv.hi - x) / Rational(2), cap);
    return {Role::Alpha, interval(x - r, x + r), std::nullopt};
  }
};

class MinimalOpen final : public Strategy {
 public:
  using Strategy::Strategy;

  Move respond(const PartialPlay& play, StrategyMemo*) const override {
    const Move& u = last_beta(play);
    const AtomSet self = u.open.get_if<FiniteOpen>()->atoms;
    AtomSet need = 0;
    if (u.point) need = AtomSet{1} << u.point->get_if<AtomPoint>()->atom;
    for (AtomSet o : space().opens()) {
      if (o != 0 && (o & ~self) == 0 && (o & need) == need) return {Role::Alpha, FiniteOpen{o}, std::nullopt};
    }
    return {Role::Alpha, u.open, std::nullopt};
  }
};

class CylinderExtend final : public Strategy {
 public:
  using Strategy::Strategy;

  Move respond(const PartialPlay& play, StrategyMemo*) const override {
    const Move& u = last_beta(play);
    std::string stem = u.open.get_if<Cylinder>()->stem;
    char bit = '0';
    if (u.point) {
      const auto& support = u.point->get_if<BitStream>()->support;
      for (std::size_t i : support) {
        if (i == stem.size()) bit = '1';
      }
    }
    stem.push_back(bit);
    return {Role::Alpha, Cylinder{std::move(stem)}, std::nullopt};
  }
};

Move with_point(Move m, Mode mode, const Space& space) {
  if (mode == Mode::Ch) m.point = pick_point(m.open, space);
  return m;
}

class Diagonal final : public Strategy {
 public:
  using Strategy::Strategy;

  Move respond(const PartialPlay& play, StrategyMemo*) const override {
    if (play.turn() != Role::Beta) throw Error(Errc::NotYourTurn, "beta is not to move");
    const BaseElement frame = beta_frame(play, space());
    const auto& iv = *frame.get_if<Interval>();
    const Rational r = rational_at(play.beta_count());
    const Rational w = iv.hi - iv.lo;
    BaseElement next = (iv.lo <= r && r < iv.hi)
                           ? interval(r + (iv.hi - r) / Rational(4), r + (iv.hi - r) / Rational(2))
                           : interval(iv.lo + w / Rational(4), iv.hi - w / Rational(4));
    return with_point({Role::Beta, std::move(next), std::nullopt}, mode(), space());
  }
};

class RandomBeta final : public Strategy {
 public:
  RandomBeta(std::string id, Mode mode, Space space, std::uint64_t seed)
      : Strategy(std::move(id), mode, Role::Beta, std::move(space)), seed_(seed) {}

  Move respond(const PartialPlay& play, StrategyMemo*) const override {
    if (play.turn() != Role::Beta) throw Error(Errc::NotYourTurn, "beta is not to move");
    const BaseElement frame = beta_frame(play, space());
    std::mt19937_64 gen(seed_ * 0x9E3779B97F4A7C15ull + play.beta_count());
    auto options = enumerate_subsets(frame, space(), 16, false);
    BaseElement next = options.empty() ? frame : options[gen() % options.size()];
    Move m{Role::Beta, next, std::nullopt};
    if (mode() == Mode::Ch) {
      auto pts = sample_points(next, space(), 4);
      m.point = pts[gen() % pts.size()];
    }
    return m;
  }

 private:
  std::uint64_t seed_;
};

class Scripted final : public Strategy {
 public:
  Scripted(std::string id, Role role, Space space, Mode mode, std::vector<Move> moves)
      : Strategy(std::move(id), mode, role, std::move(space)), moves_(std::move(moves)) {}

  Move respond(const PartialPlay& play, StrategyMemo*) const override {
    if (play.turn() != role()) throw Error(Errc::NotYourTurn, "scripted side is not to move");
    const std::size_t k = role() == Role::Beta ? play.beta_count() : play.alpha_count();
    if (k >= moves_.size()) throw Error(Errc::BoundExceeded, "script has no move " + std::to_string(k));
    Move m = moves_[k];
    m.role = role();
    return m;
  }

 private:
  std::vector<Move> moves_;
};

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw Error(Errc::ParseError, "bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::unique_ptr<Strategy> make_alpha(std::string_view kind, const Space& space, Mode mode) {
  const std::string id(kind);
  if (kind == "completeness") {
    if (!space.is_line()) incompatible(kind, space);
    return std::make_unique<Completeness>(id, mode, Role::Alpha, space);
  }
  if (kind == "minimal-open") {
    if (space.kind() != SpaceKind::Finite) incompatible(kind, space);
    return std::make_unique<MinimalOpen>(id, mode, Role::Alpha, space);
  }
  if (kind == "cylinder-extend") {
    if (space.kind() != SpaceKind::Cantor) incompatible(kind, space);
    return std::make_unique<CylinderExtend>(id, mode, Role::Alpha, space);
  }
  throw Error(Errc::InvalidDescriptor, "unknown alpha strategy '" + id + "'");
}

std::unique_ptr<Strategy> make_beta(std::string_view kind, const Space& space, Mode mode,
                                    std::uint64_t seed) {
  if (kind == "diagonal") {
    if (space.kind() != SpaceKind::RationalLine) incompatible(kind, space);
    return std::make_unique<Diagonal>("diagonal", mode, Role::Beta, space);
  }
  if (kind == "random") {
    return std::make_unique<RandomBeta>("random:" + std::to_string(seed), mode, space, seed);
  }
  throw Error(Errc::InvalidDescriptor, "unknown beta strategy '" + std::string(kind) + "'");
}

std::unique_ptr<Strategy> make_scripted(std::string id, Role role, const Space& space, Mode mode,
                                        std::vector<Move> moves) {
  return std::make_unique<Scripted>(std::move(id), role, space, mode, std::move(moves));
}

std::unique_ptr<Strategy> make_strategy(std::string_view descriptor, const Space& space, Mode mode,
                                        Role role, std::uint64_t seed) {
  const std::string d(descriptor);
  auto require = [&](Role r) {
    if (r != role) {
      throw Error(Errc::IncompatibleStrategy, "'" + d + "' plays " + std::string(role_name(r)));
    }
  };
  if (d == "completeness" || d == "minimal-open" || d == "cylinder-extend") {
    require(Role::Alpha);
    return make_alpha(d, space, mode);
  }
  if (d == "diagonal" || d == "random") {
    require(Role::Beta);
    return make_beta(d, space, mode, seed);
  }
  if (d.rfind("random:", 0) == 0) {
    require(Role::Beta);
    return make_beta("random", space, mode, parse_u64(std::string_view(d).substr(7), "seed"));
  }
  if (d.rfind("rep:", 0) == 0) {
    require(Role::Alpha);
    RepPtr rep = load_rep(d.substr(4));
    if (!(rep->space() == space)) throw Error(Errc::IncompatibleStrategy, "representation is for another space");
    return rep_to_strategy(std::move(rep), mode, d);
  }
  if (d.rfind("compiled:", 0) == 0) {
    require(Role::Alpha);
    // compiled:<kind>[:<depth>:<branching>]
    std::vector<std::string> parts;
    std::size_t start = 9;
    for (;;) {
      const std::size_t colon = d.find(':', start);
      parts.push_back(d.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
      if (colon == std::string::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 1 && parts.size() != 3) throw Error(Errc::ParseError, "bad descriptor '" + d + "'");
    const std::size_t depth = parts.size() == 3 ? parse_u64(parts[1], "depth") : 2;
    const std::size_t branching = parts.size() == 3 ? parse_u64(parts[2], "branching") : 4;
    std::shared_ptr<const Strategy> base = make_alpha(parts[0], space, mode);
    return rep_to_strategy(compile_rep(std::move(base), space, mode, depth, branching), mode, d);
  }
  throw Error(Errc::InvalidDescriptor, "unknown strategy '" + d + "'");
}

}  // namespace topogame
