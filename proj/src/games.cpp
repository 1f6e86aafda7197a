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

#include "topogame/games.hpp"

#include <algorithm>
#include <set>

#include "topogame/enumerate.hpp"
#include "topogame/error.hpp"

namespace topogame {

std::string_view mode_name(Mode m) { return m == Mode::BM ? "bm" : "ch"; }

Mode parse_mode(std::string_view s) {
  if (s == "bm") return Mode::BM;
  if (s == "ch") return Mode::Ch;
  throw Error(Errc::ParseError, "unknown mode '" + std::string(s) + "'");
}

std::string_view role_name(Role r) { return r == Role::Beta ? "beta" : "alpha"; }

Role parse_role(std::string_view s) {
  if (s == "beta") return Role::Beta;
  if (s == "alpha") return Role::Alpha;
  throw Error(Errc::ParseError, "unknown role '" + std::string(s) + "'");
}

PartialPlay PartialPlay::unchecked(Mode mode, std::vector<Move> moves) {
  PartialPlay p(mode);
  p.moves_ = std::move(moves);
  return p;
}

PartialPlay PartialPlay::prefix(std::size_t n) const {
  PartialPlay p(mode_);
  p.moves_.assign(moves_.begin(), moves_.begin() + static_cast<std::ptrdiff_t>(std::min(n, moves_.size())));
  return p;
}

PartialPlay step(const PartialPlay& play, Move move, const Space& space) {
  if (move.role != play.turn()) {
    throw Error(Errc::NotYourTurn, std::string(role_name(play.turn())) + " is to move");
  }
  const bool wants_point = play.mode() == Mode::Ch && move.role == Role::Beta;
  if (wants_point && !move.point) throw Error(Errc::MalformedMove, "strong Choquet beta move needs a point");
  if (!wants_point && move.point) throw Error(Errc::MalformedMove, "only beta names a point, and only in ch mode");
  validate(move.open, space);
  if (move.point) validate(*move.point, space);
  if (const BaseElement* prev = play.current(); prev != nullptr && !subset(move.open, *prev, space)) {
    throw Error(Errc::NotNested, "move is not contained in the previous open");
  }
  if (play.mode() == Mode::Ch) {
    if (move.role == Role::Beta) {
      if (!member(*move.point, move.open, space)) throw Error(Errc::PointOutside, "point is not in beta's open");
    } else if (!member(*play.back().point, move.open, space)) {
      throw Error(Errc::PointOutside, "alpha's open misses beta's point");
    }
  }
  PartialPlay next = play;
  next.moves_.push_back(std::move(move));
  return next;
}

bool stronger(const PartialPlay& p1, const PartialPlay& p2) {
  if (p1.mode() != p2.mode()) throw Error(Errc::ModeMismatch, "plays of different games");
  if (p1.size() > p2.size()) return false;
  for (std::size_t i = 0; i < p1.size(); i += 2) {
    const Move& a = p1.moves()[i];
    const Move& b = p2.moves()[i];
    if (!(a.open == b.open) || a.point != b.point) return false;
  }
  return true;
}

std::string key(const PartialPlay& play) {
  std::string out(mode_name(play.mode()));
  for (const Move& m : play.moves()) {
    out += m.role == Role::Beta ? "|b" : "|a";
    out += key(m.open);
    if (m.point) out += "@" + key(*m.point);
  }
  return out;
}

json encode(const Move& m, const Space& space) {
  json j;
  j["role"] = std::string(role_name(m.role));
  j["open"] = encode(m.open, space);
  if (m.point) j["point"] = encode(*m.point, space);
  return j;
}

Move decode_move(const json& j, const Space& space, Role role) {
  if (!j.is_object() || !j.contains("open")) throw Error(Errc::MalformedMove, "move needs an 'open'");
  Move m{role, decode_open(j.at("open"), space), std::nullopt};
  if (j.contains("role") && parse_role(j.at("role").get<std::string>()) != role) {
    throw Error(Errc::NotYourTurn, "move names the wrong role");
  }
  if (j.contains("point") && !j.at("point").is_null()) m.point = decode_point(j.at("point"), space);
  return m;
}

json encode(const PartialPlay& play, const Space& space) {
  json moves = json::array();
  for (const Move& m : play.moves()) moves.push_back(encode(m, space));
  return moves;
}

PartialPlay decode_play(const json& j, const Space& space, Mode mode) {
  std::vector<Move> moves;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& mj = j[i];
    const Role role = mj.contains("role") ? parse_role(mj.at("role").get<std::string>())
                                          : (i % 2 == 0 ? Role::Beta : Role::Alpha);
    Move m{role, decode_open(mj.at("open"), space), std::nullopt};
    if (mj.contains("point") && !mj.at("point").is_null()) m.point = decode_point(mj.at("point"), space);
    moves.push_back(std::move(m));
  }
  return PartialPlay::unchecked(mode, std::move(moves));
}

// ---------------------------------------------------------------------------

std::string_view certificate_kind(const Certificate& c) {
  switch (c.index()) {
    case 0: return "shrinking-closures";
    case 1: return "stabilized";
    case 2: return "rep-chain";
    default: return "exclusion-list";
  }
}

json encode(const Certificate& c, const Space& space) {
  json j;
  j["kind"] = std::string(certificate_kind(c));
  if (const auto* s = std::get_if<ShrinkingClosures>(&c)) {
    json steps = json::array();
    for (const ClosureStep& st : s->steps) {
      json sj;
      sj["open"] = encode(st.open, space);
      sj["diameter"] = st.diameter.str();
      sj["bound"] = st.bound.str();
      sj["gap"] = st.gap ? json::array({st.gap->first.str(), st.gap->second.str()}) : json(nullptr);
      steps.push_back(std::move(sj));
    }
    j["steps"] = std::move(steps);
  } else if (const auto* st = std::get_if<Stabilized>(&c)) {
    j["stable"] = encode(st->stable, space);
    j["since_round"] = st->since_round;
  } else if (const auto* rc = std::get_if<RepChain>(&c)) {
    j["rep"] = rc->rep;
    json chain = json::array();
    for (const ChainLink& l : rc->chain) chain.push_back({{"id", l.id}, {"B", encode(l.value, space)}});
    j["chain"] = std::move(chain);
  } else {
    const auto& ex = std::get<ExclusionList>(c);
    json list = json::array();
    for (const Rational& q : ex.excluded) list.push_back(q.str());
    j["excluded"] = std::move(list);
    j["prefix"] = ex.prefix;
  }
  return j;
}

Certificate decode_certificate(const json& j, const Space& space) {
  if (!j.is_object() || !j.contains("kind")) throw Error(Errc::UnknownCertificateKind, "certificate without kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "shrinking-closures") {
    ShrinkingClosures s;
    for (const json& sj : j.at("steps")) {
      ClosureStep st{decode_open(sj.at("open"), space), decode_rational(sj.at("diameter")),
                     decode_rational(sj.at("bound")), std::nullopt};
      if (sj.contains("gap") && !sj.at("gap").is_null()) {
        st.gap = std::make_pair(decode_rational(sj.at("gap")[0]), decode_rational(sj.at("gap")[1]));
      }
      s.steps.push_back(std::move(st));
    }
    return s;
  }
  if (kind == "stabilized") {
    return Stabilized{decode_open(j.at("stable"), space), j.at("since_round").get<std::size_t>()};
  }
  if (kind == "rep-chain") {
    RepChain rc{j.at("rep").get<std::string>(), {}};
    for (const json& l : j.at("chain")) {
      rc.chain.push_back({l.at("id").get<std::string>(), decode_open(l.at("B"), space)});
    }
    return rc;
  }
  if (kind == "exclusion-list") {
    ExclusionList ex{{}, j.at("prefix").get<std::size_t>()};
    for (const json& q : j.at("excluded")) ex.excluded.push_back(decode_rational(q));
    return ex;
  }
  throw Error(Errc::UnknownCertificateKind, "unknown certificate kind '" + kind + "'");
}

std::optional<Rational> diameter(const BaseElement& b) {
  if (const auto* iv = b.get_if<Interval>()) return iv->hi - iv->lo;
  if (const auto* c = b.get_if<Cylinder>()) return Rational::pow2(-static_cast<int>(c->stem.size()));
  return std::nullopt;
}

namespace {

std::vector<const Move*> moves_of(const PartialPlay& play, Role role) {
  std::vector<const Move*> out;
  for (const Move& m : play.moves()) {
    if (m.role == role) out.push_back(&m);
  }
  return out;
}

std::optional<std::pair<Rational, Rational>> gaps(const BaseElement& inner, const BaseElement& outer) {
  const auto* in = inner.get_if<Interval>();
  const auto* out = outer.get_if<Interval>();
  if (in == nullptr || out == nullptr) return std::nullopt;
  return std::make_pair(in->lo - out->lo, out->hi - in->hi);
}

ShrinkingClosures shrinking_closures(const PartialPlay& play) {
  const auto betas = moves_of(play, Role::Beta);
  const auto alphas = moves_of(play, Role::Alpha);
  const Rational d0 = *diameter(betas.front()->open);
  ShrinkingClosures s;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const BaseElement& v = alphas[k]->open;
    s.steps.push_back({v, *diameter(v), Rational::pow2(-static_cast<int>(k)) * d0, gaps(v, betas[k]->open)});
  }
  return s;
}

}  // namespace

std::optional<Certificate> default_certificate(const Space& space, const PartialPlay& play) {
  const auto alphas = moves_of(play, Role::Alpha);
  if (alphas.empty()) return std::nullopt;
  const BaseElement& last = alphas.back()->open;
  switch (space.completeness()) {
    case CompletenessClass::Finite: {
      std::size_t since = alphas.size() - 1;
      while (since > 0 && alphas[since - 1]->open == last) --since;
      return Stabilized{last, since};
    }
    case CompletenessClass::IncompleteMetric: {
      if (!space.is_line()) return std::nullopt;
      ExclusionList ex{{}, alphas.size()};
      for (std::size_t k = 0; k < alphas.size(); ++k) {
        Rational q = rational_at(k);
        if (!member(RationalPoint{q}, last, space)) ex.excluded.push_back(std::move(q));
      }
      return ex;
    }
    case CompletenessClass::CompleteMetric:
    case CompletenessClass::ZeroDimCompact:
      if (!diameter(last)) return std::nullopt;
      return shrinking_closures(play);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

json encode(const Transcript& t) {
  json j;
  j["space"] = encode(t.space);
  j["mode"] = std::string(mode_name(t.mode));
  j["alpha"] = t.alpha;
  j["beta"] = t.beta;
  j["seed"] = t.seed;
  j["rounds"] = t.rounds;
  j["moves"] = encode(t.play, t.space);
  j["certificate"] = t.certificate ? encode(*t.certificate, t.space) : json(nullptr);
  return j;
}

Transcript decode_transcript(const json& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "transcript must be an object");
  Space space = decode_space(j.at("space"));
  const Mode mode = parse_mode(j.at("mode").get<std::string>());
  Transcript t{space,
               mode,
               j.at("alpha").get<std::string>(),
               j.at("beta").get<std::string>(),
               j.at("seed").get<std::uint64_t>(),
               j.at("rounds").get<std::size_t>(),
               decode_play(j.at("moves"), space, mode),
               std::nullopt};
  if (j.contains("certificate") && !j.at("certificate").is_null()) {
    t.certificate = decode_certificate(j.at("certificate"), space);
  }
  return t;
}

Transcript simulate(const Space& space, const Strategy& alpha, const Strategy& beta,
                    std::size_t rounds, std::uint64_t seed) {
  if (alpha.role() != Role::Alpha || beta.role() != Role::Beta) {
    throw Error(Errc::IncompatibleStrategy, "simulate needs an alpha and a beta agent");
  }
  if (alpha.mode() != beta.mode()) throw Error(Errc::ModeMismatch, "agents play different games");
  if (!(alpha.space() == space) || !(beta.space() == space)) {
    throw Error(Errc::IncompatibleStrategy, "agents were built for a different space");
  }
  PartialPlay play(alpha.mode());
  auto alpha_memo = alpha.make_memo();
  auto beta_memo = beta.make_memo();
  for (std::size_t r = 0; r < rounds; ++r) {
    play = step(play, beta.respond(play, beta_memo.get()), space);
    play = step(play, alpha.respond(play, alpha_memo.get()), space);
  }
  Transcript t{space, alpha.mode(), alpha.id(), beta.id(), seed, rounds, play, std::nullopt};
  t.certificate = alpha.certificate(play, alpha_memo.get());
  if (!t.certificate) t.certificate = default_certificate(space, play);
  return t;
}

namespace {

bool check_closures(const ShrinkingClosures& s, const PartialPlay& play, const Space& space) {
  const auto betas = moves_of(play, Role::Beta);
  const auto alphas = moves_of(play, Role::Alpha);
  if (alphas.empty() || s.steps.size() != alphas.size()) return false;
  const auto d0 = diameter(betas.front()->open);
  if (!d0) return false;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const ClosureStep& st = s.steps[k];
    const BaseElement& v = alphas[k]->open;
    const BaseElement& u = betas[k]->open;
    if (!(st.open == v)) return false;
    const auto d = diameter(v);
    if (!d || !(st.diameter == *d)) return false;
    if (!(st.bound == Rational::pow2(-static_cast<int>(k)) * *d0)) return false;
    if (!(st.diameter <= st.bound)) return false;
    if (k > 0 && !(st.diameter < s.steps[k - 1].diameter)) return false;
    if (const auto* iv = v.get_if<Interval>()) {
      // closure [lo, hi] of V_k strictly inside U_k, hence inside V_{k-1}
      const auto g = gaps(v, u);
      if (!g || st.gap != g) return false;
      if (!(Rational(0) < g->first) || !(Rational(0) < g->second)) return false;
      if (k > 0) {
        const auto* prev = alphas[k - 1]->open.get_if<Interval>();
        if (!(prev->lo < iv->lo && iv->hi < prev->hi)) return false;
      }
    } else {
      // cylinders are clopen: the closure is the set itself
      if (st.gap) return false;
      if (!subset(v, u, space)) return false;
      if (k > 0 && !subset(v, alphas[k - 1]->open, space)) return false;
    }
  }
  return true;
}

bool check_stabilized(const Stabilized& st, const PartialPlay& play, const Space& space) {
  if (space.completeness() != CompletenessClass::Finite) return false;
  const auto alphas = moves_of(play, Role::Alpha);
  if (alphas.size() < 2) return false;
  const std::size_t n = alphas.size();
  if (!(alphas[n - 1]->open == st.stable) || !(alphas[n - 2]->open == st.stable)) return false;
  if (st.since_round >= n) return false;
  for (std::size_t j = st.since_round; j < n; ++j) {
    if (!(alphas[j]->open == st.stable)) return false;
  }
  return st.since_round == 0 || !(alphas[st.since_round - 1]->open == st.stable);
}

bool check_exclusions(const ExclusionList& ex, const PartialPlay& play, const Space& space) {
  if (!space.is_line()) return false;
  const auto alphas = moves_of(play, Role::Alpha);
  if (alphas.empty() || ex.prefix != alphas.size()) return false;
  const BaseElement& last = alphas.back()->open;
  std::vector<Rational> expected;
  for (std::size_t k = 0; k < ex.prefix; ++k) {
    Rational q = rational_at(k);
    if (!member(RationalPoint{q}, last, space)) expected.push_back(std::move(q));
  }
  for (const Rational& q : ex.excluded) {
    const auto idx = rational_index(q);
    if (!idx || *idx >= ex.prefix) return false;
    if (member(RationalPoint{q}, last, space)) return false;
  }
  return ex.excluded == expected;
}

}  // namespace

bool verify_certificate(const Transcript& t, const Strategy* alpha) {
  if (!t.certificate) throw Error(Errc::UnknownCertificateKind, "transcript carries no certificate");
  if (t.play.mode() != t.mode) return false;
  try {
    PartialPlay replay(t.mode);
    for (const Move& m : t.play.moves()) replay = step(replay, m, t.space);
  } catch (const Error&) {
    return false;
  }
  if (t.play.alpha_count() != t.rounds || t.play.beta_count() != t.rounds) return false;
  return std::visit(
      [&](const auto& c) -> bool {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, ShrinkingClosures>) {
          return check_closures(c, t.play, t.space);
        } else if constexpr (std::is_same_v<C, Stabilized>) {
          return check_stabilized(c, t.play, t.space);
        } else if constexpr (std::is_same_v<C, ExclusionList>) {
          return check_exclusions(c, t.play, t.space);
        } else {
          if (alpha == nullptr || alpha->id() != t.alpha || alpha->mode() != t.mode) return false;
          return alpha->check_certificate(t.play, *t.certificate);
        }
      },
      *t.certificate);
}

}  // namespace topogame
