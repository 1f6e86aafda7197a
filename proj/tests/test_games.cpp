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

#include <functional>
#include <set>

#include "topogame/enumerate.hpp"
#include "topogame/error.hpp"
#include "topogame/games.hpp"
#include "topogame/strategies.hpp"

using namespace topogame;

namespace {

Rational q(long long n, long long d = 1) { return Rational(n, d); }

Move beta(BaseElement b, std::optional<Point> x = std::nullopt) { return {Role::Beta, std::move(b), std::move(x)}; }
Move alpha(BaseElement b) { return {Role::Alpha, std::move(b), std::nullopt}; }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return Errc::ParseError;
}

// Topologies on n labeled atoms, by brute force over families of subsets.
std::vector<Space> topologies(std::size_t n) {
  static const char* names[] = {"a", "b", "c"};
  const unsigned sets = 1u << n;
  const AtomSet full = sets - 1;
  std::vector<Space> out;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << sets); ++fam) {
    if (!(fam & 1u) || !(fam >> full & 1u)) continue;
    bool closed = true;
    for (unsigned a = 0; a < sets; ++a)
      for (unsigned b = 0; b < sets; ++b)
        if ((fam >> a & 1u) && (fam >> b & 1u) && (!(fam >> (a | b) & 1u) || !(fam >> (a & b) & 1u))) closed = false;
    if (!closed) continue;
    std::vector<AtomSet> opens;
    for (unsigned s = 0; s < sets; ++s)
      if (fam >> s & 1u) opens.push_back(s);
    out.push_back(Space::finite(std::vector<std::string>(names, names + n), opens));
  }
  return out;
}

}  // namespace

TEST_CASE("step examples") {
  const Space r = Space::real_line();
  PartialPlay p = step(PartialPlay(Mode::BM), beta(interval(q(0), q(2))), r);
  p = step(p, alpha(interval(q(0), q(1))), r);
  CHECK(p.size() == 2);
  CHECK(p.turn() == Role::Beta);

  const PartialPlay p1 = step(PartialPlay(Mode::BM), beta(interval(q(0), q(1))), r);
  CHECK(code_of([&] { step(p1, alpha(interval(q(0), q(2))), r); }) == Errc::NotNested);
  CHECK(code_of([&] { step(PartialPlay(Mode::Ch), beta(interval(q(0), q(1)), RationalPoint{q(3)}), r); }) ==
        Errc::PointOutside);
}

TEST_CASE("step error precedence") {
  const Space r = Space::real_line();
  CHECK(code_of([&] { step(PartialPlay(Mode::BM), alpha(interval(q(0), q(1))), r); }) == Errc::NotYourTurn);
  CHECK(code_of([&] { step(PartialPlay(Mode::Ch), beta(interval(q(0), q(1))), r); }) == Errc::MalformedMove);
  CHECK(code_of([&] { step(PartialPlay(Mode::BM), beta(interval(q(0), q(1)), RationalPoint{q(1, 2)}), r); }) ==
        Errc::MalformedMove);
  CHECK(code_of([&] { step(PartialPlay(Mode::BM), beta(cylinder("0")), r); }) == Errc::KindMismatch);
  // ch: alpha must keep beta's point.
  PartialPlay c = step(PartialPlay(Mode::Ch), beta(interval(q(0), q(1)), RationalPoint{q(1, 4)}), r);
  CHECK(code_of([&] { step(c, alpha(interval(q(1, 2), q(1))), r); }) == Errc::PointOutside);
  c = step(c, alpha(interval(q(0), q(1, 2))), r);
  CHECK(c.turn() == Role::Beta);
}

TEST_CASE("equal nesting is allowed for both players") {
  const Space r = Space::real_line();
  PartialPlay p = step(PartialPlay(Mode::BM), beta(interval(q(0), q(1))), r);
  p = step(p, alpha(interval(q(0), q(1))), r);
  p = step(p, beta(interval(q(0), q(1))), r);
  CHECK(p.size() == 3);
}

TEST_CASE("stronger examples") {
  const Space r = Space::real_line();
  PartialPlay u0 = step(PartialPlay(Mode::BM), beta(interval(q(0), q(1))), r);
  PartialPlay longer = step(step(u0, alpha(interval(q(1, 4), q(3, 4))), r), beta(interval(q(1, 3), q(1, 2))), r);
  CHECK(stronger(u0, longer));
  CHECK_FALSE(stronger(longer, u0));
  CHECK(stronger(longer, longer));
  PartialPlay other = step(PartialPlay(Mode::BM), beta(interval(q(0), q(2))), r);
  CHECK_FALSE(stronger(u0, other));
  CHECK(code_of([&] { stronger(u0, PartialPlay(Mode::Ch)); }) == Errc::ModeMismatch);
}

TEST_CASE("stronger is a partial order on plays of depth <= 3 over 3 atoms") {
  std::vector<AtomSet> all;
  for (AtomSet s = 0; s < 8; ++s) all.push_back(s);
  const Space s = Space::finite({"a", "b", "c"}, all);
  const auto opens = enumerate_base(s, 16);
  std::vector<PartialPlay> plays;
  std::function<void(const PartialPlay&)> grow = [&](const PartialPlay& p) {
    if (!p.empty()) plays.push_back(p);
    if (p.size() == 3) return;
    for (const auto& o : opens) {
      try {
        grow(step(p, Move{p.turn(), o, std::nullopt}, s));
      } catch (const Error&) {
      }
    }
  };
  grow(PartialPlay(Mode::BM));
  REQUIRE(plays.size() == 7 + 19 + 37);
  auto beta_key = [](const PartialPlay& p) {
    std::string k;
    for (std::size_t i = 0; i < p.size(); i += 2) k += key(p.moves()[i].open) + "|";
    return k;
  };
  for (const auto& a : plays) {
    CHECK(stronger(a, a));
    for (const auto& b : plays) {
      const bool ab = stronger(a, b);
      if (ab && stronger(b, a)) CHECK(beta_key(a) == beta_key(b));
      if (!ab) continue;
      for (const auto& c : plays) {
        if (stronger(b, c)) CHECK(stronger(a, c));
      }
    }
  }
  // Along a fixed strategy the encodings themselves are antisymmetric.
  auto s_alpha = make_alpha("minimal-open", s, Mode::BM);
  std::vector<PartialPlay> along;
  for (const auto& p : plays) {
    bool follows = true;
    for (std::size_t i = 1; i < p.size() && follows; i += 2) {
      follows = s_alpha->respond(p.prefix(i)).open == p.moves()[i].open;
    }
    if (follows) along.push_back(p);
  }
  for (const auto& a : along)
    for (const auto& b : along)
      if (stronger(a, b) && stronger(b, a)) CHECK(key(a) == key(b));
}

TEST_CASE("simulate: completeness vs random on the real line") {
  const Space r = Space::real_line();
  auto a = make_alpha("completeness", r, Mode::BM);
  auto b = make_beta("random", r, Mode::BM, 42);
  const Transcript t = simulate(r, *a, *b, 10, 42);
  REQUIRE(t.certificate);
  const auto* sc = std::get_if<ShrinkingClosures>(&*t.certificate);
  REQUIRE(sc != nullptr);
  REQUIRE(sc->steps.size() == 10);
  const auto& u0 = *t.play.moves()[0].open.get_if<Interval>();
  const auto& v9 = *t.play.moves()[19].open.get_if<Interval>();
  Rational bound = u0.hi - u0.lo;
  for (int i = 0; i < 9; ++i) bound /= 2;
  CHECK(v9.hi - v9.lo <= bound);
  CHECK(verify_certificate(t));
  CHECK(t.alpha == "completeness");
  CHECK(t.beta == "random:42");
}

TEST_CASE("simulate: completeness vs diagonal on the rationals") {
  const Space qs = Space::rational_line();
  auto a = make_alpha("completeness", qs, Mode::BM);
  auto b = make_beta("diagonal", qs, Mode::BM);
  const Transcript t = simulate(qs, *a, *b, 5, 0);
  REQUIRE(t.certificate);
  const auto* ex = std::get_if<ExclusionList>(&*t.certificate);
  REQUIRE(ex != nullptr);
  CHECK(ex->prefix == 5);
  const std::vector<Rational> first = {q(0), q(1), q(-1), q(1, 2), q(-1, 2)};
  const auto& last = *t.play.moves().back().open.get_if<Interval>();
  for (const auto& r : first) {
    CHECK_FALSE((last.lo < r && r < last.hi));
    CHECK(std::find(ex->excluded.begin(), ex->excluded.end(), r) != ex->excluded.end());
  }
  CHECK(verify_certificate(t));
}

TEST_CASE("simulate: finite spaces stabilize") {
  std::size_t games = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const Space& s : topologies(n)) {
      for (Mode mode : {Mode::BM, Mode::Ch}) {
        for (const char* alpha_kind : {"minimal-open", "compiled:minimal-open"}) {
          auto a = make_strategy(alpha_kind, s, mode, Role::Alpha);
          for (std::uint64_t seed = 0; seed < 4; ++seed) {
            auto b = make_beta("random", s, mode, seed);
            const Transcript t = simulate(s, *a, *b, s.opens().size() + 2, seed);
            CHECK(verify_certificate(t, a.get()));
            if (std::string(alpha_kind) == "minimal-open") {
              REQUIRE(t.certificate);
              const auto* st = std::get_if<Stabilized>(&*t.certificate);
              REQUIRE(st != nullptr);
              CHECK(st->since_round <= s.opens().size());
            }
            ++games;
          }
        }
      }
    }
  }
  CHECK(games == (1 + 4 + 29) * 2 * 2 * 4);
}

TEST_CASE("verify rejects tampering") {
  const Space r = Space::real_line();
  auto a = make_alpha("completeness", r, Mode::BM);
  auto b = make_beta("random", r, Mode::BM, 3);
  const Transcript t = simulate(r, *a, *b, 6, 3);
  REQUIRE(verify_certificate(t));

  // Widen one alpha open: still nested in its beta open, but the closure
  // touches the boundary and the recorded diameter no longer matches.
  auto moves = t.play.moves();
  const auto u = *moves[4].open.get_if<Interval>();
  moves[5].open = Interval{u.lo, u.hi};
  Transcript bad = t;
  bad.play = PartialPlay::unchecked(Mode::BM, moves);
  CHECK_FALSE(verify_certificate(bad));

  Transcript none = t;
  none.certificate.reset();
  CHECK(code_of([&] { verify_certificate(none); }) == Errc::UnknownCertificateKind);
}

TEST_CASE("verify rejects a wrong stable set") {
  const Space s = Space::finite({"a", "b"}, {0, 1, 3});
  auto a = make_alpha("minimal-open", s, Mode::BM);
  auto b = make_beta("random", s, Mode::BM, 0);
  Transcript t = simulate(s, *a, *b, 3, 0);
  REQUIRE(verify_certificate(t));
  auto* st = std::get_if<Stabilized>(&*t.certificate);
  REQUIRE(st != nullptr);
  st->stable = FiniteOpen{3};
  CHECK_FALSE(verify_certificate(t));
}

TEST_CASE("transcripts round-trip through JSON") {
  const Space c = Space::cantor();
  auto a = make_alpha("cylinder-extend", c, Mode::Ch);
  auto b = make_beta("random", c, Mode::Ch, 9);
  const Transcript t = simulate(c, *a, *b, 5, 9);
  const json j = encode(t);
  const Transcript back = decode_transcript(j);
  CHECK(back.play == t.play);
  CHECK(back.certificate == t.certificate);
  CHECK(encode(back) == j);
  CHECK(verify_certificate(back));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"alpha", "beta", "certificate", "mode", "moves", "rounds", "seed", "space"});
}

TEST_CASE("simulate checks compatibility") {
  const Space r = Space::real_line();
  auto a = make_alpha("completeness", r, Mode::BM);
  auto b = make_beta("random", r, Mode::Ch, 0);
  CHECK(code_of([&] { simulate(r, *a, *b, 2, 0); }) == Errc::ModeMismatch);
  CHECK(code_of([&] { simulate(r, *b, *a, 2, 0); }) != Errc::ParseError);
}

TEST_CASE("diameter") {
  CHECK(diameter(interval(q(1, 4), q(1, 2))) == q(1, 4));
  CHECK(diameter(cylinder("010")) == q(1, 8));
  CHECK_FALSE(diameter(FiniteOpen{1}).has_value());
}
