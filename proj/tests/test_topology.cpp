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

#include <random>

#include "topogame/enumerate.hpp"
#include "topogame/error.hpp"
#include "topogame/topology.hpp"

using namespace topogame;

namespace {

Space two_points() { return Space::finite({"a", "b"}, {0b00, 0b01, 0b11}); }
Space three_discrete() {
  std::vector<AtomSet> all;
  for (AtomSet s = 0; s < 8; ++s) all.push_back(s);
  return Space::finite({"a", "b", "c"}, all);
}

Rational q(long long n, long long d = 1) { return Rational(n, d); }

std::vector<Space> sample_spaces() {
  return {Space::real_line(), Space::rational_line(), Space::cantor(), three_discrete(),
          Space::product({Space::real_line(), Space::cantor()})};
}

}  // namespace

TEST_CASE("subset examples") {
  const Space r = Space::real_line();
  CHECK(subset(interval(q(0), q(1)), interval(q(0), q(2)), r));
  CHECK_FALSE(subset(interval(q(0), q(2)), interval(q(1), q(3)), r));
  CHECK(subset(cylinder("01"), cylinder("0"), Space::cantor()));
  CHECK_FALSE(subset(cylinder("0"), cylinder("01"), Space::cantor()));
}

TEST_CASE("intersect examples") {
  const Space r = Space::real_line();
  CHECK(intersect(interval(q(0), q(2)), interval(q(1), q(3)), r) == interval(q(1), q(2)));
  CHECK_FALSE(intersect(interval(q(0), q(1)), interval(q(2), q(3)), r).has_value());
  CHECK_FALSE(intersect(interval(q(0), q(1)), interval(q(1), q(3)), r).has_value());
  const Space f = Space::finite({"a", "b"}, {0, 1, 2, 3});
  CHECK(intersect(FiniteOpen{0b01}, FiniteOpen{0b11}, f) == BaseElement(FiniteOpen{0b01}));
  CHECK_FALSE(intersect(FiniteOpen{0b01}, FiniteOpen{0b10}, f).has_value());
  CHECK(intersect(cylinder("0"), cylinder("01"), Space::cantor()) == cylinder("01"));
  CHECK_FALSE(intersect(cylinder("00"), cylinder("01"), Space::cantor()).has_value());
}

TEST_CASE("member examples") {
  const Space r = Space::real_line();
  CHECK(member(RationalPoint{q(1, 2)}, interval(q(0), q(1)), r));
  CHECK_FALSE(member(RationalPoint{q(0)}, interval(q(0), q(1)), r));
  CHECK_FALSE(member(RationalPoint{q(1)}, interval(q(0), q(1)), r));
  CHECK(member(BitStream{{1}}, cylinder("01"), Space::cantor()));
  CHECK_FALSE(member(BitStream{{0}}, cylinder("01"), Space::cantor()));
}

TEST_CASE("pick_point examples") {
  CHECK(pick_point(interval(q(0), q(1)), Space::real_line()) == Point(RationalPoint{q(1, 2)}));
  CHECK(pick_point(cylinder("01"), Space::cantor()) == Point(BitStream{{1}}));
  const Space f = Space::finite({"a", "b"}, {0, 0b11});
  CHECK(pick_point(FiniteOpen{0b11}, f) == Point(AtomPoint{0}));
  const Space p = Space::product({Space::real_line(), Space::cantor()});
  const Point x = pick_point(make_box(p, {{0, interval(q(2), q(4))}, {1, cylinder("1")}}), p);
  CHECK(x == Point(make_tuple(p, {{0, RationalPoint{q(3)}}, {1, BitStream{{0}}}})));
}

TEST_CASE("kind mismatch is reported") {
  try {
    (void)subset(cylinder("0"), interval(q(0), q(1)), Space::real_line());
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::KindMismatch);
  }
  try {
    (void)member(AtomPoint{0}, interval(q(0), q(1)), Space::real_line());
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::KindMismatch);
  }
}

TEST_CASE("invalid descriptors are rejected") {
  CHECK_THROWS_AS(validate(interval(q(1), q(1)), Space::real_line()), Error);
  CHECK_THROWS_AS(validate(FiniteOpen{0b10}, two_points()), Error);  // {b} is not open
  CHECK_THROWS_AS(validate(FiniteOpen{0}, two_points()), Error);
  CHECK_THROWS_AS(validate(cylinder("012"), Space::cantor()), Error);
  CHECK_THROWS_AS(Space::finite({"a", "b"}, {0, 1, 2}), Error);     // no whole space
  CHECK_THROWS_AS(Space::finite({"a", "b", "c"}, {0, 1, 2, 7}), Error);  // 1|2 missing
}

TEST_CASE("make_product examples") {
  CHECK_THROWS_AS(make_product({}), Error);
  const Space r = Space::real_line();
  const Space p = make_product({r, r});
  const BaseElement b0 = make_box(p, {{0, interval(q(0), q(1))}});
  const BaseElement b1 = make_box(p, {{1, interval(q(0), q(1))}});
  CHECK(intersect(b0, b1, p) == make_box(p, {{0, interval(q(0), q(1))}, {1, interval(q(0), q(1))}}));
  CHECK(member(make_tuple(p, {{0, RationalPoint{q(1, 2)}}}), b0, p));

  // Unary product agrees with the factor.
  const Space c = Space::cantor();
  const Space u = make_product({c});
  const auto opens = enumerate_base(c, 40);
  for (const auto& x : opens) {
    for (const auto& y : opens) {
      CHECK(subset(make_box(u, {{0, x}}), make_box(u, {{0, y}}), u) == subset(x, y, c));
    }
  }
}

TEST_CASE("canonical boxes drop whole components") {
  const Space f = two_points();
  const Space p = make_product({f, Space::cantor()});
  CHECK(make_box(p, {{0, FiniteOpen{0b11}}, {1, cylinder("")}}) == make_box(p, {}));
  CHECK(is_whole(make_box(p, {}), p));
}

TEST_CASE("subset is reflexive and transitive on samples") {
  std::mt19937_64 gen(11);
  for (const Space& s : sample_spaces()) {
    const auto pool = enumerate_base(s, 200);
    for (int k = 0; k < 1000; ++k) {
      const auto& a = pool[gen() % pool.size()];
      const auto& b = pool[gen() % pool.size()];
      const auto& c = pool[gen() % pool.size()];
      CHECK(subset(a, a, s));
      if (subset(a, b, s) && subset(b, c, s)) CHECK(subset(a, c, s));
    }
    // Chains built by refinement make the transitive branch non-vacuous.
    for (int k = 0; k < 200; ++k) {
      const auto a = pool[gen() % pool.size()];
      const auto b = enumerate_subsets(a, s, 8, true)[gen() % 8 % enumerate_subsets(a, s, 8, true).size()];
      const auto subs = enumerate_subsets(b, s, 8, true);
      const auto c = subs[gen() % subs.size()];
      CHECK(subset(b, a, s));
      CHECK(subset(c, b, s));
      CHECK(subset(c, a, s));
    }
  }
}

TEST_CASE("intersect is sound on sampled points") {
  std::mt19937_64 gen(12);
  for (const Space& s : sample_spaces()) {
    const auto pool = enumerate_base(s, 120);
    for (int k = 0; k < 1000; ++k) {
      const auto& a = pool[gen() % pool.size()];
      const auto& b = pool[gen() % pool.size()];
      const auto meet = intersect(a, b, s);
      std::vector<Point> pts = sample_points(a, s, 4);
      for (const auto& x : sample_points(b, s, 4)) pts.push_back(x);
      for (const auto& x : pts) {
        const bool both = member(x, a, s) && member(x, b, s);
        CHECK(both == (meet.has_value() && member(x, *meet, s)));
      }
    }
  }
}

TEST_CASE("pick_point and sample_points land inside") {
  for (const Space& s : sample_spaces()) {
    for (const auto& b : enumerate_base(s, 300)) {
      CHECK(member(pick_point(b, s), b, s));
      const auto pts = sample_points(b, s, 5);
      CHECK_FALSE(pts.empty());
      for (const auto& x : pts) CHECK(member(x, b, s));
    }
  }
}

TEST_CASE("non-T1 finite spaces are allowed") {
  const Space s = two_points();
  CHECK(s.completeness() == CompletenessClass::Finite);
  CHECK(subset(FiniteOpen{0b01}, FiniteOpen{0b11}, s));
  CHECK(member(AtomPoint{1}, FiniteOpen{0b11}, s));
  CHECK_FALSE(member(AtomPoint{1}, FiniteOpen{0b01}, s));
}

TEST_CASE("completeness classes follow the kind") {
  CHECK(Space::real_line().completeness() == CompletenessClass::CompleteMetric);
  CHECK(Space::rational_line().completeness() == CompletenessClass::IncompleteMetric);
  CHECK(Space::cantor().completeness() == CompletenessClass::ZeroDimCompact);
  CHECK(two_points().completeness() == CompletenessClass::Finite);
}

TEST_CASE("canonical opener") {
  CHECK(canonical_opener(Space::real_line()) == interval(q(0), q(1)));
  CHECK(canonical_opener(Space::cantor()) == cylinder(""));
  CHECK(canonical_opener(two_points()) == BaseElement(FiniteOpen{0b11}));
}
