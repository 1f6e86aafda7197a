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

#include <set>

#include "topogame/enumerate.hpp"
#include "topogame/error.hpp"

using namespace topogame;

namespace {

// cw(n) = fusc(n)/fusc(n+1), computed from the diatomic recurrence.
std::uint64_t fusc(std::uint64_t n) {
  if (n < 2) return n;
  return n % 2 == 0 ? fusc(n / 2) : fusc(n / 2) + fusc(n / 2 + 1);
}

Rational oracle(std::uint64_t k) {
  if (k == 0) return Rational(0);
  const std::uint64_t m = (k + 1) / 2;
  const Rational cw(static_cast<long long>(fusc(m)), static_cast<long long>(fusc(m + 1)));
  return k % 2 == 1 ? cw : -cw;
}

}  // namespace

TEST_CASE("rational enumeration starts 0, 1, -1, 1/2, -1/2") {
  const std::vector<Rational> want = {Rational(0), Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2)};
  for (std::uint64_t k = 0; k < want.size(); ++k) {
    CHECK(rational_at(k) == want[k]);
    CHECK(oracle(k) == want[k]);
  }
}

TEST_CASE("rational enumeration matches the diatomic oracle and inverts") {
  std::set<std::string> seen;
  for (std::uint64_t k = 0; k < 5000; ++k) {
    const Rational r = rational_at(k);
    CHECK(r == oracle(k));
    CHECK(rational_index(r) == k);
    CHECK(seen.insert(r.str()).second);
  }
  CHECK(rational_index(Rational(355, 113)).has_value());
  CHECK(rational_at(*rational_index(Rational(-355, 113))) == Rational(-355, 113));
}

TEST_CASE("Cantor pairing") {
  CHECK(unpair(0) == std::pair<std::uint64_t, std::uint64_t>{0, 0});
  CHECK(unpair(1) == std::pair<std::uint64_t, std::uint64_t>{1, 0});
  CHECK(unpair(2) == std::pair<std::uint64_t, std::uint64_t>{0, 1});
  for (std::uint64_t k = 0; k < 10000; ++k) {
    const auto [i, j] = unpair(k);
    CHECK(pair_index(i, j) == k);
    CHECK(k == (i + j) * (i + j + 1) / 2 + j);
  }
}

TEST_CASE("cantor base starts with the empty stem") {
  const auto b = enumerate_base(Space::cantor(), 7);
  const std::vector<std::string> want = {"", "0", "1", "00", "01", "10", "11"};
  REQUIRE(b.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(b[i] == cylinder(want[i]));
}

TEST_CASE("finite base follows declaration order") {
  const Space s = Space::finite({"a", "b"}, {0, 0b01, 0b11});
  const auto b = enumerate_base(s, 2);
  REQUIRE(b.size() == 2);
  CHECK(b[0] == BaseElement(FiniteOpen{0b01}));
  CHECK(b[1] == BaseElement(FiniteOpen{0b11}));
  CHECK(enumerate_base(s, 10).size() == 2);
}

TEST_CASE("interval base is injective, valid, and prefix-stable") {
  for (const Space& s : {Space::real_line(), Space::cantor(),
                         Space::product({Space::real_line(), Space::finite({"a"}, {0, 1})})}) {
    const auto a = enumerate_base(s, 400);
    const auto b = enumerate_base(s, 250);
    std::set<std::string> keys;
    for (std::size_t i = 0; i < a.size(); ++i) {
      validate(a[i], s);
      CHECK(keys.insert(key(a[i])).second);
      if (i < b.size()) CHECK(a[i] == b[i]);
    }
  }
  const auto first = enumerate_base(Space::real_line(), 3);
  for (const auto& e : first) {
    const auto& iv = *e.get_if<Interval>();
    CHECK(iv.lo < iv.hi);
  }
}

TEST_CASE("index-of is total on generated descriptors") {
  for (const Space& s : {Space::real_line(), Space::cantor()}) {
    const auto a = enumerate_base(s, 150);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(base_index_of(a[i], s) == i);
  }
  CHECK(base_index_of(interval(Rational(0), Rational(1)), Space::real_line()).has_value());
}

TEST_CASE("subset sequences stay inside their open") {
  const Space r = Space::real_line();
  const BaseElement u = interval(Rational(1, 3), Rational(1, 2));
  const auto subs = enumerate_subsets(u, r, 60, true);
  REQUIRE_FALSE(subs.empty());
  CHECK(subs.front() == u);
  for (const auto& w : subs) CHECK(subset(w, u, r));
  for (const auto& w : enumerate_subsets(u, r, 60, false)) CHECK_FALSE(w == u);

  const auto cyl = enumerate_subsets(cylinder("10"), Space::cantor(), 5, true);
  REQUIRE(cyl.size() == 5);
  CHECK(cyl[0] == cylinder("10"));
  CHECK(cyl[1] == cylinder("100"));
  CHECK(cyl[2] == cylinder("101"));
}
