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

#include "topogame/codec.hpp"
#include "topogame/error.hpp"
#include "topogame/games.hpp"

using namespace topogame;

namespace {

void expect_code(Errc code, const std::function<void()>& f) {
  try {
    f();
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

}  // namespace

TEST_CASE("space descriptors round-trip") {
  const json fin = parse_json(R"({"kind":"finite","atoms":["a","b"],"opens":[[],["a"],["a","b"]]})");
  const Space s = decode_space(fin);
  CHECK(s.kind() == SpaceKind::Finite);
  CHECK(s.opens() == std::vector<AtomSet>{0, 1, 3});
  CHECK(encode(s) == fin);
  const Space p = parse_space_arg(R"({"kind":"product","factors":["real-line",{"kind":"cantor"}]})");
  CHECK(p.factors().size() == 2);
  CHECK(decode_space(encode(p)) == p);
  CHECK(parse_space_arg("rational-line") == Space::rational_line());
}

TEST_CASE("bad space arguments") {
  expect_code(Errc::InvalidDescriptor, [] { parse_space_arg("bogus"); });
  expect_code(Errc::InvalidDescriptor, [] { parse_space_arg(R"({"kind":"torus"})"); });
  expect_code(Errc::ParseError, [] { parse_space_arg("{not json"); });
  expect_code(Errc::InvalidDescriptor,
              [] { parse_space_arg(R"({"kind":"finite","atoms":["a"],"opens":[[],["z"],["a"]]})"); });
  expect_code(Errc::EmptyProduct, [] { parse_space_arg(R"({"kind":"product","factors":[]})"); });
}

TEST_CASE("rationals are rendered as p/q strings") {
  CHECK(encode(Rational(3, 8)) == json("3/8"));
  CHECK(encode(Rational(2)) == json("2/1"));
  CHECK(decode_rational(json("-6/8")) == Rational(-3, 4));
  CHECK(decode_rational(json(5)) == Rational(5));
  expect_code(Errc::ParseError, [] { decode_rational(json(0.5)); });
}

TEST_CASE("opens and points round-trip") {
  const Space r = Space::real_line();
  const BaseElement iv = interval(Rational(1, 3), Rational(1, 2));
  CHECK(encode(iv, r).dump() == R"({"interval":["1/3","1/2"]})");
  CHECK(decode_open(encode(iv, r), r) == iv);
  const Space c = Space::cantor();
  CHECK(decode_open(parse_json(R"({"cylinder":"0110"})"), c) == cylinder("0110"));
  CHECK(decode_point(encode(Point(BitStream{{1, 4}}), c), c) == Point(BitStream{{1, 4}}));
  const Space f = Space::finite({"a", "b"}, {0, 1, 3});
  CHECK(decode_open(parse_json(R"({"open":["b","a"]})"), f) == BaseElement(FiniteOpen{3}));
  CHECK(encode(Point(AtomPoint{1}), f).dump() == R"({"atom":"b"})");
  const Space p = Space::product({r, c});
  const BaseElement box = make_box(p, {{1, cylinder("1")}});
  CHECK(encode(box, p).dump() == R"({"box":[[1,{"cylinder":"1"}]]})");
  CHECK(decode_open(encode(box, p), p) == box);
  const Point t = make_tuple(p, {{0, RationalPoint{Rational(7)}}});
  CHECK(decode_point(encode(t, p), p) == t);
}

TEST_CASE("descriptor errors") {
  const Space r = Space::real_line();
  expect_code(Errc::InvalidDescriptor, [&] { decode_open(parse_json(R"({"interval":["1/2","1/3"]})"), r); });
  expect_code(Errc::KindMismatch, [&] { decode_open(parse_json(R"({"cylinder":"0"})"), r); });
  expect_code(Errc::ParseError, [&] { decode_open(parse_json(R"({"interval":["1/2"]})"), r); });
  expect_code(Errc::ParseError, [&] { decode_open(parse_json(R"({"square":1})"), r); });
  expect_code(Errc::KindMismatch, [&] { decode_point(parse_json(R"({"atom":"a"})"), r); });
}

TEST_CASE("dump sorts keys and ends with a newline") {
  const json j = parse_json(R"({"b":1,"a":{"d":2,"c":3}})");
  CHECK(dump(j) == "{\n  \"a\": {\n    \"c\": 3,\n    \"d\": 2\n  },\n  \"b\": 1\n}\n");
}
