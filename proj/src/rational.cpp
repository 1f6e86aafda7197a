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

#include "topogame/rational.hpp"

#include <cctype>

#include "topogame/error.hpp"

namespace topogame {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::InvalidDescriptor: return "InvalidDescriptor";
    case Errc::ParseError: return "ParseError";
    case Errc::EmptyProduct: return "EmptyProduct";
    case Errc::NotYourTurn: return "NotYourTurn";
    case Errc::NotNested: return "NotNested";
    case Errc::PointOutside: return "PointOutside";
    case Errc::MalformedMove: return "MalformedMove";
    case Errc::ModeMismatch: return "ModeMismatch";
    case Errc::IncompatibleStrategy: return "IncompatibleStrategy";
    case Errc::RefineBoundExceeded: return "RefineBoundExceeded";
    case Errc::NoUpperBoundWithinBound: return "NoUpperBoundWithinBound";
    case Errc::DisjointBases: return "DisjointBases";
    case Errc::NotDirected: return "NotDirected";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::UnknownCertificateKind: return "UnknownCertificateKind";
    case Errc::UnknownElement: return "UnknownElement";
    case Errc::UnknownGame: return "UnknownGame";
  }
  return "Unknown";
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(Errc::ParseError, "zero denominator");
  value_ = den < 0 ? Rep(-BigInt(num), -BigInt(den)) : Rep(BigInt(num), BigInt(den));
}

Rational Rational::from_big(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(Errc::ParseError, "zero denominator");
  return den < 0 ? Rational(Rep(BigInt(-num), BigInt(-den))) : Rational(Rep(num, den));
}

namespace {

BigInt parse_int(std::string_view s, std::string_view whole) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw Error(Errc::ParseError, "bad rational '" + std::string(whole) + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw Error(Errc::ParseError, "bad rational '" + std::string(whole) + "'");
    }
    v = v * 10 + (s[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(Rep(parse_int(text, text)));
  BigInt num = parse_int(text.substr(0, slash), text);
  BigInt den = parse_int(text.substr(slash + 1), text);
  if (den <= 0) throw Error(Errc::ParseError, "denominator must be positive in '" + std::string(text) + "'");
  return from_big(num, den);
}

Rational Rational::pow2(int exponent) {
  BigInt one = 1;
  if (exponent >= 0) return Rational(Rep(one << exponent));
  return Rational(Rep(one, one << (-exponent)));
}

BigInt Rational::floor() const {
  BigInt n = numerator();
  BigInt d = denominator();
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

std::string Rational::str() const { return numerator().str() + "/" + denominator().str(); }

std::string Rational::hex() const {
  const BigInt n = numerator();
  const BigInt a = n < 0 ? BigInt(-n) : n;
  const std::string mag = a.str(0, std::ios_base::hex);
  return (n < 0 ? "-" : "") + mag + "/" + denominator().str(0, std::ios_base::hex);
}

Rational Rational::operator-() const { return Rational(Rep(-value_)); }
Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.value_ == 0) throw Error(Errc::ParseError, "division by zero");
  value_ /= o.value_;
  return *this;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational abs(const Rational& a) { return a < Rational(0) ? -a : a; }

}  // namespace topogame
