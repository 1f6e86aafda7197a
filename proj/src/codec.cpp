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

#include "topogame/codec.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "topogame/error.hpp"

namespace topogame {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::ParseError, what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad(std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace

json encode(const Rational& q) { return q.str(); }

Rational decode_rational(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  bad("rational must be a \"p/q\" string");
}

json encode(const Space& space) {
  json j;
  j["kind"] = std::string(kind_name(space.kind()));
  if (space.kind() == SpaceKind::Finite) {
    j["atoms"] = space.atoms();
    json opens = json::array();
    for (AtomSet o : space.opens()) {
      json names = json::array();
      for (std::size_t i = 0; i < space.atoms().size(); ++i) {
        if ((o >> i) & 1u) names.push_back(space.atoms()[i]);
      }
      opens.push_back(std::move(names));
    }
    j["opens"] = std::move(opens);
  } else if (space.kind() == SpaceKind::Product) {
    json factors = json::array();
    for (const Space& f : space.factors()) factors.push_back(encode(f));
    j["factors"] = std::move(factors);
  }
  return j;
}

Space decode_space(const json& j) {
  // A bare string names a parameterless kind.
  const std::string kind = j.is_string() ? j.get<std::string>() : field(j, "kind").get<std::string>();
  if (j.is_string() && kind != "rational-line" && kind != "real-line" && kind != "cantor") {
    throw Error(Errc::InvalidDescriptor, "unknown space kind '" + kind + "'");
  }
  if (kind == "rational-line") return Space::rational_line();
  if (kind == "real-line") return Space::real_line();
  if (kind == "cantor") return Space::cantor();
  if (kind == "finite") {
    auto atoms = field(j, "atoms").get<std::vector<std::string>>();
    std::vector<AtomSet> opens;
    for (const json& o : field(j, "opens")) {
      AtomSet mask = 0;
      for (const json& a : o) {
        const auto name = a.get<std::string>();
        std::size_t idx = atoms.size();
        for (std::size_t i = 0; i < atoms.size(); ++i) {
          if (atoms[i] == name) idx = i;
        }
        if (idx == atoms.size()) throw Error(Errc::InvalidDescriptor, "unknown atom '" + name + "'");
        mask |= AtomSet{1} << idx;
      }
      opens.push_back(mask);
    }
    return Space::finite(std::move(atoms), std::move(opens));
  }
  if (kind == "product") {
    std::vector<Space> factors;
    for (const json& f : field(j, "factors")) factors.push_back(decode_space(f));
    return Space::product(std::move(factors));
  }
  throw Error(Errc::InvalidDescriptor, "unknown space kind '" + kind + "'");
}

json encode(const BaseElement& b, const Space& space) {
  validate(b, space);
  json j;
  if (const auto* iv = b.get_if<Interval>()) {
    j["interval"] = json::array({iv->lo.str(), iv->hi.str()});
  } else if (const auto* c = b.get_if<Cylinder>()) {
    j["cylinder"] = c->stem;
  } else if (const auto* f = b.get_if<FiniteOpen>()) {
    json names = json::array();
    for (std::size_t i = 0; i < space.atoms().size(); ++i) {
      if ((f->atoms >> i) & 1u) names.push_back(space.atoms()[i]);
    }
    j["open"] = std::move(names);
  } else {
    json entries = json::array();
    for (const BoxEntry& e : b.get_if<ProductBox>()->assignments) {
      entries.push_back(json::array({e.factor, encode(e.open, space.factors()[e.factor])}));
    }
    j["box"] = std::move(entries);
  }
  return j;
}

BaseElement decode_open(const json& j, const Space& space) {
  if (!j.is_object()) bad("open set descriptor must be an object");
  if (j.contains("interval")) {
    const json& a = j.at("interval");
    if (!a.is_array() || a.size() != 2) bad("interval needs [lo, hi]");
    BaseElement b = Interval{decode_rational(a[0]), decode_rational(a[1])};
    validate(b, space);
    return b;
  }
  if (j.contains("cylinder")) {
    BaseElement b = Cylinder{j.at("cylinder").get<std::string>()};
    validate(b, space);
    return b;
  }
  if (j.contains("open")) {
    if (space.kind() != SpaceKind::Finite) throw Error(Errc::KindMismatch, "finite open outside a finite space");
    AtomSet mask = 0;
    for (const json& a : j.at("open")) {
      auto idx = space.atom_index(a.get<std::string>());
      if (!idx) throw Error(Errc::InvalidDescriptor, "unknown atom");
      mask |= AtomSet{1} << *idx;
    }
    BaseElement b = FiniteOpen{mask};
    validate(b, space);
    return b;
  }
  if (j.contains("box")) {
    if (space.kind() != SpaceKind::Product) throw Error(Errc::KindMismatch, "box outside a product space");
    std::vector<BoxEntry> entries;
    for (const json& e : j.at("box")) {
      if (!e.is_array() || e.size() != 2) bad("box entry needs [factor, open]");
      const auto f = e[0].get<std::size_t>();
      if (f >= space.factors().size()) throw Error(Errc::InvalidDescriptor, "box factor out of range");
      entries.push_back({f, decode_open(e[1], space.factors()[f])});
    }
    return make_box(space, std::move(entries));
  }
  bad("unrecognized open set descriptor");
}

json encode(const Point& p, const Space& space) {
  validate(p, space);
  json j;
  if (const auto* r = p.get_if<RationalPoint>()) {
    j["rational"] = r->value.str();
  } else if (const auto* s = p.get_if<BitStream>()) {
    j["bits"] = s->support;
  } else if (const auto* a = p.get_if<AtomPoint>()) {
    j["atom"] = space.atoms()[a->atom];
  } else {
    json entries = json::array();
    for (const TupleEntry& e : p.get_if<TuplePoint>()->components) {
      entries.push_back(json::array({e.factor, encode(e.point, space.factors()[e.factor])}));
    }
    j["tuple"] = std::move(entries);
  }
  return j;
}

Point decode_point(const json& j, const Space& space) {
  if (!j.is_object()) bad("point descriptor must be an object");
  if (j.contains("rational")) {
    Point p = RationalPoint{decode_rational(j.at("rational"))};
    validate(p, space);
    return p;
  }
  if (j.contains("bits")) {
    Point p = BitStream{j.at("bits").get<std::vector<std::size_t>>()};
    validate(p, space);
    return p;
  }
  if (j.contains("atom")) {
    if (space.kind() != SpaceKind::Finite) throw Error(Errc::KindMismatch, "atom outside a finite space");
    auto idx = space.atom_index(j.at("atom").get<std::string>());
    if (!idx) throw Error(Errc::InvalidDescriptor, "unknown atom");
    return AtomPoint{*idx};
  }
  if (j.contains("tuple")) {
    if (space.kind() != SpaceKind::Product) throw Error(Errc::KindMismatch, "tuple outside a product space");
    std::vector<TupleEntry> entries;
    for (const json& e : j.at("tuple")) {
      if (!e.is_array() || e.size() != 2) bad("tuple entry needs [factor, point]");
      const auto f = e[0].get<std::size_t>();
      if (f >= space.factors().size()) throw Error(Errc::InvalidDescriptor, "tuple factor out of range");
      entries.push_back({f, decode_point(e[1], space.factors()[f])});
    }
    return make_tuple(space, std::move(entries));
  }
  bad("unrecognized point descriptor");
}

Space parse_space_arg(std::string_view arg) {
  if (arg == "real-line") return Space::real_line();
  if (arg == "rational-line") return Space::rational_line();
  if (arg == "cantor") return Space::cantor();
  if (!arg.empty() && arg.front() == '{') return decode_space(parse_json(arg));
  const std::string path(arg);
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(Errc::InvalidDescriptor, "unknown space '" + path + "'");
  }
  return decode_space(load_json_file(path));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write '" + path + "'");
  out << text;
}

}  // namespace topogame
