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

#include "topogame/topology.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "topogame/error.hpp"

namespace topogame {

std::string_view kind_name(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::RationalLine: return "rational-line";
    case SpaceKind::RealLine: return "real-line";
    case SpaceKind::Cantor: return "cantor";
    case SpaceKind::Finite: return "finite";
    case SpaceKind::Product: return "product";
  }
  return "?";
}

std::string_view class_name(CompletenessClass c) {
  switch (c) {
    case CompletenessClass::CompleteMetric: return "complete-metric";
    case CompletenessClass::IncompleteMetric: return "incomplete-metric";
    case CompletenessClass::ZeroDimCompact: return "zero-dim-compact";
    case CompletenessClass::Finite: return "finite";
  }
  return "?";
}

BaseElement interval(const Rational& lo, const Rational& hi) { return Interval{lo, hi}; }
BaseElement cylinder(std::string stem) { return Cylinder{std::move(stem)}; }

// ---------------------------------------------------------------------------

Space Space::rational_line() { return Space(SpaceKind::RationalLine); }
Space Space::real_line() { return Space(SpaceKind::RealLine); }
Space Space::cantor() { return Space(SpaceKind::Cantor); }

Space Space::finite(std::vector<std::string> atoms, std::vector<AtomSet> opens) {
  if (atoms.empty()) throw Error(Errc::InvalidDescriptor, "finite space needs at least one atom");
  if (atoms.size() > kMaxAtoms) throw Error(Errc::InvalidDescriptor, "too many atoms");
  std::set<std::string> names(atoms.begin(), atoms.end());
  if (names.size() != atoms.size()) throw Error(Errc::InvalidDescriptor, "duplicate atom name");
  const AtomSet full = atoms.size() == 64 ? ~AtomSet{0} : ((AtomSet{1} << atoms.size()) - 1);
  std::set<AtomSet> seen;
  for (AtomSet o : opens) {
    if ((o & ~full) != 0) throw Error(Errc::InvalidDescriptor, "open set mentions unknown atom");
    if (!seen.insert(o).second) throw Error(Errc::InvalidDescriptor, "duplicate open set");
  }
  if (!seen.contains(0)) throw Error(Errc::InvalidDescriptor, "open sets must contain the empty set");
  if (!seen.contains(full)) throw Error(Errc::InvalidDescriptor, "open sets must contain the whole space");
  for (AtomSet a : opens) {
    for (AtomSet b : opens) {
      if (!seen.contains(a | b) || !seen.contains(a & b)) {
        throw Error(Errc::InvalidDescriptor, "open sets not closed under union and intersection");
      }
    }
  }
  Space s(SpaceKind::Finite);
  s.atoms_ = std::move(atoms);
  s.opens_ = std::move(opens);
  return s;
}

Space Space::product(std::vector<Space> factors) {
  if (factors.empty()) throw Error(Errc::EmptyProduct, "product of no factors");
  Space s(SpaceKind::Product);
  s.factors_ = std::move(factors);
  return s;
}

Space make_product(std::vector<Space> factors) { return Space::product(std::move(factors)); }

CompletenessClass Space::completeness() const {
  switch (kind_) {
    case SpaceKind::RationalLine: return CompletenessClass::IncompleteMetric;
    case SpaceKind::RealLine: return CompletenessClass::CompleteMetric;
    case SpaceKind::Cantor: return CompletenessClass::ZeroDimCompact;
    case SpaceKind::Finite: return CompletenessClass::Finite;
    case SpaceKind::Product: break;
  }
  bool all_finite = true;
  bool any_incomplete = false;
  for (const Space& f : factors_) {
    const auto c = f.completeness();
    all_finite = all_finite && c == CompletenessClass::Finite;
    any_incomplete = any_incomplete || c == CompletenessClass::IncompleteMetric;
  }
  if (all_finite) return CompletenessClass::Finite;
  return any_incomplete ? CompletenessClass::IncompleteMetric : CompletenessClass::CompleteMetric;
}

AtomSet Space::full_atoms() const {
  return atoms_.size() == 64 ? ~AtomSet{0} : ((AtomSet{1} << atoms_.size()) - 1);
}

std::optional<std::size_t> Space::atom_index(std::string_view name) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] == name) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void mismatch(const Space& space, std::string_view what) {
  throw Error(Errc::KindMismatch,
              std::string(what) + " does not belong to a " + std::string(kind_name(space.kind())) +
                  " space");
}

bool is_declared_open(AtomSet a, const Space& space) {
  return std::find(space.opens().begin(), space.opens().end(), a) != space.opens().end();
}

bool bit_of(const BitStream& s, std::size_t i) {
  return std::binary_search(s.support.begin(), s.support.end(), i);
}

}  // namespace

void validate(const BaseElement& b, const Space& space) {
  switch (space.kind()) {
    case SpaceKind::RationalLine:
    case SpaceKind::RealLine: {
      const auto* iv = b.get_if<Interval>();
      if (iv == nullptr) mismatch(space, "descriptor");
      if (!(iv->lo < iv->hi)) throw Error(Errc::InvalidDescriptor, "interval needs lo < hi");
      return;
    }
    case SpaceKind::Cantor: {
      const auto* c = b.get_if<Cylinder>();
      if (c == nullptr) mismatch(space, "descriptor");
      for (char ch : c->stem) {
        if (ch != '0' && ch != '1') throw Error(Errc::InvalidDescriptor, "stem must be a bit string");
      }
      return;
    }
    case SpaceKind::Finite: {
      const auto* f = b.get_if<FiniteOpen>();
      if (f == nullptr) mismatch(space, "descriptor");
      if (f->atoms == 0) throw Error(Errc::InvalidDescriptor, "basic opens are nonempty");
      if (!is_declared_open(f->atoms, space)) throw Error(Errc::InvalidDescriptor, "not a declared open set");
      return;
    }
    case SpaceKind::Product: {
      const auto* box = b.get_if<ProductBox>();
      if (box == nullptr) mismatch(space, "descriptor");
      std::size_t prev = 0;
      bool first = true;
      for (const BoxEntry& e : box->assignments) {
        if (e.factor >= space.factors().size()) throw Error(Errc::InvalidDescriptor, "box factor out of range");
        if (!first && e.factor <= prev) throw Error(Errc::InvalidDescriptor, "box factors must be sorted and distinct");
        validate(e.open, space.factors()[e.factor]);
        if (is_whole(e.open, space.factors()[e.factor])) {
          throw Error(Errc::InvalidDescriptor, "box component equal to its whole factor must be omitted");
        }
        prev = e.factor;
        first = false;
      }
      return;
    }
  }
}

void validate(const Point& p, const Space& space) {
  switch (space.kind()) {
    case SpaceKind::RationalLine:
    case SpaceKind::RealLine:
      if (p.get_if<RationalPoint>() == nullptr) mismatch(space, "point");
      return;
    case SpaceKind::Cantor: {
      const auto* s = p.get_if<BitStream>();
      if (s == nullptr) mismatch(space, "point");
      if (!std::is_sorted(s->support.begin(), s->support.end()) ||
          std::adjacent_find(s->support.begin(), s->support.end()) != s->support.end()) {
        throw Error(Errc::InvalidDescriptor, "bit stream support must be sorted and distinct");
      }
      return;
    }
    case SpaceKind::Finite: {
      const auto* a = p.get_if<AtomPoint>();
      if (a == nullptr) mismatch(space, "point");
      if (a->atom >= space.atoms().size()) throw Error(Errc::InvalidDescriptor, "unknown atom");
      return;
    }
    case SpaceKind::Product: {
      const auto* t = p.get_if<TuplePoint>();
      if (t == nullptr) mismatch(space, "point");
      std::size_t prev = 0;
      bool first = true;
      for (const TupleEntry& e : t->components) {
        if (e.factor >= space.factors().size()) throw Error(Errc::InvalidDescriptor, "tuple factor out of range");
        if (!first && e.factor <= prev) throw Error(Errc::InvalidDescriptor, "tuple factors must be sorted and distinct");
        validate(e.point, space.factors()[e.factor]);
        if (e.point == default_point(space.factors()[e.factor])) {
          throw Error(Errc::InvalidDescriptor, "default tuple component must be omitted");
        }
        prev = e.factor;
        first = false;
      }
      return;
    }
  }
}

std::optional<BaseElement> whole(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::RationalLine:
    case SpaceKind::RealLine: return std::nullopt;
    case SpaceKind::Cantor: return BaseElement(Cylinder{""});
    case SpaceKind::Finite: return BaseElement(FiniteOpen{space.full_atoms()});
    case SpaceKind::Product: return BaseElement(ProductBox{});
  }
  return std::nullopt;
}

bool is_whole(const BaseElement& b, const Space& space) {
  const auto w = whole(space);
  return w.has_value() && *w == b;
}

BaseElement canonical_opener(const Space& space) {
  if (space.is_line()) return interval(0, 1);
  return *whole(space);
}

BaseElement make_box(const Space& product, std::vector<BoxEntry> entries) {
  if (product.kind() != SpaceKind::Product) mismatch(product, "box");
  std::sort(entries.begin(), entries.end(),
            [](const BoxEntry& a, const BoxEntry& b) { return a.factor < b.factor; });
  ProductBox box;
  for (auto& e : entries) {
    if (e.factor >= product.factors().size()) throw Error(Errc::InvalidDescriptor, "box factor out of range");
    if (is_whole(e.open, product.factors()[e.factor])) continue;
    box.assignments.push_back(std::move(e));
  }
  BaseElement out(std::move(box));
  validate(out, product);
  return out;
}

TuplePoint make_tuple(const Space& product, std::vector<TupleEntry> entries) {
  if (product.kind() != SpaceKind::Product) mismatch(product, "tuple");
  std::sort(entries.begin(), entries.end(),
            [](const TupleEntry& a, const TupleEntry& b) { return a.factor < b.factor; });
  TuplePoint t;
  for (auto& e : entries) {
    if (e.factor >= product.factors().size()) throw Error(Errc::InvalidDescriptor, "tuple factor out of range");
    if (e.point == default_point(product.factors()[e.factor])) continue;
    t.components.push_back(std::move(e));
  }
  validate(Point(t), product);
  return t;
}

namespace {

const BaseElement* component(const ProductBox& box, std::size_t factor) {
  for (const BoxEntry& e : box.assignments) {
    if (e.factor == factor) return &e.open;
  }
  return nullptr;
}

const Point* component(const TuplePoint& t, std::size_t factor) {
  for (const TupleEntry& e : t.components) {
    if (e.factor == factor) return &e.point;
  }
  return nullptr;
}

}  // namespace

bool subset(const BaseElement& b1, const BaseElement& b2, const Space& space) {
  validate(b1, space);
  validate(b2, space);
  switch (space.kind()) {
    case SpaceKind::RationalLine:
    case SpaceKind::RealLine: {
      const auto& x = *b1.get_if<Interval>();
      const auto& y = *b2.get_if<Interval>();
      return y.lo <= x.lo && x.hi <= y.hi;
    }
    case SpaceKind::Cantor: {
      const auto& x = b1.get_if<Cylinder>()->stem;
      const auto& y = b2.get_if<Cylinder>()->stem;
      return x.size() >= y.size() && x.compare(0, y.size(), y) == 0;
    }
    case SpaceKind::Finite: {
      const AtomSet x = b1.get_if<FiniteOpen>()->atoms;
      const AtomSet y = b2.get_if<FiniteOpen>()->atoms;
      return (x & ~y) == 0;
    }
    case SpaceKind::Product: {
      const auto& x = *b1.get_if<ProductBox>();
      const auto& y = *b2.get_if<ProductBox>();
      // Every constraint of b2 must be implied by b1; an unconstrained b1
      // component is never inside a proper (non-whole) component of b2.
      for (const BoxEntry& e : y.assignments) {
        const BaseElement* mine = component(x, e.factor);
        if (mine == nullptr) return false;
        if (!subset(*mine, e.open, space.factors()[e.factor])) return false;
      }
      return true;
    }
  }
  return false;
}

std::optional<BaseElement> intersect(const BaseElement& b1, const BaseElement& b2,
                                     const Space& space) {
  validate(b1, space);
  validate(b2, space);
  switch (space.kind()) {
    case SpaceKind::RationalLine:
    case SpaceKind::RealLine: {
      const auto& x = *b1.get_if<Interval>();
      const auto& y = *b2.get_if<Interval>();
      Rational lo = max(x.lo, y.lo);
      Rational hi = min(x.hi, y.hi);
      if (!(lo < hi)) return std::nullopt;
      return BaseElement(Interval{std::move(lo), std::move(hi)});
    }
    case SpaceKind::Cantor: {
      const auto& x = b1.get_if<Cylinder>()->stem;
      const auto& y = b2.get_if<Cylinder>()->stem;
      const auto& longer = x.size() >= y.size() ? x : y;
      const auto& shorter = x.size() >= y.size() ? y : x;
      if (longer.compare(0, shorter.size(), shorter) != 0) return std::nullopt;
      return BaseElement(Cylinder{longer});
    }
    case SpaceKind::Finite: {
      const AtomSet both = b1.get_if<FiniteOpen>()->atoms & b2.get_if<FiniteOpen>()->atoms;
      if (both == 0) return std::nullopt;
      return BaseElement(FiniteOpen{both});
    }
    case SpaceKind::Product: {
      const auto& x = *b1.get_if<ProductBox>();
      const auto& y = *b2.get_if<ProductBox>();
      std::vector<BoxEntry> out;
      for (std::size_t f = 0; f < space.factors().size(); ++f) {
        const BaseElement* a = component(x, f);
        const BaseElement* b = component(y, f);
        if (a == nullptr && b == nullptr) continue;
        if (a == nullptr) {
          out.push_back({f, *b});
        } else if (b == nullptr) {
          out.push_back({f, *a});
        } else {
          auto m = intersect(*a, *b, space.factors()[f]);
          if (!m) return std::nullopt;
          out.push_back({f, std::move(*m)});
        }
      }
      return make_box(space, std::move(out));
    }
  }
  return std::nullopt;
}

bool member(const Point& p, const BaseElement& b, const Space& space) {
  validate(p, space);
  validate(b, space);
  switch (space.kind()) {
    case SpaceKind::RationalLine:
    case SpaceKind::RealLine: {
      const auto& v = p.get_if<RationalPoint>()->value;
      const auto& iv = *b.get_if<Interval>();
      return iv.lo < v && v < iv.hi;
    }
    case SpaceKind::Cantor: {
      const auto& s = *p.get_if<BitStream>();
      const auto& stem = b.get_if<Cylinder>()->stem;
      for (std::size_t i = 0; i < stem.size(); ++i) {
        if (bit_of(s, i) != (stem[i] == '1')) return false;
      }
      return true;
    }
    case SpaceKind::Finite:
      return ((b.get_if<FiniteOpen>()->atoms >> p.get_if<AtomPoint>()->atom) & 1u) != 0;
    case SpaceKind::Product: {
      const auto& t = *p.get_if<TuplePoint>();
      for (const BoxEntry& e : b.get_if<ProductBox>()->assignments) {
        const Space& f = space.factors()[e.factor];
        const Point* c = component(t, e.factor);
        if (!member(c != nullptr ? *c : default_point(f), e.open, f)) return false;
      }
      return true;
    }
  }
  return false;
}

Point default_point(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::RationalLine:
    case SpaceKind::RealLine: return RationalPoint{0};
    case SpaceKind::Cantor: return BitStream{};
    case SpaceKind::Finite: return AtomPoint{0};
    case SpaceKind::Product: return TuplePoint{};
  }
  return TuplePoint{};
}

Point pick_point(const BaseElement& b, const Space& space) {
  validate(b, space);
  switch (space.kind()) {
    case SpaceKind::RationalLine:
    case SpaceKind::RealLine: {
      const auto& iv = *b.get_if<Interval>();
      return RationalPoint{(iv.lo + iv.hi) / 2};
    }
    case SpaceKind::Cantor: {
      BitStream s;
      const auto& stem = b.get_if<Cylinder>()->stem;
      for (std::size_t i = 0; i < stem.size(); ++i) {
        if (stem[i] == '1') s.support.push_back(i);
      }
      return s;
    }
    case SpaceKind::Finite:
      return AtomPoint{static_cast<std::size_t>(std::countr_zero(b.get_if<FiniteOpen>()->atoms))};
    case SpaceKind::Product: {
      std::vector<TupleEntry> comps;
      for (const BoxEntry& e : b.get_if<ProductBox>()->assignments) {
        comps.push_back({e.factor, pick_point(e.open, space.factors()[e.factor])});
      }
      return make_tuple(space, std::move(comps));
    }
  }
  return TuplePoint{};
}

std::vector<Point> sample_points(const BaseElement& b, const Space& space, std::size_t k) {
  validate(b, space);
  std::vector<Point> out;
  if (k == 0) return out;
  switch (space.kind()) {
    case SpaceKind::RationalLine:
    case SpaceKind::RealLine: {
      const auto& iv = *b.get_if<Interval>();
      const Rational width = iv.hi - iv.lo;
      out.push_back(pick_point(b, space));
      for (std::size_t j = 1; out.size() < k && j <= k + 1; ++j) {
        Point p = RationalPoint{iv.lo + width * Rational(static_cast<std::int64_t>(j),
                                                         static_cast<std::int64_t>(k + 2))};
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
      }
      return out;
    }
    case SpaceKind::Cantor: {
      const std::string& stem = b.get_if<Cylinder>()->stem;
      // Tails in length-lex order: "", "0", "1", "00", ... (trailing zeros
      // make some coincide, so skip duplicates).
      for (std::size_t len = 0; out.size() < k && len < 16; ++len) {
        for (std::uint64_t v = 0; out.size() < k && v < (std::uint64_t{1} << len); ++v) {
          std::string tail;
          for (std::size_t i = 0; i < len; ++i) tail.push_back(((v >> (len - 1 - i)) & 1u) ? '1' : '0');
          Point p = pick_point(cylinder(stem + tail), space);
          if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
        }
      }
      return out;
    }
    case SpaceKind::Finite: {
      const AtomSet a = b.get_if<FiniteOpen>()->atoms;
      for (std::size_t i = 0; i < space.atoms().size() && out.size() < k; ++i) {
        if ((a >> i) & 1u) out.push_back(AtomPoint{i});
      }
      return out;
    }
    case SpaceKind::Product: {
      const auto& box = *b.get_if<ProductBox>();
      std::vector<std::vector<Point>> per_factor;
      for (std::size_t f = 0; f < space.factors().size(); ++f) {
        const BaseElement* c = component(box, f);
        const Space& fs = space.factors()[f];
        if (c != nullptr) {
          per_factor.push_back(sample_points(*c, fs, k));
        } else if (auto w = whole(fs)) {
          per_factor.push_back(sample_points(*w, fs, k));
        } else {
          per_factor.push_back({default_point(fs)});
        }
      }
      for (std::size_t j = 0; j < k; ++j) {
        std::vector<TupleEntry> comps;
        for (std::size_t f = 0; f < per_factor.size(); ++f) {
          comps.push_back({f, per_factor[f][(j + f) % per_factor[f].size()]});
        }
        Point p = make_tuple(space, std::move(comps));
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
      }
      return out;
    }
  }
  return out;
}

std::string key(const BaseElement& b) {
  if (const auto* iv = b.get_if<Interval>()) return "I(" + iv->lo.hex() + "," + iv->hi.hex() + ")";
  if (const auto* c = b.get_if<Cylinder>()) return "C" + c->stem;
  if (const auto* f = b.get_if<FiniteOpen>()) return "F" + std::to_string(f->atoms);
  std::string out = "B{";
  for (const BoxEntry& e : b.get_if<ProductBox>()->assignments) {
    out += std::to_string(e.factor) + ":" + key(e.open) + ";";
  }
  return out + "}";
}

std::string key(const Point& p) {
  if (const auto* r = p.get_if<RationalPoint>()) return "R" + r->value.hex();
  if (const auto* s = p.get_if<BitStream>()) {
    std::string out = "S[";
    for (auto i : s->support) out += std::to_string(i) + ",";
    return out + "]";
  }
  if (const auto* a = p.get_if<AtomPoint>()) return "A" + std::to_string(a->atom);
  std::string out = "T{";
  for (const TupleEntry& e : p.get_if<TuplePoint>()->components) {
    out += std::to_string(e.factor) + ":" + key(e.point) + ";";
  }
  return out + "}";
}

}  // namespace topogame
