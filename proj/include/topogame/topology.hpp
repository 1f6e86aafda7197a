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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "topogame/rational.hpp"

namespace topogame {

enum class SpaceKind { RationalLine, RealLine, Cantor, Finite, Product };
enum class CompletenessClass { CompleteMetric, IncompleteMetric, ZeroDimCompact, Finite };

std::string_view kind_name(SpaceKind kind);
std::string_view class_name(CompletenessClass c);

// Finite spaces index atoms by declaration order; a set of atoms is a bitmask.
using AtomSet = std::uint64_t;
inline constexpr std::size_t kMaxAtoms = 64;

// ---------------------------------------------------------------------------
// Basic open sets

struct Interval {
  Rational lo;
  Rational hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Cantor cylinder: all streams starting with `stem` (characters '0'/'1').
struct Cylinder {
  std::string stem;
  friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

struct FiniteOpen {
  AtomSet atoms = 0;
  friend bool operator==(const FiniteOpen&, const FiniteOpen&) = default;
};

struct BoxEntry;

// Finite-support box; factors missing from `assignments` are unconstrained.
// Canonical form: sorted by factor, no component equal to its whole factor.
struct ProductBox {
  std::vector<BoxEntry> assignments;
  friend bool operator==(const ProductBox&, const ProductBox&);
};

class BaseElement {
 public:
  using Variant = std::variant<Interval, Cylinder, FiniteOpen, ProductBox>;

  BaseElement(Interval i) : v_(std::move(i)) {}      // NOLINT
  BaseElement(Cylinder c) : v_(std::move(c)) {}      // NOLINT
  BaseElement(FiniteOpen f) : v_(f) {}               // NOLINT
  BaseElement(ProductBox b) : v_(std::move(b)) {}    // NOLINT

  const Variant& variant() const { return v_; }
  template <typename T>
  const T* get_if() const { return std::get_if<T>(&v_); }
  template <typename T>
  bool is() const { return std::holds_alternative<T>(v_); }

  friend bool operator==(const BaseElement& a, const BaseElement& b) { return a.v_ == b.v_; }

 private:
  Variant v_;
};

struct BoxEntry {
  std::size_t factor;
  BaseElement open;
  friend bool operator==(const BoxEntry&, const BoxEntry&) = default;
};

inline bool operator==(const ProductBox& a, const ProductBox& b) {
  return a.assignments == b.assignments;
}

BaseElement interval(const Rational& lo, const Rational& hi);
BaseElement cylinder(std::string stem);

// ---------------------------------------------------------------------------
// Points

struct RationalPoint {
  Rational value;
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

// Eventually-zero bit stream, stored as the sorted indices of its 1 bits.
struct BitStream {
  std::vector<std::size_t> support;
  friend bool operator==(const BitStream&, const BitStream&) = default;
};

struct AtomPoint {
  std::size_t atom;
  friend bool operator==(const AtomPoint&, const AtomPoint&) = default;
};

struct TupleEntry;

// Components that are missing take the factor's default point.
struct TuplePoint {
  std::vector<TupleEntry> components;
  friend bool operator==(const TuplePoint&, const TuplePoint&);
};

class Point {
 public:
  using Variant = std::variant<RationalPoint, BitStream, AtomPoint, TuplePoint>;

  Point(RationalPoint p) : v_(std::move(p)) {}  // NOLINT
  Point(BitStream p) : v_(std::move(p)) {}      // NOLINT
  Point(AtomPoint p) : v_(p) {}                 // NOLINT
  Point(TuplePoint p) : v_(std::move(p)) {}     // NOLINT

  const Variant& variant() const { return v_; }
  template <typename T>
  const T* get_if() const { return std::get_if<T>(&v_); }

  friend bool operator==(const Point& a, const Point& b) { return a.v_ == b.v_; }

 private:
  Variant v_;
};

struct TupleEntry {
  std::size_t factor;
  Point point;
  friend bool operator==(const TupleEntry&, const TupleEntry&) = default;
};

inline bool operator==(const TuplePoint& a, const TuplePoint& b) {
  return a.components == b.components;
}

// ---------------------------------------------------------------------------
// Spaces

class Space {
 public:
  static Space rational_line();
  static Space real_line();
  static Space cantor();
  // `opens` must contain the empty set and the full set and be closed under
  // union and intersection. Declaration order is preserved.
  static Space finite(std::vector<std::string> atoms, std::vector<AtomSet> opens);
  static Space product(std::vector<Space> factors);

  SpaceKind kind() const { return kind_; }
  CompletenessClass completeness() const;

  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<AtomSet>& opens() const { return opens_; }
  const std::vector<Space>& factors() const { return factors_; }
  AtomSet full_atoms() const;
  std::optional<std::size_t> atom_index(std::string_view name) const;
  bool is_line() const { return kind_ == SpaceKind::RationalLine || kind_ == SpaceKind::RealLine; }

  friend bool operator==(const Space&, const Space&) = default;

 private:
  explicit Space(SpaceKind k) : kind_(k) {}
  SpaceKind kind_;
  std::vector<std::string> atoms_;
  std::vector<AtomSet> opens_;
  std::vector<Space> factors_;
};

Space make_product(std::vector<Space> factors);

// ---------------------------------------------------------------------------
// Decidable operations. All throw Error(KindMismatch) when a descriptor does
// not belong to the space's family.

void validate(const BaseElement& b, const Space& space);
void validate(const Point& p, const Space& space);

bool subset(const BaseElement& b1, const BaseElement& b2, const Space& space);
std::optional<BaseElement> intersect(const BaseElement& b1, const BaseElement& b2,
                                     const Space& space);
bool member(const Point& p, const BaseElement& b, const Space& space);
Point pick_point(const BaseElement& b, const Space& space);
Point default_point(const Space& space);

// Whole-space descriptor, when the family has one (lines do not).
std::optional<BaseElement> whole(const Space& space);
bool is_whole(const BaseElement& b, const Space& space);
// First move offered to beta when nothing else is configured.
BaseElement canonical_opener(const Space& space);

// Build a canonical box: entries equal to their whole factor are dropped.
BaseElement make_box(const Space& product, std::vector<BoxEntry> entries);
TuplePoint make_tuple(const Space& product, std::vector<TupleEntry> entries);

// Deterministic, distinct sample points inside b (at most k).
std::vector<Point> sample_points(const BaseElement& b, const Space& space, std::size_t k);

// Compact canonical encodings; equal keys iff equal descriptors.
std::string key(const BaseElement& b);
std::string key(const Point& p);

}  // namespace topogame
