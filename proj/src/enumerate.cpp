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

#include "topogame/enumerate.hpp"

#include <cmath>

#include "topogame/error.hpp"

namespace topogame {

Rational rational_at(std::uint64_t index) {
  if (index == 0) return Rational(0);
  const std::uint64_t m = (index + 1) / 2;
  // Walk the Calkin-Wilf tree along the bits of m below the leading one.
  BigInt a = 1;
  BigInt b = 1;
  int top = 63;
  while (((m >> top) & 1u) == 0) --top;
  for (int bit = top - 1; bit >= 0; --bit) {
    if ((m >> bit) & 1u) {
      a = a + b;
    } else {
      b = a + b;
    }
  }
  Rational q = Rational::from_big(a, b);
  return (index % 2 == 1) ? q : -q;
}

std::optional<std::uint64_t> rational_index(const Rational& q) {
  if (q == Rational(0)) return 0;
  BigInt a = abs(q).numerator();
  BigInt b = q.denominator();
  // Climb to the root collecting the path bits (least significant first).
  std::uint64_t bits = 0;
  int depth = 0;
  while (!(a == 1 && b == 1)) {
    if (depth >= 62) return std::nullopt;
    if (a < b) {
      b -= a;  // left child: bit 0
    } else {
      a -= b;
      bits |= std::uint64_t{1} << depth;
    }
    ++depth;
  }
  const std::uint64_t m = (std::uint64_t{1} << depth) | bits;
  if (m > (std::uint64_t{1} << 62)) return std::nullopt;
  return q > Rational(0) ? 2 * m - 1 : 2 * m;
}

std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t k) {
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(k) + 1.0L) - 1.0L) / 2.0L);
  while (w * (w + 1) / 2 > k) --w;
  while ((w + 1) * (w + 2) / 2 <= k) ++w;
  const std::uint64_t t = w * (w + 1) / 2;
  const std::uint64_t j = k - t;
  return {w - j, j};
}

std::uint64_t pair_index(std::uint64_t i, std::uint64_t j) { return (i + j) * (i + j + 1) / 2 + j; }

// ---------------------------------------------------------------------------

BaseSequence::BaseSequence(std::unique_ptr<Source> source) : source_(std::move(source)) {}
BaseSequence::BaseSequence(BaseSequence&&) noexcept = default;
BaseSequence& BaseSequence::operator=(BaseSequence&&) noexcept = default;
BaseSequence::~BaseSequence() = default;

std::optional<BaseElement> BaseSequence::at(std::size_t i) {
  while (!done_ && cache_.size() <= i) {
    auto next = source_->next();
    if (!next) {
      done_ = true;
      break;
    }
    cache_.push_back(std::move(*next));
  }
  if (i < cache_.size()) return cache_[i];
  return std::nullopt;
}

std::vector<BaseElement> BaseSequence::take(std::size_t n) {
  std::vector<BaseElement> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto e = at(i);
    if (!e) break;
    out.push_back(std::move(*e));
  }
  return out;
}

namespace {

using Source = BaseSequence::Source;

class RationalTable {
 public:
  const Rational& at(std::uint64_t i) {
    while (values_.size() <= i) values_.push_back(rational_at(values_.size()));
    return values_[i];
  }

 private:
  std::vector<Rational> values_;
};

// Interval pairs (r_i, r_j) in pairing order, restricted to r_i < r_j. In
// relative mode only subintervals of [0,1] are kept and mapped onto (lo, hi).
class IntervalSource final : public Source {
 public:
  IntervalSource() = default;
  IntervalSource(Rational lo, Rational hi, bool include_self)
      : relative_(true), lo_(std::move(lo)), width_(hi - lo_), include_self_(include_self) {}

  std::optional<BaseElement> next() override {
    for (;;) {
      const auto [i, j] = unpair(k_++);
      const Rational& a = table_.at(i);
      const Rational& b = table_.at(j);
      if (!(a < b)) continue;
      if (!relative_) return BaseElement(Interval{a, b});
      if (a < Rational(0) || Rational(1) < b) continue;
      if (!include_self_ && a == Rational(0) && b == Rational(1)) continue;
      return BaseElement(Interval{lo_ + width_ * a, lo_ + width_ * b});
    }
  }

 private:
  bool relative_ = false;
  Rational lo_{0};
  Rational width_{1};
  bool include_self_ = true;
  std::uint64_t k_ = 0;
  RationalTable table_;
};

class CylinderSource final : public Source {
 public:
  CylinderSource(std::string stem, bool include_self)
      : stem_(std::move(stem)), t_(include_self ? 0 : 1) {}

  std::optional<BaseElement> next() override {
    const std::uint64_t t = t_++;
    std::size_t len = 0;
    while ((std::uint64_t{2} << len) - 1 <= t) ++len;
    const std::uint64_t v = t + 1 - (std::uint64_t{1} << len);
    std::string tail;
    for (std::size_t i = 0; i < len; ++i) tail.push_back(((v >> (len - 1 - i)) & 1u) ? '1' : '0');
    return BaseElement(Cylinder{stem_ + tail});
  }

 private:
  std::string stem_;
  std::uint64_t t_;
};

class ListSource final : public Source {
 public:
  explicit ListSource(std::vector<BaseElement> items) : items_(std::move(items)) {}
  std::optional<BaseElement> next() override {
    if (pos_ >= items_.size()) return std::nullopt;
    return items_[pos_++];
  }

 private:
  std::vector<BaseElement> items_;
  std::size_t pos_ = 0;
};

class NonWholeSource final : public Source {
 public:
  NonWholeSource(BaseSequence inner, Space space) : inner_(std::move(inner)), space_(std::move(space)) {}
  std::optional<BaseElement> next() override {
    for (;;) {
      auto e = inner_.at(pos_++);
      if (!e) return std::nullopt;
      if (!is_whole(*e, space_)) return e;
    }
  }

 private:
  BaseSequence inner_;
  Space space_;
  std::size_t pos_ = 0;
};

// Tuples of coordinates ordered by coordinate sum, then lexicographically.
// Coordinate 0 of a factor is `fixed` (nullopt: unconstrained); coordinate
// c >= 1 is the (c-1)-th element of that factor's `more` sequence.
class ProductSource final : public Source {
 public:
  struct Coord {
    std::optional<BaseElement> fixed;
    BaseSequence more;
  };

  ProductSource(Space space, std::vector<Coord> coords, bool include_self)
      : space_(std::move(space)), coords_(std::move(coords)), limits_(coords_.size()),
        sum_(include_self ? 0 : 1) {}

  std::optional<BaseElement> next() override {
    while (pending_pos_ >= pending_.size()) {
      if (exhausted()) return std::nullopt;
      pending_.clear();
      pending_pos_ = 0;
      std::vector<std::size_t> tuple(coords_.size());
      fill(0, sum_, tuple);
      ++sum_;
    }
    return pending_[pending_pos_++];
  }

 private:
  bool exhausted() const {
    std::size_t total = 0;
    for (const auto& l : limits_) {
      if (!l) return false;
      total += *l;
    }
    return sum_ > total;
  }

  bool available(std::size_t f, std::size_t c) {
    if (c == 0) return true;
    if (limits_[f] && c > *limits_[f]) return false;
    if (coords_[f].more.at(c - 1)) return true;
    // First miss fixes the factor's limit.
    std::size_t n = 0;
    while (coords_[f].more.at(n)) ++n;
    limits_[f] = n;
    return false;
  }

  void fill(std::size_t f, std::size_t remaining, std::vector<std::size_t>& tuple) {
    if (f + 1 == coords_.size()) {
      if (!available(f, remaining)) return;
      tuple[f] = remaining;
      emit(tuple);
      return;
    }
    for (std::size_t c = 0; c <= remaining; ++c) {
      if (!available(f, c)) break;
      tuple[f] = c;
      fill(f + 1, remaining - c, tuple);
    }
  }

  void emit(const std::vector<std::size_t>& tuple) {
    std::vector<BoxEntry> entries;
    for (std::size_t f = 0; f < tuple.size(); ++f) {
      if (tuple[f] == 0) {
        if (coords_[f].fixed) entries.push_back({f, *coords_[f].fixed});
      } else {
        entries.push_back({f, *coords_[f].more.at(tuple[f] - 1)});
      }
    }
    pending_.push_back(make_box(space_, std::move(entries)));
  }

  Space space_;
  std::vector<Coord> coords_;
  std::vector<std::optional<std::size_t>> limits_;
  std::size_t sum_ = 0;
  std::vector<BaseElement> pending_;
  std::size_t pending_pos_ = 0;
};

BaseSequence non_whole_base(const Space& space) {
  return BaseSequence(std::make_unique<NonWholeSource>(base_sequence(space), space));
}

}  // namespace

BaseSequence base_sequence(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::RationalLine:
    case SpaceKind::RealLine: return BaseSequence(std::make_unique<IntervalSource>());
    case SpaceKind::Cantor: return BaseSequence(std::make_unique<CylinderSource>("", true));
    case SpaceKind::Finite: {
      std::vector<BaseElement> items;
      for (AtomSet o : space.opens()) {
        if (o != 0) items.emplace_back(FiniteOpen{o});
      }
      return BaseSequence(std::make_unique<ListSource>(std::move(items)));
    }
    case SpaceKind::Product: {
      std::vector<ProductSource::Coord> coords;
      for (const Space& f : space.factors()) coords.push_back({std::nullopt, non_whole_base(f)});
      return BaseSequence(std::make_unique<ProductSource>(space, std::move(coords), true));
    }
  }
  throw Error(Errc::KindMismatch, "unknown space kind");
}

std::vector<BaseElement> enumerate_base(const Space& space, std::size_t n) {
  return base_sequence(space).take(n);
}

BaseSequence subset_sequence(const BaseElement& b, const Space& space, bool include_self) {
  validate(b, space);
  switch (space.kind()) {
    case SpaceKind::RationalLine:
    case SpaceKind::RealLine: {
      const auto& iv = *b.get_if<Interval>();
      return BaseSequence(std::make_unique<IntervalSource>(iv.lo, iv.hi, include_self));
    }
    case SpaceKind::Cantor:
      return BaseSequence(std::make_unique<CylinderSource>(b.get_if<Cylinder>()->stem, include_self));
    case SpaceKind::Finite: {
      const AtomSet self = b.get_if<FiniteOpen>()->atoms;
      std::vector<BaseElement> items;
      for (AtomSet o : space.opens()) {
        if (o == 0 || (o & ~self) != 0) continue;
        if (o == self && !include_self) continue;
        items.emplace_back(FiniteOpen{o});
      }
      return BaseSequence(std::make_unique<ListSource>(std::move(items)));
    }
    case SpaceKind::Product: {
      const auto& box = *b.get_if<ProductBox>();
      std::vector<ProductSource::Coord> coords;
      for (std::size_t f = 0; f < space.factors().size(); ++f) {
        const Space& fs = space.factors()[f];
        const BaseElement* comp = nullptr;
        for (const auto& e : box.assignments) {
          if (e.factor == f) comp = &e.open;
        }
        if (comp != nullptr) {
          coords.push_back({*comp, subset_sequence(*comp, fs, false)});
        } else {
          coords.push_back({std::nullopt, non_whole_base(fs)});
        }
      }
      return BaseSequence(std::make_unique<ProductSource>(space, std::move(coords), include_self));
    }
  }
  throw Error(Errc::KindMismatch, "unknown space kind");
}

std::vector<BaseElement> enumerate_subsets(const BaseElement& b, const Space& space,
                                           std::size_t n, bool include_self) {
  return subset_sequence(b, space, include_self).take(n);
}

std::optional<std::uint64_t> base_index_of(const BaseElement& b, const Space& space,
                                           std::uint64_t limit) {
  validate(b, space);
  if (const auto* c = b.get_if<Cylinder>()) {
    if (c->stem.size() >= 63) return std::nullopt;
    std::uint64_t v = 0;
    for (char ch : c->stem) v = (v << 1) | (ch == '1' ? 1u : 0u);
    return (std::uint64_t{1} << c->stem.size()) - 1 + v;
  }
  BaseSequence seq = base_sequence(space);
  for (std::uint64_t i = 0; i < limit; ++i) {
    auto e = seq.at(i);
    if (!e) return std::nullopt;
    if (*e == b) return i;
  }
  return std::nullopt;
}

}  // namespace topogame
