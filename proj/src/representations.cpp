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

#include "topogame/representations.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>
#include <set>

#include <boost/dynamic_bitset.hpp>

#include "topogame/enumerate.hpp"
#include "topogame/strategies.hpp"

namespace topogame {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

const Element* component(const Element::Tuple& t, std::size_t factor) {
  for (const auto& c : t.components) {
    if (c.factor == factor) return &c.element;
  }
  return nullptr;
}

Point component_point(const Point& x, std::size_t factor, const Space& product) {
  for (const auto& c : x.get_if<TuplePoint>()->components) {
    if (c.factor == factor) return c.point;
  }
  return default_point(product.factors()[factor]);
}

}  // namespace

std::string key(const Element& e) {
  if (const auto* l = e.get_if<Element::Label>()) return "#" + l->name;
  if (const auto* r = e.get_if<Element::Record>()) {
    std::string out = "[";
    for (const auto& entry : r->entries) {
      out += key(entry.play);
      out += "=>";
      out += key(entry.value);
      out += ";";
    }
    return out + "]";
  }
  std::string out = "(";
  for (const auto& c : e.get_if<Element::Tuple>()->components) {
    out += std::to_string(c.factor) + ":" + key(c.element) + ",";
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

Element RepTriple::refine_at(const Point&, const BaseElement&) const {
  throw Error(Errc::IncompatibleStrategy, origin() + " triple has no point witnesses");
}

Element RepTriple::upper_bound_at(const Point&, const Element&, const Element&) const {
  throw Error(Errc::IncompatibleStrategy, origin() + " triple has no point witnesses");
}

void RepTriple::set_fragment(std::vector<Element> fragment) {
  fragment_ = std::move(fragment);
  by_key_.clear();
  by_id_.clear();
  for (std::size_t i = 0; i < fragment_.size(); ++i) {
    by_key_.emplace(key(fragment_[i]), i);
  }
  for (std::size_t i = 0; i < fragment_.size(); ++i) {
    if (!by_id_.emplace(id(fragment_[i]), i).second) {
      throw Error(Errc::ParseError, "duplicate element id '" + id(fragment_[i]) + "'");
    }
  }
}

std::optional<std::size_t> RepTriple::index_of(const Element& e) const {
  auto it = by_key_.find(key(e));
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

std::string RepTriple::id(const Element& e) const {
  if (const auto* l = e.get_if<Element::Label>()) return l->name;
  const std::string k = key(e);
  auto it = by_key_.find(k);
  if (it != by_key_.end()) return "q" + std::to_string(it->second);
  return "h" + hex64(fnv1a(k));
}

const Element& RepTriple::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) throw Error(Errc::UnknownElement, "no element '" + std::string(id) + "'");
  return fragment_[it->second];
}

// ---------------------------------------------------------------------------
// Compiled triples

namespace {

class CompiledRep final : public RepTriple {
 public:
  CompiledRep(std::shared_ptr<const Strategy> s, Space space, Mode mode, std::size_t depth,
              std::size_t branching, std::size_t cap)
      : s_(std::move(s)), space_(std::move(space)), mode_(mode), depth_(depth), branching_(branching), cap_(cap) {
    build();
  }

  const Space& space() const override { return space_; }
  std::string origin() const override { return mode_ == Mode::BM ? "compiled-bm" : "compiled-ch"; }
  std::string describe() const override {
    return origin() + ":" + s_->id() + ":" + std::to_string(depth_) + ":" + std::to_string(branching_);
  }
  bool finite_carrier() const override { return false; }
  bool has_point_witnesses() const override { return mode_ == Mode::Ch; }

  const Strategy& strategy() const { return *s_; }
  Mode mode() const { return mode_; }
  std::size_t depth() const { return depth_; }
  std::size_t branching() const { return branching_; }
  std::size_t cap() const { return cap_; }

  bool leq(const Element& p, const Element& q) const override {
    const auto* a = p.get_if<Element::Record>();
    const auto* b = q.get_if<Element::Record>();
    if (a == nullptr || b == nullptr) return false;
    if (!subset(b->entries.front().value, a->entries.back().value, space_)) return false;
    if (a->entries.size() > b->entries.size()) return false;
    for (const auto& e : a->entries) {
      bool found = false;
      for (const auto& f : b->entries) {
        if (stronger(e.play, f.play)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }

  BaseElement bmap(const Element& p) const override { return record(p).entries.back().value; }

  Element refine(const BaseElement& u) const override {
    return single(step(PartialPlay(mode_), beta(u, std::nullopt), space_));
  }

  Element refine_at(const Point& x, const BaseElement& u) const override {
    if (mode_ != Mode::Ch) RepTriple::refine_at(x, u);
    return single(step(PartialPlay(mode_), beta(u, x), space_));
  }

  Element upper_bound(const Element& p, const Element& q) const override { return witness(p, q, std::nullopt); }

  Element upper_bound_at(const Point& x, const Element& p, const Element& q) const override {
    if (mode_ != Mode::Ch) RepTriple::upper_bound_at(x, p, q);
    return witness(p, q, x);
  }

  Element witness(const Element& p, const Element& q, const std::optional<Point>& x) const {
    const auto& a = record(p);
    const auto& b = record(q);
    auto v = intersect(bmap(p), bmap(q), space_);
    if (!v) throw Error(Errc::DisjointBases, "B(p) and B(q) are disjoint");
    if (x && !member(*x, *v, space_)) throw Error(Errc::PointOutside, "point outside B(p) and B(q)");
    std::optional<Point> point;
    if (mode_ == Mode::Ch) point = x ? *x : pick_point(*v, space_);
    // Replay each generating play one round further, beta answering with
    // the current target; every new value becomes the next target.
    BaseElement target = *v;
    Element::Record out;
    auto extend = [&](const RecordEntry& e) {
      PartialPlay next = step(e.play, Move{Role::Alpha, e.value, std::nullopt}, space_);
      next = step(next, Move{Role::Beta, target, point}, space_);
      for (const auto& have : out.entries) {
        if (have.play == next) return;
      }
      BaseElement value = answer(next);
      target = value;
      out.entries.push_back({std::move(next), std::move(value)});
    };
    for (const auto& e : a.entries) extend(e);
    for (const auto& e : b.entries) extend(e);
    return out;
  }

 private:
  static const Element::Record& record(const Element& e) {
    const auto* r = e.get_if<Element::Record>();
    if (r == nullptr || r->entries.empty()) throw Error(Errc::UnknownElement, "not a compiled record");
    return *r;
  }

  Move beta(const BaseElement& u, const std::optional<Point>& x) const {
    Move m{Role::Beta, u, std::nullopt};
    if (mode_ == Mode::Ch) m.point = x ? *x : pick_point(u, space_);
    return m;
  }

  BaseElement answer(const PartialPlay& play) const {
    Move m = s_->respond(play);
    // Legality of the strategy itself is part of the construction.
    step(play, m, space_);
    return m.open;
  }

  Element single(PartialPlay play) const {
    BaseElement v = answer(play);
    return Element::Record{{RecordEntry{std::move(play), std::move(v)}}};
  }

  void build() {
    std::vector<RecordEntry> plays;
    std::vector<std::size_t> frontier;
    for (const BaseElement& u : enumerate_base(space_, branching_)) {
      PartialPlay p = step(PartialPlay(mode_), beta(u, std::nullopt), space_);
      BaseElement v = answer(p);
      frontier.push_back(plays.size());
      plays.push_back({std::move(p), std::move(v)});
    }
    for (std::size_t level = 1; level < depth_; ++level) {
      std::vector<std::size_t> next;
      for (std::size_t i : frontier) {
        const PartialPlay answered = step(plays[i].play, Move{Role::Alpha, plays[i].value, std::nullopt}, space_);
        for (const BaseElement& w : enumerate_subsets(plays[i].value, space_, branching_, true)) {
          PartialPlay p = step(answered, beta(w, std::nullopt), space_);
          BaseElement v = answer(p);
          next.push_back(plays.size());
          plays.push_back({std::move(p), std::move(v)});
        }
      }
      frontier = std::move(next);
    }
    // Records: distinct plays with decreasing values, level by level.
    std::vector<std::vector<std::size_t>> layer;
    std::vector<Element> frag;
    for (std::size_t i = 0; i < plays.size(); ++i) layer.push_back({i});
    for (std::size_t len = 1; len <= depth_ && !layer.empty(); ++len) {
      std::vector<std::vector<std::size_t>> longer;
      for (const auto& idx : layer) {
        if (frag.size() >= cap_) break;
        Element::Record r;
        for (std::size_t i : idx) r.entries.push_back(plays[i]);
        frag.emplace_back(std::move(r));
        if (len == depth_) continue;
        for (std::size_t j = 0; j < plays.size(); ++j) {
          if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
          if (!subset(plays[j].value, plays[idx.back()].value, space_)) continue;
          auto ext = idx;
          ext.push_back(j);
          longer.push_back(std::move(ext));
        }
      }
      layer = std::move(longer);
    }
    set_fragment(std::move(frag));
  }

  std::shared_ptr<const Strategy> s_;
  Space space_;
  Mode mode_;
  std::size_t depth_;
  std::size_t branching_;
  std::size_t cap_;
};

// ---------------------------------------------------------------------------

class HandcraftedRep final : public RepTriple {
 public:
  HandcraftedRep(Space space, std::vector<std::pair<std::string, BaseElement>> elements,
                 std::vector<std::pair<std::string, std::string>> pairs)
      : space_(std::move(space)), pairs_(std::move(pairs)) {
    std::vector<Element> frag;
    for (auto& [name, b] : elements) {
      validate(b, space_);
      if (!values_.emplace(name, b).second) throw Error(Errc::ParseError, "duplicate element id '" + name + "'");
      frag.emplace_back(Element::Label{name});
    }
    for (const auto& [a, b] : pairs_) {
      if (!values_.contains(a) || !values_.contains(b)) {
        throw Error(Errc::UnknownElement, "relation mentions unknown element");
      }
      rel_.insert({a, b});
    }
    std::string digest = encode(space_).dump();
    for (const auto& e : frag) digest += key(e) + key(bmap(e)) + ";";
    for (const auto& [a, b] : pairs_) digest += a + "<<" + b + ";";
    describe_ = "handcrafted:" + hex64(fnv1a(digest));
    set_fragment(std::move(frag));
  }

  const Space& space() const override { return space_; }
  std::string origin() const override { return "handcrafted"; }
  std::string describe() const override { return describe_; }
  bool finite_carrier() const override { return true; }
  bool has_point_witnesses() const override { return true; }

  bool leq(const Element& p, const Element& q) const override {
    return rel_.contains({label(p), label(q)});
  }

  BaseElement bmap(const Element& p) const override { return values_.at(label(p)); }

  Element refine(const BaseElement& u) const override { return refine_impl(u, nullptr); }
  Element refine_at(const Point& x, const BaseElement& u) const override { return refine_impl(u, &x); }

  Element upper_bound(const Element& p, const Element& q) const override { return bound_impl(p, q, nullptr); }
  Element upper_bound_at(const Point& x, const Element& p, const Element& q) const override {
    return bound_impl(p, q, &x);
  }

 private:
  const std::string& label(const Element& e) const {
    const auto* l = e.get_if<Element::Label>();
    if (l == nullptr || !values_.contains(l->name)) throw Error(Errc::UnknownElement, "not an element of this triple");
    return l->name;
  }

  Element refine_impl(const BaseElement& u, const Point* x) const {
    BaseSequence seq = subset_sequence(u, space_, true);
    for (std::size_t i = 0; i < kWitnessBound; ++i) {
      auto w = seq.at(i);
      if (!w) break;
      if (x != nullptr && !member(*x, *w, space_)) continue;
      for (const Element& e : fragment()) {
        if (bmap(e) == *w) return e;
      }
    }
    throw Error(Errc::RefineBoundExceeded, "no element below the open within the search bound");
  }

  Element bound_impl(const Element& p, const Element& q, const Point* x) const {
    for (const Element& r : fragment()) {
      if (leq(p, r) && leq(q, r) && (x == nullptr || member(*x, bmap(r), space_))) return r;
    }
    throw Error(Errc::NoUpperBoundWithinBound, "no upper bound for " + label(p) + " and " + label(q));
  }

  Space space_;
  std::map<std::string, BaseElement> values_;
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::set<std::pair<std::string, std::string>> rel_;
  std::string describe_;
};

// ---------------------------------------------------------------------------

class ProductRep final : public RepTriple {
 public:
  ProductRep(std::vector<RepPtr> factors, std::size_t per_factor)
      : factors_(std::move(factors)), per_factor_(per_factor), space_(spaces_of(factors_)) {
    std::vector<std::size_t> sizes;
    for (const auto& f : factors_) sizes.push_back(std::min(per_factor_, f->fragment().size()));
    std::vector<Element> frag;
    std::vector<std::size_t> digit(factors_.size(), 0);
    for (;;) {
      Element::Tuple t;
      for (std::size_t a = 0; a < digit.size(); ++a) {
        if (digit[a] > 0) t.components.push_back({a, factors_[a]->fragment()[digit[a] - 1]});
      }
      frag.emplace_back(std::move(t));
      bool carry = true;
      for (std::size_t a = digit.size(); a > 0 && carry; --a) {
        if (digit[a - 1] < sizes[a - 1]) {
          ++digit[a - 1];
          carry = false;
        } else {
          digit[a - 1] = 0;
        }
      }
      if (carry) break;
    }
    set_fragment(std::move(frag));
  }

  const Space& space() const override { return space_; }
  std::string origin() const override { return "product"; }
  std::string describe() const override {
    std::string d = "product(";
    for (std::size_t a = 0; a < factors_.size(); ++a) d += (a ? "," : "") + factors_[a]->describe();
    return d + "):" + std::to_string(per_factor_);
  }
  bool finite_carrier() const override {
    for (const auto& f : factors_) {
      if (!f->finite_carrier() || f->fragment().size() > per_factor_) return false;
    }
    return true;
  }
  bool has_point_witnesses() const override {
    for (const auto& f : factors_) {
      if (!f->has_point_witnesses()) return false;
    }
    return true;
  }

  const std::vector<RepPtr>& factors() const { return factors_; }
  std::size_t per_factor() const { return per_factor_; }

  bool leq(const Element& p, const Element& q) const override {
    const auto& a = tuple(p);
    const auto& b = tuple(q);
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      const Element* pa = component(a, f);
      if (pa == nullptr) continue;  // least element
      const Element* qa = component(b, f);
      if (qa == nullptr || !factors_[f]->leq(*pa, *qa)) return false;
    }
    return true;
  }

  BaseElement bmap(const Element& p) const override {
    std::vector<BoxEntry> entries;
    for (const auto& c : tuple(p).components) entries.push_back({c.factor, factors_[c.factor]->bmap(c.element)});
    return make_box(space_, std::move(entries));
  }

  Element refine(const BaseElement& u) const override {
    Element::Tuple t;
    for (const auto& e : box(u).assignments) t.components.push_back({e.factor, factors_[e.factor]->refine(e.open)});
    return t;
  }

  Element refine_at(const Point& x, const BaseElement& u) const override {
    Element::Tuple t;
    for (const auto& e : box(u).assignments) {
      t.components.push_back({e.factor, factors_[e.factor]->refine_at(component_point(x, e.factor, space_), e.open)});
    }
    return t;
  }

  Element upper_bound(const Element& p, const Element& q) const override { return bound_impl(p, q, nullptr); }
  Element upper_bound_at(const Point& x, const Element& p, const Element& q) const override {
    return bound_impl(p, q, &x);
  }

 private:
  static Space spaces_of(const std::vector<RepPtr>& factors) {
    std::vector<Space> s;
    for (const auto& f : factors) s.push_back(f->space());
    return make_product(std::move(s));
  }

  static const Element::Tuple& tuple(const Element& e) {
    const auto* t = e.get_if<Element::Tuple>();
    if (t == nullptr) throw Error(Errc::UnknownElement, "not a product element");
    return *t;
  }

  const ProductBox& box(const BaseElement& u) const {
    validate(u, space_);
    return *u.get_if<ProductBox>();
  }

  Element bound_impl(const Element& p, const Element& q, const Point* x) const {
    const auto& a = tuple(p);
    const auto& b = tuple(q);
    Element::Tuple t;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      const Element* pa = component(a, f);
      const Element* qa = component(b, f);
      if (pa == nullptr && qa == nullptr) continue;
      const Element& l = pa != nullptr ? *pa : *qa;
      const Element& r = qa != nullptr ? *qa : *pa;
      const RepTriple& rep = *factors_[f];
      t.components.push_back(
          {f, x == nullptr ? rep.upper_bound(l, r) : rep.upper_bound_at(component_point(*x, f, space_), l, r)});
    }
    return t;
  }

  std::vector<RepPtr> factors_;
  std::size_t per_factor_;
  Space space_;
};

// ---------------------------------------------------------------------------

class QuotientRep final : public RepTriple {
 public:
  explicit QuotientRep(RepPtr base) : base_(std::move(base)) {
    const auto& all = base_->fragment();
    std::vector<Element> reps;
    for (const Element& e : all) {
      bool merged = false;
      for (const Element& r : reps) {
        if (equivalent(e, r)) {
          merged = true;
          break;
        }
      }
      if (!merged) reps.push_back(e);
    }
    set_fragment(std::move(reps));
  }

  const Space& space() const override { return base_->space(); }
  std::string origin() const override { return "quotient"; }
  std::string describe() const override { return "quotient(" + base_->describe() + ")"; }
  bool finite_carrier() const override { return base_->finite_carrier(); }
  bool has_point_witnesses() const override { return base_->has_point_witnesses(); }
  const RepPtr& base() const { return base_; }

  bool leq(const Element& p, const Element& q) const override { return base_->leq(p, q); }
  BaseElement bmap(const Element& p) const override { return base_->bmap(p); }
  Element refine(const BaseElement& u) const override { return canonical(base_->refine(u)); }
  Element refine_at(const Point& x, const BaseElement& u) const override {
    return canonical(base_->refine_at(x, u));
  }
  Element upper_bound(const Element& p, const Element& q) const override {
    return canonical(base_->upper_bound(p, q));
  }
  Element upper_bound_at(const Point& x, const Element& p, const Element& q) const override {
    return canonical(base_->upper_bound_at(x, p, q));
  }

 private:
  bool equivalent(const Element& a, const Element& b) const {
    return a == b || (base_->leq(a, b) && base_->leq(b, a));
  }
  Element canonical(Element e) const {
    for (const Element& r : fragment()) {
      if (equivalent(e, r)) return r;
    }
    return e;
  }

  RepPtr base_;
};

}  // namespace

RepPtr compile_rep(std::shared_ptr<const Strategy> s, const Space& space, Mode mode, std::size_t depth,
                   std::size_t branching, std::size_t fragment_cap) {
  if (s->role() != Role::Alpha) throw Error(Errc::IncompatibleStrategy, "compile_rep needs an alpha strategy");
  if (s->mode() != mode) throw Error(Errc::ModeMismatch, "strategy plays the other game");
  if (!(s->space() == space)) throw Error(Errc::IncompatibleStrategy, "strategy was built for another space");
  if (depth == 0 || branching == 0) throw Error(Errc::InvalidDescriptor, "depth and branching must be positive");
  return std::make_shared<CompiledRep>(std::move(s), space, mode, depth, branching, fragment_cap);
}

Element upper_bound_witness(const RepTriple& rep, const Element& p, const Element& q,
                            const std::optional<Point>& x) {
  const auto* c = dynamic_cast<const CompiledRep*>(&rep);
  if (c == nullptr) throw Error(Errc::IncompatibleStrategy, "replay witness needs a compiled triple");
  if (x && c->mode() != Mode::Ch) throw Error(Errc::ModeMismatch, "points belong to the strong Choquet game");
  return c->witness(p, q, x);
}

RepPtr handcrafted_rep(const Space& space, std::vector<std::pair<std::string, BaseElement>> elements,
                       std::vector<std::pair<std::string, std::string>> leq_pairs) {
  return std::make_shared<HandcraftedRep>(space, std::move(elements), std::move(leq_pairs));
}

RepPtr product_rep(const std::vector<RepPtr>& reps, const std::vector<Space>& spaces, std::size_t per_factor) {
  if (reps.empty()) throw Error(Errc::EmptyProduct, "product of no triples");
  if (reps.size() != spaces.size()) throw Error(Errc::LengthMismatch, "one space per triple");
  for (std::size_t a = 0; a < reps.size(); ++a) {
    if (!(reps[a]->space() == spaces[a])) throw Error(Errc::KindMismatch, "triple does not represent its space");
  }
  return std::make_shared<ProductRep>(reps, per_factor);
}

RepPtr antisym_quotient(RepPtr rep) { return std::make_shared<QuotientRep>(std::move(rep)); }

// ---------------------------------------------------------------------------
// Representation-derived alpha

namespace {

struct ChainMemo final : StrategyMemo {
  std::vector<Element> chain;
};

class RepStrategy final : public Strategy {
 public:
  RepStrategy(std::string id, Mode mode, RepPtr rep)
      : Strategy(std::move(id), mode, Role::Alpha, rep->space()), rep_(std::move(rep)) {}

  std::unique_ptr<StrategyMemo> make_memo() const override { return std::make_unique<ChainMemo>(); }

  Move respond(const PartialPlay& play, StrategyMemo* memo) const override {
    if (play.turn() != Role::Alpha) throw Error(Errc::NotYourTurn, "alpha answers a beta move");
    auto* m = dynamic_cast<ChainMemo*>(memo);
    std::vector<Element> local;
    std::vector<Element>* chain = &local;
    if (m != nullptr && m->chain.size() == play.alpha_count()) {
      chain = &m->chain;
    } else {
      local = chain_of(play.prefix(2 * play.alpha_count()));
      if (m != nullptr) {
        m->chain = local;
        chain = &m->chain;
      }
    }
    chain->push_back(next_link(play, *chain));
    return {Role::Alpha, rep_->bmap(chain->back()), std::nullopt};
  }

  std::optional<Certificate> certificate(const PartialPlay& play, StrategyMemo* memo) const override {
    auto* m = dynamic_cast<ChainMemo*>(memo);
    const std::vector<Element> chain =
        (m != nullptr && m->chain.size() == play.alpha_count()) ? m->chain : chain_of(play);
    RepChain rc{rep_->describe(), {}};
    for (const Element& e : chain) rc.chain.push_back({rep_->id(e), rep_->bmap(e)});
    return rc;
  }

  bool check_certificate(const PartialPlay& play, const Certificate& cert) const override {
    const auto* rc = std::get_if<RepChain>(&cert);
    if (rc == nullptr || rc->rep != rep_->describe()) return false;
    std::vector<Element> chain;
    try {
      chain = chain_of(play);
    } catch (const Error&) {
      return false;
    }
    if (chain.size() != rc->chain.size() || chain.size() != play.alpha_count()) return false;
    const Space& sp = rep_->space();
    for (std::size_t n = 0; n < chain.size(); ++n) {
      const BaseElement b = rep_->bmap(chain[n]);
      if (rep_->id(chain[n]) != rc->chain[n].id || !(b == rc->chain[n].value)) return false;
      if (!(b == play.moves()[2 * n + 1].open)) return false;
      if (n > 0) {
        if (!rep_->leq(chain[n - 1], chain[n])) return false;
        if (!subset(b, play.moves()[2 * n - 1].open, sp)) return false;
      }
    }
    return true;
  }

 private:
  Element next_link(const PartialPlay& play, const std::vector<Element>& chain) const {
    const Move& u = play.back();
    if (mode() == Mode::Ch) {
      Element p = rep_->refine_at(*u.point, u.open);
      return chain.empty() ? p : rep_->upper_bound_at(*u.point, p, chain.back());
    }
    Element p = rep_->refine(u.open);
    return chain.empty() ? p : rep_->upper_bound(p, chain.back());
  }

  // Chain for every answered beta move of `play`.
  std::vector<Element> chain_of(const PartialPlay& play) const {
    std::vector<Element> chain;
    for (std::size_t n = 0; n < play.alpha_count(); ++n) {
      chain.push_back(next_link(play.prefix(2 * n + 1), chain));
    }
    return chain;
  }

  RepPtr rep_;
};

}  // namespace

std::unique_ptr<Strategy> rep_to_strategy(RepPtr rep, Mode mode, std::string id) {
  if (mode == Mode::Ch && !rep->has_point_witnesses()) {
    throw Error(Errc::IncompatibleStrategy, "strong Choquet play needs point witnesses");
  }
  if (id.empty()) id = "rep(" + rep->describe() + ")";
  return std::make_unique<RepStrategy>(std::move(id), mode, std::move(rep));
}

// ---------------------------------------------------------------------------

std::vector<std::string> extract_chain(const RepTriple& rep, const std::vector<std::string>& directed) {
  if (directed.empty()) return {};
  std::vector<const Element*> d;
  for (const auto& id : directed) d.push_back(&rep.find(id));
  const std::size_t n = d.size();
  std::vector<std::vector<char>> rel(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rel[i][j] = rep.leq(*d[i], *d[j]) ? 1 : 0;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      bool ok = false;
      for (std::size_t r = 0; r < n && !ok; ++r) ok = rel[a][r] && rel[b][r];
      if (!ok) throw Error(Errc::NotDirected, "no upper bound for " + directed[a] + " and " + directed[b]);
    }
  }
  const auto idx = chain_in_directed(n, [&](std::size_t a, std::size_t b) { return rel[a][b] != 0; });
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(directed[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Axiom checks

AxiomSystem parse_system(std::string_view s) {
  if (s == "pi") return AxiomSystem::Pi;
  if (s == "d") return AxiomSystem::D;
  throw Error(Errc::ParseError, "system must be 'pi' or 'd'");
}

std::string_view status_name(AxiomStatus s) {
  switch (s) {
    case AxiomStatus::Pass: return "pass";
    case AxiomStatus::Fail: return "fail";
    case AxiomStatus::BoundExceeded: return "bound-exceeded";
  }
  return "?";
}

bool AxiomReport::passed() const {
  return std::none_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.status == AxiomStatus::Fail; });
}

const AxiomResult& AxiomReport::at(std::string_view name) const {
  for (const auto& r : results) {
    if (r.name == name) return r;
  }
  throw Error(Errc::UnknownElement, "no axiom '" + std::string(name) + "'");
}

namespace {

using Bits = boost::dynamic_bitset<>;

class Checker {
 public:
  Checker(const RepTriple& rep, const AxiomBounds& bounds)
      : rep_(rep), space_(rep.space()), frag_(rep.fragment()), bounds_(bounds), n_(frag_.size()) {
    for (const Element& e : frag_) b_.push_back(rep_.bmap(e));
    up_.assign(n_, Bits(n_));
    down_.assign(n_, Bits(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (rep_.leq(frag_[i], frag_[j])) {
          up_[i].set(j);
          down_[j].set(i);
        }
      }
    }
  }

  AxiomResult base(std::string name, bool with_points) const {
    AxiomResult res{std::move(name), AxiomStatus::Pass, 0, nullptr};
    BaseSequence seq = base_sequence(space_);
    for (std::size_t k = 0; k < bounds_.base; ++k) {
      auto w = seq.at(k);
      if (!w) break;
      if (!with_points) {
        ++res.checked;
        if (!cover(*w, nullptr, res)) return res;
        continue;
      }
      for (const Point& x : points(*w)) {
        ++res.checked;
        if (!cover(*w, &x, res)) return res;
      }
    }
    return res;
  }

  AxiomResult transitive(std::string name) const {
    AxiomResult res{std::move(name), AxiomStatus::Pass, 0, nullptr};
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = up_[i].find_first(); j != Bits::npos; j = up_[i].find_next(j)) {
        ++res.checked;
        Bits extra = up_[j] - up_[i];
        if (extra.any()) {
          fail(res, {i, j, extra.find_first()});
          return res;
        }
      }
    }
    return res;
  }

  AxiomResult antitone(std::string name) const {
    AxiomResult res{std::move(name), AxiomStatus::Pass, 0, nullptr};
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = up_[i].find_first(); j != Bits::npos; j = up_[i].find_next(j)) {
        ++res.checked;
        if (!subset(b_[j], b_[i], space_)) {
          fail(res, {i, j});
          return res;
        }
      }
    }
    return res;
  }

  AxiomResult directed(std::string name, bool with_points) const {
    AxiomResult res{std::move(name), AxiomStatus::Pass, 0, nullptr};
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i; j < n_; ++j) {
        auto meet = intersect(b_[i], b_[j], space_);
        if (!meet) continue;
        const Bits common = up_[i] & up_[j];
        if (!with_points) {
          ++res.checked;
          if (common.any()) continue;
          if (!bound_by_oracle(i, j, nullptr, res)) return res;
          continue;
        }
        for (const Point& x : points(*meet)) {
          ++res.checked;
          bool found = false;
          for (std::size_t r = common.find_first(); r != Bits::npos && !found; r = common.find_next(r)) {
            found = member(x, b_[r], space_);
          }
          if (!found && !bound_by_oracle(i, j, &x, res)) return res;
        }
      }
    }
    return res;
  }

  // Every finite directed D has a top u in D with d << u for all d in D
  // (u << u included), so the smallest intersection over directed sets
  // topped by u is B(u) meet B(d) over all d << u.
  AxiomResult intersections(std::string name, bool exact) const {
    AxiomResult res{std::move(name), AxiomStatus::Pass, 0, nullptr};
    if (!exact) {
      res.status = AxiomStatus::BoundExceeded;
      return res;
    }
    for (std::size_t u = 0; u < n_; ++u) {
      if (!up_[u].test(u)) continue;
      ++res.checked;
      if (meet_below(u, down_[u])) continue;
      fail(res, minimal_empty(u));
      return res;
    }
    return res;
  }

  json ids(const std::vector<std::size_t>& idx) const {
    json j = json::array();
    for (std::size_t i : idx) j.push_back(rep_.id(frag_[i]));
    return j;
  }

 private:
  std::vector<Point> points(const BaseElement& w) const {
    const bool finite = space_.completeness() == CompletenessClass::Finite;
    return sample_points(w, space_, finite ? 64 : bounds_.points);
  }

  void fail(AxiomResult& res, const std::vector<std::size_t>& idx) const {
    res.status = AxiomStatus::Fail;
    res.witness = json{{"elements", ids(idx)}};
  }

  bool cover(const BaseElement& w, const Point* x, AxiomResult& res) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (subset(b_[i], w, space_) && (x == nullptr || member(*x, b_[i], space_))) return true;
    }
    json wit = {{"open", encode(w, space_)}};
    if (x != nullptr) wit["point"] = encode(*x, space_);
    if (!rep_.finite_carrier()) {
      try {
        Element q = x == nullptr ? rep_.refine(w) : rep_.refine_at(*x, w);
        const BaseElement bq = rep_.bmap(q);
        if (subset(bq, w, space_) && (x == nullptr || member(*x, bq, space_))) return true;
        wit["element"] = rep_.id(q);
      } catch (const Error& e) {
        if (e.code() != Errc::RefineBoundExceeded && e.code() != Errc::IncompatibleStrategy) throw;
        res.status = AxiomStatus::BoundExceeded;
        res.witness = wit;
        return false;
      }
    }
    res.status = AxiomStatus::Fail;
    res.witness = wit;
    return false;
  }

  bool bound_by_oracle(std::size_t i, std::size_t j, const Point* x, AxiomResult& res) const {
    json wit = {{"elements", ids({i, j})}};
    if (x != nullptr) wit["point"] = encode(*x, space_);
    if (!rep_.finite_carrier()) {
      try {
        Element r = x == nullptr ? rep_.upper_bound(frag_[i], frag_[j]) : rep_.upper_bound_at(*x, frag_[i], frag_[j]);
        if (rep_.leq(frag_[i], r) && rep_.leq(frag_[j], r) && (x == nullptr || member(*x, rep_.bmap(r), space_))) {
          return true;
        }
        wit["bound"] = rep_.id(r);
      } catch (const Error& e) {
        if (e.code() != Errc::NoUpperBoundWithinBound && e.code() != Errc::IncompatibleStrategy &&
            e.code() != Errc::RefineBoundExceeded) {
          throw;
        }
        res.status = AxiomStatus::BoundExceeded;
        res.witness = wit;
        return false;
      }
    }
    res.status = AxiomStatus::Fail;
    res.witness = wit;
    return false;
  }

  bool meet_below(std::size_t u, const Bits& members) const {
    std::optional<BaseElement> acc = b_[u];
    for (std::size_t d = members.find_first(); d != Bits::npos && acc; d = members.find_next(d)) {
      acc = intersect(*acc, b_[d], space_);
    }
    return acc.has_value();
  }

  // Smallest directed subset topped by u with empty intersection, searched
  // up to bounds_.max_directed elements; falls back to the whole down-set.
  std::vector<std::size_t> minimal_empty(std::size_t u) const {
    std::vector<std::size_t> below;
    for (std::size_t d = down_[u].find_first(); d != Bits::npos; d = down_[u].find_next(d)) {
      if (d != u) below.push_back(d);
    }
    for (std::size_t size = 1; size + 1 <= bounds_.max_directed && size <= below.size(); ++size) {
      std::vector<std::size_t> pick(size);
      for (std::size_t k = 0; k < size; ++k) pick[k] = k;
      for (;;) {
        Bits m(n_);
        for (std::size_t k : pick) m.set(below[k]);
        if (!meet_below(u, m)) {
          std::vector<std::size_t> out{u};
          for (std::size_t k : pick) out.push_back(below[k]);
          return out;
        }
        std::size_t k = size;
        while (k > 0 && pick[k - 1] == below.size() - size + k - 1) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t t = k; t < size; ++t) pick[t] = pick[t - 1] + 1;
      }
    }
    std::vector<std::size_t> out{u};
    out.insert(out.end(), below.begin(), below.end());
    return out;
  }

  const RepTriple& rep_;
  const Space& space_;
  const std::vector<Element>& frag_;
  AxiomBounds bounds_;
  std::size_t n_;
  std::vector<BaseElement> b_;
  std::vector<Bits> up_;
  std::vector<Bits> down_;
};

std::optional<BigInt> cardinality(const BaseElement& b, const Space& space) {
  switch (space.kind()) {
    case SpaceKind::Finite: return BigInt(std::popcount(b.get_if<FiniteOpen>()->atoms));
    case SpaceKind::Product: {
      BigInt total = 1;
      const auto& box = *b.get_if<ProductBox>();
      for (std::size_t f = 0; f < space.factors().size(); ++f) {
        const Space& fs = space.factors()[f];
        std::optional<BaseElement> comp = whole(fs);
        for (const auto& e : box.assignments) {
          if (e.factor == f) comp = e.open;
        }
        if (!comp) return std::nullopt;
        auto c = cardinality(*comp, fs);
        if (!c) return std::nullopt;
        total *= *c;
      }
      return total;
    }
    default: return std::nullopt;
  }
}

}  // namespace

AxiomReport check_axioms(const RepTriple& rep, AxiomSystem system, const AxiomBounds& bounds) {
  AxiomReport report{system, rep.origin(), rep.fragment().size(), rep.finite_carrier(), bounds, {}};
  Checker c(rep, bounds);
  const bool d = system == AxiomSystem::D;
  const std::string p = d ? "D" : "piD";
  report.results.push_back(c.base(p + "1", d));
  report.results.push_back(c.transitive(p + "2"));
  report.results.push_back(c.antitone(p + "3"));
  report.results.push_back(c.directed(p + "4", d));
  report.results.push_back(c.intersections(p + "5w1", true));
  report.results.push_back(c.intersections(p + "5", rep.finite_carrier()));
  return report;
}

json encode(const AxiomReport& report) {
  json axioms = json::array();
  for (const auto& r : report.results) {
    axioms.push_back({{"axiom", r.name},
                      {"status", std::string(status_name(r.status))},
                      {"checked", r.checked},
                      {"witness", r.witness}});
  }
  return {{"system", report.system == AxiomSystem::D ? "d" : "pi"},
          {"origin", report.origin},
          {"fragment_size", report.fragment_size},
          {"finite_carrier", report.finite_carrier},
          {"bounds", {{"base", report.bounds.base}, {"points", report.bounds.points},
                      {"max_directed", report.bounds.max_directed}}},
          {"passed", report.passed()},
          {"axioms", std::move(axioms)}};
}

bool singleton_upgrade(const RepTriple& rep) {
  if (!rep.finite_carrier()) throw Error(Errc::BoundExceeded, "carrier is not finite; only bounded checks apply");
  const auto& frag = rep.fragment();
  const Space& space = rep.space();
  const std::size_t n = frag.size();
  for (std::size_t u = 0; u < n; ++u) {
    if (!rep.leq(frag[u], frag[u])) continue;
    // {u} is directed, so B(u) must be a single point; larger directed sets
    // topped by u can then only shrink it to empty.
    const BaseElement bu = rep.bmap(frag[u]);
    auto size = cardinality(bu, space);
    if (!size || *size != 1) return false;
    std::optional<BaseElement> acc = bu;
    for (std::size_t d = 0; d < n && acc; ++d) {
      if (rep.leq(frag[d], frag[u])) acc = intersect(*acc, rep.bmap(frag[d]), space);
    }
    if (!acc) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Files

json encode_rep(const RepTriple& rep) {
  const Space& space = rep.space();
  json j;
  j["origin"] = rep.origin();
  j["describe"] = rep.describe();
  j["space"] = encode(space);
  json elements = json::array();
  for (const Element& e : rep.fragment()) elements.push_back({{"id", rep.id(e)}, {"B", encode(rep.bmap(e), space)}});
  j["elements"] = std::move(elements);
  json pairs = json::array();
  for (const Element& a : rep.fragment()) {
    for (const Element& b : rep.fragment()) {
      if (rep.leq(a, b)) pairs.push_back({rep.id(a), rep.id(b)});
    }
  }
  j["leq"] = std::move(pairs);
  if (const auto* c = dynamic_cast<const CompiledRep*>(&rep)) {
    j["compile"] = {{"strategy", c->strategy().id()},
                    {"mode", std::string(mode_name(c->mode()))},
                    {"depth", c->depth()},
                    {"branching", c->branching()},
                    {"fragment_cap", c->cap()}};
  } else if (const auto* p = dynamic_cast<const ProductRep*>(&rep)) {
    json factors = json::array();
    for (const auto& f : p->factors()) factors.push_back(encode_rep(*f));
    j["factors"] = std::move(factors);
    j["per_factor"] = p->per_factor();
  } else if (const auto* q = dynamic_cast<const QuotientRep*>(&rep)) {
    j["base"] = encode_rep(*q->base());
  }
  return j;
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::ParseError, what); }

void check_listing(const RepTriple& rep, const json& j) {
  const json& elements = j.at("elements");
  if (elements.size() != rep.fragment().size()) bad("element list does not match the construction");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const Element& e = rep.fragment()[i];
    if (elements[i].at("id").get<std::string>() != rep.id(e) ||
        !(decode_open(elements[i].at("B"), rep.space()) == rep.bmap(e))) {
      bad("element " + rep.id(e) + " does not match the construction");
    }
  }
  std::set<std::pair<std::string, std::string>> listed;
  for (const json& pr : j.at("leq")) listed.insert({pr.at(0).get<std::string>(), pr.at(1).get<std::string>()});
  std::set<std::pair<std::string, std::string>> actual;
  for (const Element& a : rep.fragment()) {
    for (const Element& b : rep.fragment()) {
      if (rep.leq(a, b)) actual.insert({rep.id(a), rep.id(b)});
    }
  }
  if (listed != actual) bad("relation does not match the construction");
}

}  // namespace

RepPtr decode_rep(const json& j) {
  try {
    const std::string origin = j.at("origin").get<std::string>();
    const Space space = decode_space(j.at("space"));
    RepPtr rep;
    if (origin == "handcrafted") {
      std::vector<std::pair<std::string, BaseElement>> elements;
      for (const json& e : j.at("elements")) {
        elements.emplace_back(e.at("id").get<std::string>(), decode_open(e.at("B"), space));
      }
      std::vector<std::pair<std::string, std::string>> pairs;
      for (const json& pr : j.value("leq", json::array())) {
        pairs.emplace_back(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
      }
      return handcrafted_rep(space, std::move(elements), std::move(pairs));
    }
    if (origin == "compiled-bm" || origin == "compiled-ch") {
      const json& c = j.at("compile");
      const Mode mode = parse_mode(c.at("mode").get<std::string>());
      if ((mode == Mode::BM) != (origin == "compiled-bm")) bad("origin and mode disagree");
      std::shared_ptr<const Strategy> s = make_strategy(c.at("strategy").get<std::string>(), space, mode, Role::Alpha);
      rep = compile_rep(std::move(s), space, mode, c.at("depth").get<std::size_t>(), c.at("branching").get<std::size_t>(),
                        c.value("fragment_cap", std::size_t{4096}));
    } else if (origin == "product") {
      std::vector<RepPtr> factors;
      std::vector<Space> spaces;
      for (const json& f : j.at("factors")) {
        factors.push_back(decode_rep(f));
        spaces.push_back(factors.back()->space());
      }
      rep = product_rep(factors, spaces, j.at("per_factor").get<std::size_t>());
    } else if (origin == "quotient") {
      rep = antisym_quotient(decode_rep(j.at("base")));
    } else {
      bad("unknown origin '" + origin + "'");
    }
    if (!(rep->space() == space)) bad("space does not match the construction");
    check_listing(*rep, j);
    return rep;
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

RepPtr load_rep(const std::string& path) { return decode_rep(load_json_file(path)); }

}  // namespace topogame
