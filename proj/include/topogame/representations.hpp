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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "topogame/error.hpp"
#include "topogame/games.hpp"

namespace topogame {

// ---------------------------------------------------------------------------
// Carrier elements

// One entry of a compiled element: a partial play ending with a beta move
// and the strategy's answer to it.
struct RecordEntry {
  PartialPlay play;
  BaseElement value;
  friend bool operator==(const RecordEntry&, const RecordEntry&) = default;
};

struct TupleComponent;

class Element {
 public:
  struct Label {
    std::string name;
    friend bool operator==(const Label&, const Label&) = default;
  };
  // Ordered list of (play, value) with values decreasing under inclusion.
  struct Record {
    std::vector<RecordEntry> entries;
    friend bool operator==(const Record&, const Record&) = default;
  };
  // Finite-support tuple sorted by factor; a missing factor is that factor's
  // least element.
  struct Tuple {
    std::vector<TupleComponent> components;
    friend bool operator==(const Tuple&, const Tuple&);
  };
  using Variant = std::variant<Label, Record, Tuple>;

  Element(Label l) : v_(std::move(l)) {}   // NOLINT
  Element(Record r) : v_(std::move(r)) {}  // NOLINT
  Element(Tuple t) : v_(std::move(t)) {}   // NOLINT

  const Variant& variant() const { return v_; }
  template <typename T>
  const T* get_if() const { return std::get_if<T>(&v_); }

  friend bool operator==(const Element& a, const Element& b) { return a.v_ == b.v_; }

 private:
  Variant v_;
};

struct TupleComponent {
  std::size_t factor;
  Element element;
  friend bool operator==(const TupleComponent&, const TupleComponent&) = default;
};

inline bool operator==(const Element::Tuple& a, const Element::Tuple& b) {
  return a.components == b.components;
}

// Canonical string; equal keys iff equal elements.
std::string key(const Element& e);

// ---------------------------------------------------------------------------
// Triples (Q, <<, B) with witness oracles

class RepTriple {
 public:
  virtual ~RepTriple() = default;

  virtual const Space& space() const = 0;
  // handcrafted | compiled-bm | compiled-ch | product | quotient
  virtual std::string origin() const = 0;
  // Stable descriptor, recorded by RepChain certificates.
  virtual std::string describe() const = 0;

  virtual bool leq(const Element& p, const Element& q) const = 0;
  virtual BaseElement bmap(const Element& p) const = 0;

  // pi-base witness: B(refine(U)) is inside U.
  virtual Element refine(const BaseElement& u) const = 0;
  // p, q << upper_bound(p, q) whenever B(p) and B(q) meet.
  virtual Element upper_bound(const Element& p, const Element& q) const = 0;

  // Point-aware witnesses for the D system; x lies in the result's B-value.
  virtual bool has_point_witnesses() const { return false; }
  virtual Element refine_at(const Point& x, const BaseElement& u) const;
  virtual Element upper_bound_at(const Point& x, const Element& p, const Element& q) const;

  // The finite part of the carrier that checkers walk. When finite_carrier()
  // holds, the fragment is the whole carrier.
  const std::vector<Element>& fragment() const { return fragment_; }
  virtual bool finite_carrier() const = 0;

  // "q<i>" for fragment elements (labels keep their name), "h<digest>"
  // otherwise.
  std::string id(const Element& e) const;
  std::optional<std::size_t> index_of(const Element& e) const;
  // Throws UnknownElement.
  const Element& find(std::string_view id) const;

 protected:
  void set_fragment(std::vector<Element> fragment);

 private:
  std::vector<Element> fragment_;
  std::unordered_map<std::string, std::size_t> by_key_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

using RepPtr = std::shared_ptr<const RepTriple>;

// Strategy-to-representation compiler. Plays use the first `branching`
// basic opens at each beta turn (ch: points from pick_point); the fragment
// holds every record of at most `depth` plays of at most `depth` rounds,
// truncated at `fragment_cap` elements.
RepPtr compile_rep(std::shared_ptr<const Strategy> s, const Space& space, Mode mode,
                   std::size_t depth, std::size_t branching, std::size_t fragment_cap = 4096);

// The replay construction behind upper_bound on compiled triples. With a
// point, x must lie in B(p) and B(q) and ends up in B(r).
// Errors: DisjointBases, IncompatibleStrategy (not a compiled triple).
Element upper_bound_witness(const RepTriple& rep, const Element& p, const Element& q,
                            const std::optional<Point>& x = std::nullopt);

// Finite triple given by explicit elements and relation pairs.
RepPtr handcrafted_rep(const Space& space, std::vector<std::pair<std::string, BaseElement>> elements,
                       std::vector<std::pair<std::string, std::string>> leq_pairs);

// Product with a fresh least element per factor. The fragment combines the
// first `per_factor` fragment elements of each factor.
// Errors: EmptyProduct, LengthMismatch, KindMismatch.
RepPtr product_rep(const std::vector<RepPtr>& reps, const std::vector<Space>& spaces,
                   std::size_t per_factor = 8);

// Quotient by p E q iff (p << q and q << p) or p = q. A class is named by
// its first fragment member.
RepPtr antisym_quotient(RepPtr rep);

// Representation-to-strategy extractor: alpha keeps a chain q0 << q1 << ...
// and answers B(q_n). Errors: IncompatibleStrategy (ch without point
// witnesses), RefineBoundExceeded, NoUpperBoundWithinBound.
std::unique_ptr<Strategy> rep_to_strategy(RepPtr rep, Mode mode, std::string id = "");

// ---------------------------------------------------------------------------
// Chains inside directed sets

// q0 is the first r with p0 << r; q_{n+1} the first r with q_n << r and
// p_{n+1} << r, all r taken from the input. Throws NotDirected naming the
// first pair without an upper bound inside the set.
template <typename Leq>
std::vector<std::size_t> chain_in_directed(std::size_t n, Leq&& leq);

std::vector<std::string> extract_chain(const RepTriple& rep, const std::vector<std::string>& directed);

// ---------------------------------------------------------------------------
// Axiom checks

enum class AxiomSystem { D, Pi };
AxiomSystem parse_system(std::string_view s);

enum class AxiomStatus { Pass, Fail, BoundExceeded };
std::string_view status_name(AxiomStatus s);

struct AxiomBounds {
  std::size_t base = 64;          // enumerated basic opens for (pi)D1
  std::size_t points = 3;         // sample points per open (infinite spaces)
  std::size_t max_directed = 4;   // size bound when minimizing a (pi)D5 witness
};

struct AxiomResult {
  std::string name;
  AxiomStatus status = AxiomStatus::Pass;
  std::size_t checked = 0;
  json witness;  // null unless status is Fail
};

struct AxiomReport {
  AxiomSystem system;
  std::string origin;
  std::size_t fragment_size = 0;
  bool finite_carrier = false;
  AxiomBounds bounds;
  std::vector<AxiomResult> results;

  bool passed() const;  // no Fail (bound-exceeded allowed)
  const AxiomResult& at(std::string_view name) const;
};

AxiomReport check_axioms(const RepTriple& rep, AxiomSystem system, const AxiomBounds& bounds = {});
json encode(const AxiomReport& report);

// True iff every directed subset of the (finite) carrier has a one-point
// intersection of B-values. Throws BoundExceeded for infinite carriers.
bool singleton_upgrade(const RepTriple& rep);

// ---------------------------------------------------------------------------
// Files

json encode_rep(const RepTriple& rep);
RepPtr decode_rep(const json& j);
RepPtr load_rep(const std::string& path);

// ---------------------------------------------------------------------------

template <typename Leq>
std::vector<std::size_t> chain_in_directed(std::size_t n, Leq&& leq) {
  auto bound_of = [&](std::size_t a, std::size_t b) -> std::optional<std::size_t> {
    for (std::size_t r = 0; r < n; ++r) {
      if (leq(a, r) && leq(b, r)) return r;
    }
    return std::nullopt;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      if (!bound_of(a, b)) {
        throw Error(Errc::NotDirected, "no upper bound for " + std::to_string(a) + " and " + std::to_string(b));
      }
    }
  }
  std::vector<std::size_t> chain;
  for (std::size_t k = 0; k < n; ++k) {
    chain.push_back(*bound_of(k == 0 ? 0 : chain.back(), k));
  }
  return chain;
}

}  // namespace topogame
