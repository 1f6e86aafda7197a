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

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "topogame/rational.hpp"
#include "topogame/topology.hpp"

namespace topogame {

// Fixed enumeration of Q: r(0) = 0, r(2m-1) = cw(m), r(2m) = -cw(m), where
// cw is the Calkin-Wilf sequence cw(1) = 1, cw(n+1) = 1/(2 floor(cw(n)) - cw(n) + 1).
Rational rational_at(std::uint64_t index);
// Inverse of rational_at; nullopt if the index does not fit in 64 bits.
std::optional<std::uint64_t> rational_index(const Rational& q);

// Cantor pairing k -> (i, j) with k = (i+j)(i+j+1)/2 + j.
std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t k);
std::uint64_t pair_index(std::uint64_t i, std::uint64_t j);

// Lazily generated, memoized sequence of basic opens.
class BaseSequence {
 public:
  class Source {
   public:
    virtual ~Source() = default;
    virtual std::optional<BaseElement> next() = 0;
  };

  explicit BaseSequence(std::unique_ptr<Source> source);
  BaseSequence(BaseSequence&&) noexcept;
  BaseSequence& operator=(BaseSequence&&) noexcept;
  ~BaseSequence();

  // nullopt once the sequence is exhausted before index i.
  std::optional<BaseElement> at(std::size_t i);
  std::vector<BaseElement> take(std::size_t n);

 private:
  std::unique_ptr<Source> source_;
  std::vector<BaseElement> cache_;
  bool done_ = false;
};

// The canonical injective base enumeration of a space.
BaseSequence base_sequence(const Space& space);
std::vector<BaseElement> enumerate_base(const Space& space, std::size_t n);

// Enumeration of the basic opens contained in b, relative to b: interval
// spaces use the affine image of the subintervals of (0,1); cantor appends
// length-lex suffixes; finite spaces filter the declaration order; boxes
// combine factor-relative enumerations. When include_self is set, b itself
// appears (first, except for finite spaces where declaration order rules).
BaseSequence subset_sequence(const BaseElement& b, const Space& space, bool include_self);
std::vector<BaseElement> enumerate_subsets(const BaseElement& b, const Space& space,
                                           std::size_t n, bool include_self);

// Position of b in enumerate_base; nullopt past `limit` candidates.
std::optional<std::uint64_t> base_index_of(const BaseElement& b, const Space& space,
                                           std::uint64_t limit = 1u << 22);

}  // namespace topogame
