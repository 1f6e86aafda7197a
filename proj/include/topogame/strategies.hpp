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
#include <string>
#include <string_view>
#include <vector>

#include "topogame/games.hpp"

namespace topogame {

// Search bound for refine / upper_bound witnesses.
inline constexpr std::size_t kWitnessBound = 256;

// completeness: intervals on a line. minimal-open: finite spaces.
// cylinder-extend: cantor. Throws IncompatibleStrategy otherwise.
std::unique_ptr<Strategy> make_alpha(std::string_view kind, const Space& space, Mode mode);

// diagonal: rational line only. random: any space, seeded.
std::unique_ptr<Strategy> make_beta(std::string_view kind, const Space& space, Mode mode,
                                    std::uint64_t seed = 0);

// Plays the given moves for `role` in order; used to replay a human side.
std::unique_ptr<Strategy> make_scripted(std::string id, Role role, const Space& space, Mode mode,
                                        std::vector<Move> moves);

// Descriptor strings: completeness, minimal-open, cylinder-extend, diagonal,
// random, random:<seed>, rep:<file>, compiled:<alpha-kind>[:<depth>:<branching>].
// `seed` is used by a bare "random".
std::unique_ptr<Strategy> make_strategy(std::string_view descriptor, const Space& space, Mode mode,
                                        Role role, std::uint64_t seed = 0);

// The open beta refines on its next move: alpha's last open, or the opener.
BaseElement beta_frame(const PartialPlay& play, const Space& space);

}  // namespace topogame
