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

#include <string>
#include <string_view>

#include <json.hpp>

#include "topogame/rational.hpp"
#include "topogame/topology.hpp"

namespace topogame {

using json = nlohmann::json;

// Structured-text codecs. Keys are emitted sorted (nlohmann's default map),
// rationals always as "p/q" strings, so equal values serialize identically.

json encode(const Rational& q);
Rational decode_rational(const json& j);

json encode(const Space& space);
Space decode_space(const json& j);

json encode(const BaseElement& b, const Space& space);
BaseElement decode_open(const json& j, const Space& space);

json encode(const Point& p, const Space& space);
Point decode_point(const json& j, const Space& space);

// "real-line" / "rational-line" / "cantor", inline JSON, or a file path.
Space parse_space_arg(std::string_view arg);

std::string dump(const json& j);  // two-space indent plus trailing newline
json parse_json(std::string_view text);
json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace topogame
