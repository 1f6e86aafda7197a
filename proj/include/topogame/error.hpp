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

#include <stdexcept>
#include <string>
#include <string_view>

namespace topogame {

// Every failure the library reports carries one of these codes. The names
// are part of the wire API: sessions return them verbatim.
enum class Errc {
  KindMismatch,
  InvalidDescriptor,
  ParseError,
  EmptyProduct,
  NotYourTurn,
  NotNested,
  PointOutside,
  MalformedMove,
  ModeMismatch,
  IncompatibleStrategy,
  RefineBoundExceeded,
  NoUpperBoundWithinBound,
  DisjointBases,
  NotDirected,
  BoundExceeded,
  LengthMismatch,
  UnknownCertificateKind,
  UnknownElement,
  UnknownGame,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace topogame
