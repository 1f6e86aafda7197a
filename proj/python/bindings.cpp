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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "topogame/cli.hpp"
#include "topogame/codec.hpp"
#include "topogame/error.hpp"
#include "topogame/representations.hpp"
#include "topogame/session.hpp"
#include "topogame/strategies.hpp"

namespace py = pybind11;
using namespace topogame;

// Everything crosses the boundary as JSON text; the Python package wraps it.
namespace {

std::string simulate_json(const std::string& space_arg, const std::string& alpha, const std::string& beta,
                          std::size_t rounds, std::uint64_t seed, const std::string& mode_name) {
  const Space space = parse_space_arg(space_arg);
  const Mode mode = parse_mode(mode_name);
  auto a = make_strategy(alpha, space, mode, Role::Alpha, seed);
  auto b = make_strategy(beta, space, mode, Role::Beta, seed);
  py::gil_scoped_release release;
  return encode(simulate(space, *a, *b, rounds, seed)).dump();
}

bool verify_json(const std::string& transcript) {
  const Transcript t = decode_transcript(parse_json(transcript));
  std::unique_ptr<Strategy> alpha;
  if (t.certificate && std::holds_alternative<RepChain>(*t.certificate)) {
    alpha = make_strategy(t.alpha, t.space, t.mode, Role::Alpha, t.seed);
  }
  return verify_certificate(t, alpha.get());
}

std::string compile_json(const std::string& space_arg, const std::string& strategy, const std::string& mode_name,
                         std::size_t depth, std::size_t branching, std::size_t cap) {
  const Space space = parse_space_arg(space_arg);
  const Mode mode = parse_mode(mode_name);
  std::shared_ptr<const Strategy> s = make_strategy(strategy, space, mode, Role::Alpha);
  py::gil_scoped_release release;
  return encode_rep(*compile_rep(std::move(s), space, mode, depth, branching, cap)).dump();
}

std::string check_json(const std::string& rep_text, const std::string& system, std::size_t max_directed,
                       std::size_t base, std::size_t points) {
  RepPtr rep = decode_rep(parse_json(rep_text));
  const AxiomBounds bounds{base, points, max_directed};
  py::gil_scoped_release release;
  return encode(check_axioms(*rep, parse_system(system), bounds)).dump();
}

std::vector<std::string> chain_json(const std::string& rep_text, const std::vector<std::string>& ids) {
  return extract_chain(*decode_rep(parse_json(rep_text)), ids);
}

std::string product_json(const std::vector<std::string>& reps_text, std::size_t per_factor) {
  std::vector<RepPtr> reps;
  std::vector<Space> spaces;
  for (const auto& r : reps_text) {
    reps.push_back(decode_rep(parse_json(r)));
    spaces.push_back(reps.back()->space());
  }
  return encode_rep(*product_rep(reps, spaces, per_factor)).dump();
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = run_cli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_topogame, m) {
  m.doc() = "Banach-Mazur and strong Choquet games with domain representations";

  static py::exception<Error> error(m, "TopogameError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(std::string(e.name()), e.what()).ptr());
    }
  });

  m.def("simulate", &simulate_json, py::arg("space"), py::arg("alpha"), py::arg("beta"), py::arg("rounds") = 10,
        py::arg("seed") = 0, py::arg("mode") = "bm");
  m.def("verify", &verify_json, py::arg("transcript"));
  m.def("compile_rep", &compile_json, py::arg("space"), py::arg("strategy"), py::arg("mode") = "bm",
        py::arg("depth") = 2, py::arg("branching") = 3, py::arg("cap") = 4096);
  m.def("check_rep", &check_json, py::arg("rep"), py::arg("system") = "pi", py::arg("max_directed") = 4,
        py::arg("base") = 64, py::arg("points") = 3);
  m.def("extract_chain", &chain_json, py::arg("rep"), py::arg("directed"));
  m.def("product", &product_json, py::arg("reps"), py::arg("per_factor") = 8);
  m.def("run_cli", &cli, py::arg("args"));

  py::class_<SessionManager>(m, "SessionManager")
      .def(py::init<>())
      .def("create", [](SessionManager& s, const std::string& body) { return s.create(parse_json(body)).dump(); })
      .def("submit",
           [](SessionManager& s, const std::string& game, const std::string& body) {
             return s.submit(game, parse_json(body)).dump();
           })
      .def("state", [](const SessionManager& s, const std::string& game) { return s.state(game).dump(); })
      .def("rep", [](const SessionManager& s, const std::string& game) { return s.rep(game).dump(); });
}
