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

#include "topogame/cli.hpp"

#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>

#include "topogame/error.hpp"
#include "topogame/representations.hpp"
#include "topogame/session.hpp"
#include "topogame/strategies.hpp"

namespace topogame {

namespace {

bool is_usage_error(Errc code) {
  switch (code) {
    case Errc::ParseError:
    case Errc::InvalidDescriptor:
    case Errc::KindMismatch:
    case Errc::EmptyProduct:
    case Errc::IncompatibleStrategy:
    case Errc::ModeMismatch:
    case Errc::LengthMismatch:
    case Errc::UnknownElement:
    case Errc::UnknownCertificateKind: return true;
    default: return false;
  }
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << dump(j);
  } else {
    save_text_file(path, dump(j));
  }
}

struct SimulateArgs {
  std::string space, alpha, beta, mode = "bm", out;
  std::size_t rounds = 10;
  std::uint64_t seed = 0;
};

struct PlayArgs {
  std::string space, mode = "bm", human = "beta", engine, moves, out;
  std::uint64_t seed = 0;
};

struct CompileArgs {
  std::string space, strategy, mode = "bm", out;
  std::size_t depth = 2, branching = 4, cap = 4096;
};

struct CheckArgs {
  std::string in, system = "pi", out;
  AxiomBounds bounds;
  bool quotient = false, singleton = false;
};

struct ChainArgs {
  std::string in;
  std::vector<std::string> directed;
};

struct ProductArgs {
  std::vector<std::string> in;
  std::string out;
  std::size_t per_factor = 8;
};

int do_simulate(const SimulateArgs& a, std::ostream& out) {
  const Space space = parse_space_arg(a.space);
  const Mode mode = parse_mode(a.mode);
  auto alpha = make_strategy(a.alpha, space, mode, Role::Alpha, a.seed);
  auto beta = make_strategy(a.beta, space, mode, Role::Beta, a.seed);
  emit(encode(simulate(space, *alpha, *beta, a.rounds, a.seed)), a.out, out);
  return 0;
}

int do_play(const PlayArgs& a, std::ostream& out, std::ostream& err) {
  const Space space = parse_space_arg(a.space);
  const Mode mode = parse_mode(a.mode);
  const Role human = parse_role(a.human);
  const Role engine_role = human == Role::Beta ? Role::Alpha : Role::Beta;
  auto engine = make_strategy(a.engine, space, mode, engine_role, a.seed);
  auto memo = engine->make_memo();
  const json script = load_json_file(a.moves);
  if (!script.is_array()) throw Error(Errc::ParseError, "moves file must hold an array");
  PartialPlay play(mode);
  std::size_t next = 0;
  for (;;) {
    if (play.turn() == human) {
      if (next >= script.size()) break;
      try {
        play = step(play, decode_move(script[next], space, human), space);
      } catch (const Error& e) {
        if (e.code() == Errc::ParseError) throw;
        err << "move " << next << ": " << e.what() << "\n";
        return 1;
      }
      ++next;
    } else {
      // Engine beta opens only when the human has an answer left.
      if (engine_role == Role::Beta && next >= script.size()) break;
      play = step(play, engine->respond(play, memo.get()), space);
    }
  }
  Transcript t{space,
               mode,
               human == Role::Alpha ? "human" : engine->id(),
               human == Role::Beta ? "human" : engine->id(),
               a.seed,
               play.alpha_count(),
               play,
               std::nullopt};
  if (engine_role == Role::Alpha) t.certificate = engine->certificate(play, memo.get());
  if (!t.certificate) t.certificate = default_certificate(space, play);
  emit(encode(t), a.out, out);
  return 0;
}

int do_compile(const CompileArgs& a, std::ostream& out) {
  const Space space = parse_space_arg(a.space);
  const Mode mode = parse_mode(a.mode);
  std::shared_ptr<const Strategy> s = make_strategy(a.strategy, space, mode, Role::Alpha);
  emit(encode_rep(*compile_rep(std::move(s), space, mode, a.depth, a.branching, a.cap)), a.out, out);
  return 0;
}

int do_check(const CheckArgs& a, std::ostream& out) {
  RepPtr rep = load_rep(a.in);
  if (a.quotient) rep = antisym_quotient(rep);
  const AxiomReport report = check_axioms(*rep, parse_system(a.system), a.bounds);
  for (const auto& r : report.results) {
    out << r.name << " " << status_name(r.status) << " checked=" << r.checked;
    if (!r.witness.is_null()) out << " witness=" << r.witness.dump();
    out << "\n";
  }
  if (a.singleton) {
    std::string verdict;
    try {
      verdict = singleton_upgrade(*rep) ? "pass" : "fail";
    } catch (const Error& e) {
      if (e.code() != Errc::BoundExceeded) throw;
      verdict = "bound-exceeded";
    }
    out << "singleton-upgrade " << verdict << "\n";
  }
  if (!a.out.empty()) save_text_file(a.out, dump(encode(report)));
  return report.passed() ? 0 : 1;
}

int do_chain(const ChainArgs& a, std::ostream& out, std::ostream& err) {
  RepPtr rep = load_rep(a.in);
  try {
    out << dump(json{{"chain", extract_chain(*rep, a.directed)}});
  } catch (const Error& e) {
    if (e.code() != Errc::NotDirected) throw;
    err << e.what() << "\n";
    return 1;
  }
  return 0;
}

int do_product(const ProductArgs& a, std::ostream& out) {
  std::vector<RepPtr> reps;
  std::vector<Space> spaces;
  for (const auto& path : a.in) {
    reps.push_back(load_rep(path));
    spaces.push_back(reps.back()->space());
  }
  emit(encode_rep(*product_rep(reps, spaces, a.per_factor)), a.out, out);
  return 0;
}

int do_verify(const std::string& path, std::ostream& out) {
  const Transcript t = decode_transcript(load_json_file(path));
  std::unique_ptr<Strategy> alpha;
  if (t.certificate && std::holds_alternative<RepChain>(*t.certificate)) {
    alpha = make_strategy(t.alpha, t.space, t.mode, Role::Alpha, t.seed);
  }
  const bool ok = verify_certificate(t, alpha.get());
  out << (ok ? "valid" : "invalid") << " " << certificate_kind(*t.certificate) << "\n";
  return ok ? 0 : 1;
}

int do_serve(const std::string& host, int port, std::ostream& out) {
  WireServer server;
  const int bound = server.bind(host, port);
  if (bound < 0) throw Error(Errc::InvalidDescriptor, "cannot bind " + host + ":" + std::to_string(port));
  out << "listening on " << host << ":" << bound << std::endl;
  server.listen();
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Banach-Mazur and strong Choquet games with domain representations", "topogame"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "play two strategies and certify the play");
  simulate_cmd->add_option("--space", sim.space, "space kind, descriptor file, or inline JSON")->required();
  simulate_cmd->add_option("--alpha", sim.alpha, "alpha strategy descriptor")->required();
  simulate_cmd->add_option("--beta", sim.beta, "beta strategy descriptor")->required();
  simulate_cmd->add_option("--rounds", sim.rounds);
  simulate_cmd->add_option("--seed", sim.seed);
  simulate_cmd->add_option("--mode", sim.mode)->check(CLI::IsMember({"bm", "ch"}));
  simulate_cmd->add_option("--out", sim.out);

  PlayArgs play;
  auto* play_cmd = app.add_subcommand("play", "replay human moves from a file against an engine");
  play_cmd->add_option("--space", play.space)->required();
  play_cmd->add_option("--mode", play.mode)->check(CLI::IsMember({"bm", "ch"}));
  play_cmd->add_option("--human", play.human)->check(CLI::IsMember({"beta", "alpha"}));
  play_cmd->add_option("--engine", play.engine)->required();
  play_cmd->add_option("--moves", play.moves, "JSON array of {open, point?}")->required();
  play_cmd->add_option("--seed", play.seed);
  play_cmd->add_option("--out", play.out);

  CompileArgs comp;
  auto* compile_cmd = app.add_subcommand("compile-rep", "compile an alpha strategy into a triple");
  compile_cmd->add_option("--space", comp.space)->required();
  compile_cmd->add_option("--strategy", comp.strategy)->required();
  compile_cmd->add_option("--mode", comp.mode)->check(CLI::IsMember({"bm", "ch"}));
  compile_cmd->add_option("--depth", comp.depth)->check(CLI::PositiveNumber);
  compile_cmd->add_option("--branching", comp.branching)->check(CLI::PositiveNumber);
  compile_cmd->add_option("--cap", comp.cap)->check(CLI::PositiveNumber);
  compile_cmd->add_option("--out", comp.out);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check-rep", "check a triple against an axiom system");
  check_cmd->add_option("--in", check.in)->required();
  check_cmd->add_option("--system", check.system)->check(CLI::IsMember({"pi", "d"}));
  check_cmd->add_option("--max-directed", check.bounds.max_directed);
  check_cmd->add_option("--base", check.bounds.base);
  check_cmd->add_option("--points", check.bounds.points);
  check_cmd->add_flag("--quotient", check.quotient, "check the antisymmetric quotient");
  check_cmd->add_flag("--singleton", check.singleton, "also run the singleton-upgrade check");
  check_cmd->add_option("--out", check.out, "write the report as JSON");

  ChainArgs chain;
  auto* chain_cmd = app.add_subcommand("extract-chain", "chain dominating a directed set");
  chain_cmd->add_option("--in", chain.in)->required();
  chain_cmd->add_option("--directed", chain.directed, "element ids")->required()->delimiter(',');

  ProductArgs prod;
  auto* product_cmd = app.add_subcommand("product", "product of triples");
  product_cmd->add_option("--in", prod.in)->required();
  product_cmd->add_option("--per-factor", prod.per_factor)->check(CLI::PositiveNumber);
  product_cmd->add_option("--out", prod.out);

  std::string transcript;
  auto* verify_cmd = app.add_subcommand("verify", "re-check a transcript certificate");
  verify_cmd->add_option("file", transcript)->required();

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "serve the game API over HTTP");
  serve_cmd->add_option("--port", port);
  serve_cmd->add_option("--host", host);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (simulate_cmd->parsed()) return do_simulate(sim, out);
    if (play_cmd->parsed()) return do_play(play, out, err);
    if (compile_cmd->parsed()) return do_compile(comp, out);
    if (check_cmd->parsed()) return do_check(check, out);
    if (chain_cmd->parsed()) return do_chain(chain, out, err);
    if (product_cmd->parsed()) return do_product(prod, out);
    if (verify_cmd->parsed()) return do_verify(transcript, out);
    if (serve_cmd->parsed()) return do_serve(host, port, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return is_usage_error(e.code()) ? 2 : 1;
  } catch (const json::exception& e) {
    err << "ParseError: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

// ---------------------------------------------------------------------------

struct WireServer::Impl {
  httplib::Server http;
  SessionManager sessions;
};

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename F>
void guarded(httplib::Response& res, F&& f) {
  try {
    reply(res, 200, f());
  } catch (const Error& e) {
    reply(res, http_status(e.code()), {{"error", std::string(e.name())}, {"message", e.what()}});
  } catch (const json::exception& e) {
    reply(res, 400, {{"error", "ParseError"}, {"message", e.what()}});
  }
}

}  // namespace

WireServer::WireServer() : impl_(std::make_unique<Impl>()) {
  auto& http = impl_->http;
  auto& sessions = impl_->sessions;
  http.Post("/games", [&sessions](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return sessions.create(parse_json(req.body)); });
  });
  http.Post(R"(/games/([^/]+)/moves)", [&sessions](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return sessions.submit(req.matches[1], parse_json(req.body)); });
  });
  http.Get(R"(/games/([^/]+)/rep)", [&sessions](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return sessions.rep(req.matches[1]); });
  });
  http.Get(R"(/games/([^/]+))", [&sessions](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return sessions.state(req.matches[1]); });
  });
}

WireServer::~WireServer() = default;

int WireServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

void WireServer::listen() { impl_->http.listen_after_bind(); }

void WireServer::stop() { impl_->http.stop(); }

}  // namespace topogame
