// clott: check, evaluate and verify clocked type theory sources

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "clott/harness.hpp"

using namespace clott;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Truncation parse_trunc(const std::string& s, Truncation base) {
  int b = 0, n = 0;
  char comma = 0;
  std::istringstream in(s);
  if (!(in >> b >> comma >> n) || comma != ',' || b < 1 || n < 0 || !in.eof())
    throw Usage("truncation must be B,N with B >= 1, N >= 0: " + s);
  base.B = b;
  base.N = n;
  return base;
}

Truncation truncation(const std::string& flag) {
  Truncation t;
  if (const char* env = std::getenv("CLOTT_TRUNC")) t = parse_trunc(env, t);
  if (!flag.empty()) t = parse_trunc(flag, t);
  return t;
}

Derivation check_source(const Source& s) {
  Checker c;
  return s.type ? c.check(s.ctx, s.term, s.type) : c.infer(s.ctx, s.term);
}

int cmd_check(const std::string& file, bool explain, bool asJson) {
  Source s = parse_file(slurp(file));
  try {
    Derivation d = check_source(s);
    if (asJson) {
      json out = {{"status", "ok"}, {"type", print(d.concl.type)}};
      if (explain) out["derivation"] = to_json(d);
      std::cout << out.dump() << "\n";
    } else {
      std::cout << "ok: " << print(d.concl) << "\n";
      if (explain) std::cout << print(d);
    }
    return 0;
  } catch (const TypeError& e) {
    if (asJson) std::cout << json{{"status", "error"}, {"error", e.to_json()}}.dump() << "\n";
    std::cerr << "error [" << e.rule << "] " << e.what() << "\n  in " << e.judgement << "\n";
    return 1;
  }
}

int cmd_eval(const std::string& file, const std::string& worldText, int envIndex,
             const Truncation& tr) {
  Source s = parse_file(slurp(file));
  config().trunc = tr;
  try {
    check_source(s);
  } catch (const TypeError& e) {
    std::cerr << "error [" << e.rule << "] " << e.what() << "\n";
    return 1;
  }
  json wj;
  try {
    wj = json::parse(worldText);
  } catch (const json::exception& e) {
    throw Usage(std::string("--world is not JSON: ") + e.what());
  }
  World w;
  try {
    w = world_from_json(wj, s.ctx.clocks);
  } catch (const WorldError& e) {
    throw Usage(std::string("bad world: ") + e.what());
  }
  auto envs = ctx_elements(s.ctx, w);
  if (envs.size() > 1 && envIndex < 0)
    throw Usage("context has " + std::to_string(envs.size()) +
                " environments at this world; choose one with --env");
  size_t i = envIndex < 0 ? 0 : static_cast<size_t>(envIndex);
  if (i >= envs.size()) throw Usage("--env out of range (" + std::to_string(envs.size()) + ")");
  std::cout << to_json(eval(s.term, s.ctx, w, envs[i])).dump() << "\n";
  return 0;
}

int cmd_normalize(const std::string& file) {
  Source s = parse_file(slurp(file));
  try {
    check_source(s);
  } catch (const TypeError& e) {
    std::cerr << "error [" << e.rule << "] " << e.what() << "\n";
    return 1;
  }
  std::cout << print(normalize(s.term)) << "\n";
  return 0;
}

int cmd_inhabit(const std::string& file, const Truncation& tr) {
  Source s = parse_file(slurp(file));
  config().trunc = tr;
  try {
    Checker().check_type(s.ctx, s.term);
  } catch (const TypeError& e) {
    std::cerr << "error [" << e.rule << "] " << e.what() << "\n";
    return 1;
  }
  size_t worlds = 0, empty = 0;
  for (auto& w : enumerate_worlds(s.ctx.clocks, tr)) {
    ++worlds;
    for (auto& g : ctx_elements(s.ctx, w))
      if (elements(s.term, s.ctx, w, g).empty()) {
        if (!empty) std::cerr << "empty at " << show(w) << " env " << show(g) << "\n";
        ++empty;
      }
  }
  std::cout << json{{"worlds", worlds}, {"empty", empty}, {"inhabited", empty == 0}}.dump()
            << "\n";
  return empty == 0 ? 0 : 1;
}

int cmd_verify(const std::string& suite, const Truncation& tr, bool asJson) {
  SuiteConfig cfg;
  cfg.trunc = tr;
  std::vector<std::string> names = suite_names();
  if (!suite.empty()) {
    if (std::find(names.begin(), names.end(), suite) == names.end())
      throw Usage("unknown suite " + suite);
    names = {suite};
  }
  bool ok = true;
  json all = json::array();
  for (auto& n : names) {
    Report r = run_suite(n, cfg);
    ok = ok && r.ok();
    if (asJson) {
      all.push_back(r.to_json());
      continue;
    }
    std::map<std::string, std::pair<size_t, size_t>> per;  // lemma -> (pass, total)
    for (auto& c : r.checks) {
      auto& p = per[c.lemma];
      p.second++;
      if (c.status == "pass") p.first++;
    }
    for (auto& [lemma, p] : per)
      std::cout << (p.first == p.second ? "ok   " : "FAIL ") << n << " / " << lemma << "  "
                << p.first << "/" << p.second << "\n";
    for (auto& c : r.checks)
      if (c.status != "pass")
        std::cerr << c.status << ": " << n << " / " << c.lemma << " / " << c.fixture << " at "
                  << c.world.dump() << ": " << c.detail << "\n";
  }
  if (asJson) std::cout << (suite.empty() ? all : all[0]).dump() << "\n";
  return ok ? 0 : 1;
}

int cmd_worlds(const std::string& clocks, const Truncation& tr) {
  std::vector<std::string> delta;
  std::stringstream in(clocks);
  std::string k;
  while (std::getline(in, k, ','))
    if (!k.empty()) delta.push_back(k);
  for (auto& w : enumerate_worlds(delta, tr)) std::cout << to_json(w).dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clocked type theory kernel"};
  app.require_subcommand(1);

  std::string file, world, suite, trunc, clocks = "k0";
  bool explain = false, asJson = false;
  int envIndex = -1;

  auto* check = app.add_subcommand("check", "type check a source file");
  check->add_option("file", file)->required();
  check->add_flag("--explain", explain, "print the derivation");
  check->add_flag("--json", asJson, "machine-readable output");

  auto* ev = app.add_subcommand("eval", "evaluate at a world");
  ev->add_option("file", file)->required();
  ev->add_option("--world", world, "world as JSON")->required();
  ev->add_option("--env", envIndex, "index into the enumerated environments");
  ev->add_option("--trunc", trunc, "B,N");

  auto* norm = app.add_subcommand("normalize", "print the normal form");
  norm->add_option("file", file)->required();

  auto* inh = app.add_subcommand("inhabit", "check a type is inhabited at every world");
  inh->add_option("file", file)->required();
  inh->add_option("--trunc", trunc, "B,N");

  auto* ver = app.add_subcommand("verify", "run property suites");
  ver->add_option("--suite", suite, "suite name");
  ver->add_option("--trunc", trunc, "B,N");
  ver->add_flag("--json", asJson, "JSON report");

  auto* wl = app.add_subcommand("worlds", "enumerate worlds");
  wl->add_option("--clocks", clocks, "comma separated clock names");
  wl->add_option("--trunc", trunc, "B,N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    Truncation tr = truncation(trunc);
    if (*check) return cmd_check(file, explain, asJson);
    if (*ev) return cmd_eval(file, world, envIndex, tr);
    if (*norm) return cmd_normalize(file);
    if (*inh) return cmd_inhabit(file, tr);
    if (*ver) return cmd_verify(suite, tr, asJson);
    if (*wl) return cmd_worlds(clocks, tr);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error at " << e.line << ":" << e.col << ": " << e.what() << "\n";
    return 1;
  } catch (const ScopeError& e) {
    std::cerr << "scope error: " << e.what() << "\n";
    return 1;
  } catch (const TruncationError& e) {
    std::cerr << "truncation exceeded: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
