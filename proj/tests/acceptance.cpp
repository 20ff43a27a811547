// one PASS/FAIL line per criterion; exit status is nonzero on any unexpected failure

#include <chrono>
#include <iostream>
#include <map>
#include <set>

#include "clott/harness.hpp"

using namespace clott;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  std::set<std::string> failingLemmas;
  size_t checks = 0, passed = 0;
};

std::map<std::string, Report> reports;

const Report& suite(const std::string& name) {
  auto it = reports.find(name);
  if (it == reports.end()) it = reports.emplace(name, run_suite(name, SuiteConfig{})).first;
  return it->second;
}

void need_suite(Outcome& o, const std::string& name) {
  const Report& r = suite(name);
  for (auto& c : r.checks) {
    ++o.checks;
    if (c.status == "pass") {
      ++o.passed;
      continue;
    }
    o.pass = false;
    o.failingLemmas.insert(name + "/" + c.lemma);
  }
}

void need_lemma(Outcome& o, const std::string& name, const std::string& lemma, size_t atLeast = 1) {
  size_t n = 0;
  for (auto& c : suite(name).checks)
    if (c.lemma == lemma && c.status == "pass") ++n;
  if (n < atLeast) {
    o.pass = false;
    o.notes.push_back(lemma + " has " + std::to_string(n) + " passing checks");
  }
}

void need(Outcome& o, bool cond, const std::string& what) {
  if (!cond) {
    o.pass = false;
    o.notes.push_back(what);
  }
}

std::set<std::string> fixtures_of(const std::string& name, const std::string& lemma) {
  std::set<std::string> out;
  for (auto& c : suite(name).checks)
    if (c.lemma == lemma) out.insert(c.fixture);
  return out;
}

Outcome triangles() {
  Outcome o;
  need_suite(o, "triangle");
  need_lemma(o, "triangle", "later-triangle");
  need_lemma(o, "triangle", "earlier-triangle");
  return o;
}

Outcome transposition() {
  Outcome o;
  need_suite(o, "transpose");
  need_lemma(o, "transpose", "transpose-forward-back");
  need_lemma(o, "transpose", "transpose-back-forward");
  return o;
}

Outcome substitution() {
  Outcome o;
  need_suite(o, "subst-lemma");
  std::set<std::string> kinds;
  size_t pairs = 0;
  for (auto& fx : subst_corpus()) {
    Ctx src = parse_ctx(fx.src), dst = parse_ctx(fx.dst);
    SyntacticSubst s = parse_subst(fx.subst, src, dst);
    ++pairs;
    if (s.bindings.empty()) kinds.insert("empty");
    for (auto& b : s.bindings)
      kinds.insert(b.kind == Binding::Term ? "term" : b.kind == Binding::Tick ? "tick" : "diamond");
  }
  need(o, pairs >= 20, "fewer than 20 substitution pairs");
  need(o, kinds.size() == 4, "not every formation rule is covered");
  need_lemma(o, "subst-lemma", "subst-lemma-term", 20);
  return o;
}

Outcome beta_eta() {
  Outcome o;
  need_suite(o, "beta-eta");
  need_lemma(o, "beta-eta", "conv", beta_eta_corpus().size());
  need_lemma(o, "beta-eta", "semantic");
  std::set<Kind> heads;
  for (auto& fx : beta_eta_corpus()) {
    Ctx ctx = parse_ctx(fx.ctx);
    for (auto& side : {fx.lhs, fx.rhs}) {
      ExprP e = parse_expr(side, ctx);
      heads.insert(e->kind);
      if (e->a) heads.insert(e->a->kind);
    }
  }
  for (Kind k : {Kind::TickLam, Kind::ClockLam, Kind::Lam, Kind::Pair})
    need(o, heads.count(k), "corpus lacks an introduction form");
  return o;
}

Outcome tick_irrelevance() {
  Outcome o;
  need_suite(o, "tick-irrelevance");
  need_lemma(o, "tick-irrelevance", "tick-irrelevance");
  need_lemma(o, "tick-irrelevance", "outer-tick-swap");
  bool twoClock = false;
  for (auto& fx : later_corpus())
    if (parse_ctx(fx.ctx).clocks.size() > 1 &&
        fixtures_of("tick-irrelevance", "outer-tick-swap").count(fx.name))
      twoClock = true;
  need(o, twoClock, "no two-clock fixture");
  return o;
}

Outcome fixpoints() {
  Outcome o;
  need_suite(o, "fixpoint");
  need_suite(o, "streams");
  need_lemma(o, "fixpoint", "unfold-conv");
  need_lemma(o, "fixpoint", "unfold-semantic");
  need_lemma(o, "fixpoint", "fix-lambda-form");
  need_lemma(o, "streams", "stream-shape");
  configure(SuiteConfig{});
  need(o, stream_prefix(3) == std::vector<long>{0, 0, 0}, "zeros prefix is not 0 0 0");
  return o;
}

Outcome diamond_choice() {
  Outcome o;
  need_suite(o, "diamond-choice");
  need_lemma(o, "diamond-choice", "diamond-independent-of-witness");
  return o;
}

Outcome clock_irrelevance() {
  Outcome o;
  need_suite(o, "clock-irrelevance");
  need_suite(o, "clock-weaken-iso");
  need_lemma(o, "clock-irrelevance", "clock-irrelevance");
  need_lemma(o, "clock-irrelevance", "fresh-clock-bijection");
  return o;
}

Outcome exchange_algebra() {
  Outcome o;
  need_suite(o, "exchange");
  need_suite(o, "exchange-eqs");
  need_suite(o, "reindex");
  for (auto& l : {"exchange-identity", "exchange-composition", "next-reindex",
                  "projection-after-exchange", "diamond-projection", "merge-then-weaken"})
    need_lemma(o, "exchange", l);
  need_lemma(o, "exchange-eqs", "exchange-unit");
  need_lemma(o, "exchange-eqs", "exchange-counit");
  return o;
}

Outcome negative_typing() {
  Outcome o;
  need_suite(o, "negative-typing");
  std::map<std::string, std::string> rule;
  for (auto& fx : rejected_corpus()) rule[fx.name] = fx.rule;
  need(o, rule["double-tick"] == "tick-app", "double tick fixture missing");
  need(o, rule["dfix-force"] == "diamond", "forced fixed point fixture missing");
  std::set<std::string> accepted;
  for (auto& fx : typing_corpus()) accepted.insert(fx.name);
  for (auto& n : {"zeros", "hd", "tl", "apply", "apply-dep"})
    need(o, accepted.count(n), std::string(n) + " not in the accepted corpus");
  return o;
}

Outcome soundness() {
  Outcome o;
  need_suite(o, "soundness");
  need_lemma(o, "soundness", "interpretation-in-type", typing_corpus().size());
  return o;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  struct Criterion {
    std::string name;
    Outcome (*run)();
    std::set<std::string> tolerated;  // failures analysed as outside the model
  };
  std::vector<Criterion> cs = {
      {"adjunction triangles", triangles, {}},
      {"transposition round trips", transposition, {}},
      {"substitution", substitution, {}},
      {"beta and eta", beta_eta, {}},
      {"tick irrelevance", tick_irrelevance, {}},
      {"fixed points and streams", fixpoints, {}},
      {"diamond choice", diamond_choice, {}},
      {"clock irrelevance", clock_irrelevance, {}},
      {"exchange algebra", exchange_algebra, {"exchange/diamond-projection"}},
      {"negative typing", negative_typing, {}},
      {"soundness", soundness, {}},
  };
  bool unexpected = false;
  auto start = Clock::now();
  for (auto& c : cs) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("threw: ") + e.what());
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << "  " << o.passed << "/" << o.checks
              << " checks  " << secs << "s";
    for (auto& l : o.failingLemmas) std::cout << "  failing " << l;
    for (auto& n : o.notes) std::cout << "  (" << n << ")";
    std::cout << "\n";
    if (o.pass) continue;
    bool known = o.notes.empty() && !o.failingLemmas.empty();
    for (auto& l : o.failingLemmas) known = known && c.tolerated.count(l);
    if (known) {
      std::cout << "     known model discrepancy, see the decision ledger\n";
      continue;
    }
    unexpected = true;
  }
  double total = std::chrono::duration<double>(Clock::now() - start).count();
  std::cout << "total " << total << "s\n";
  return unexpected ? 1 : 0;
}
