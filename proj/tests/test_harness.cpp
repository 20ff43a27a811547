#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clott/harness.hpp"

using namespace clott;

namespace {

size_t count(const Report& r, const std::string& lemma, const std::string& status) {
  size_t n = 0;
  for (auto& c : r.checks)
    if (c.lemma == lemma && c.status == status) ++n;
  return n;
}

}  // namespace

TEST_CASE("a wrong equation is caught") {
  std::vector<EqFixture> bad = {
      {"off-by-one", "clocks k; ctx x : Nat", "suc x", "x", "Nat"},
  };
  Report r = check_equalities(bad, SuiteConfig{});
  CHECK_FALSE(r.ok());
  CHECK(count(r, "conv", "fail") == 1);
  CHECK(count(r, "semantic", "fail") == 60);
  CHECK(count(r, "semantic", "pass") == 0);
}

TEST_CASE("a wrong equation under a tick fails only where ticks remain") {
  std::vector<EqFixture> bad = {
      {"later-const", "clocks k; ctx x : Later k Nat", "tlam (a : k) x [a]", "tlam (a : k) 0",
       "Later k Nat"},
  };
  Report r = check_equalities(bad, SuiteConfig{});
  size_t zeroTick = 0;
  for (auto& w : enumerate_worlds({"k"}, Truncation{}))
    if (w.ticks_of("k") == 0) ++zeroTick;
  CHECK(count(r, "semantic", "pass") == zeroTick);
  CHECK(count(r, "semantic", "fail") == 60 - zeroTick);
}

TEST_CASE("a right equation passes") {
  std::vector<EqFixture> good = {
      {"beta", "clocks k; ctx x : Nat", "(lam (y : Nat) suc y) x", "suc x", "Nat"},
  };
  Report r = check_equalities(good, SuiteConfig{});
  CHECK(r.ok());
  CHECK(r.checks.size() == 61);
}

TEST_CASE("an ill typed fixture is reported, not checked") {
  std::vector<EqFixture> ill = {{"ill", "clocks k; ctx x : Nat", "x", "tlam (a : k) x", "Nat"}};
  Report r = check_equalities(ill, SuiteConfig{});
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].lemma == "fixture-typechecks");
  CHECK(r.checks[0].status == "error");
}

TEST_CASE("running out of materialised components is marked truncated") {
  SuiteConfig cfg;
  cfg.trunc = Truncation{1, 1, 0};
  std::string tl = stream_term("tl"), hd = stream_term("hd");
  std::string deepHead = "(" + hd + ") ((" + tl + ") ((" + tl + ") ((" + tl + ") xs)))";
  std::vector<EqFixture> deep = {
      {"deep", "clocks k0; ctx xs : Forall c Str[c]", deepHead, deepHead, "Nat"}};
  Report r = check_equalities(deep, cfg);
  CHECK(r.count("truncated") > 0);
  CHECK_FALSE(r.ok());
  configure(SuiteConfig{});
}

TEST_CASE("report json carries details only for failures") {
  std::vector<EqFixture> mixed = {
      {"beta", "clocks k; ctx x : Nat", "(lam (y : Nat) y) x", "x", "Nat"},
      {"wrong", "clocks k; ctx x : Nat", "0", "x", "Nat"},
  };
  json j = check_equalities(mixed, SuiteConfig{}).to_json();
  CHECK(j["suite"] == "equalities");
  for (auto& c : j["checks"]) CHECK(c.contains("detail") == (c["status"] != "pass"));
}

TEST_CASE("fixture selection") {
  SuiteConfig cfg;
  cfg.corpus = {"zeros"};
  Report r = run_suite("fixpoint", cfg);
  CHECK(r.ok());
  for (auto& c : r.checks) CHECK(c.fixture == "zeros");
  CHECK_THROWS(run_suite("no-such-suite", SuiteConfig{}));
}

TEST_CASE("quick suites pass") {
  for (auto& s : {"triangle", "reindex", "fixpoint", "streams", "diamond-choice", "negative-typing"}) {
    CAPTURE(s);
    Report r = run_suite(s, SuiteConfig{});
    CHECK(r.ok());
    CHECK_FALSE(r.checks.empty());
  }
}

TEST_CASE("every suite name is runnable") {
  auto& names = suite_names();
  CHECK(names.size() == 15);
  CHECK(std::find(names.begin(), names.end(), "soundness") != names.end());
}

TEST_CASE("substitution text") {
  Ctx src = parse_ctx("clocks k; ctx x : Nat");
  Ctx dst = parse_ctx("clocks k j; ctx y : Nat, b : j");
  SyntacticSubst s = parse_subst("k -> k, j -> k; y := suc x, b := <> k", src, dst);
  CHECK(s.nu.at("j") == "k");
  REQUIRE(s.bindings.size() == 2);
  CHECK(s.bindings[0].kind == Binding::Term);
  CHECK(s.bindings[1].kind == Binding::Diamond);
  CHECK(s.bindings[1].target == "k");
}

TEST_CASE("every fixture in the corpora typechecks") {
  Checker c;
  for (auto& fx : subst_corpus()) {
    CAPTURE(fx.name);
    Ctx src = parse_ctx(fx.src), dst = parse_ctx(fx.dst);
    CHECK_NOTHROW(check_subst(parse_subst(fx.subst, src, dst), src, dst));
  }
  for (auto& fx : later_corpus()) {
    CAPTURE(fx.name);
    Ctx ctx = parse_ctx(fx.ctx);
    CHECK_NOTHROW(c.infer(ctx, parse_expr(fx.term, ctx)));
  }
}
