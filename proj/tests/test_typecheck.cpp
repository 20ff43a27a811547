#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clott/harness.hpp"
#include "clott/typecheck.hpp"

using namespace clott;

namespace {

std::string rejected_by(const std::string& text) {
  Source s = parse_file(text);
  try {
    Checker c;
    if (s.type)
      c.check(s.ctx, s.term, s.type);
    else
      c.infer(s.ctx, s.term);
  } catch (const TypeError& e) {
    return e.rule;
  }
  return "";
}

std::string subst_rejected_by(const std::string& src, const std::string& dst,
                              const std::string& text) {
  Ctx s = parse_ctx(src), d = parse_ctx(dst);
  try {
    check_subst(parse_subst(text, s, d), s, d);
  } catch (const TypeError& e) {
    return e.rule;
  }
  return "";
}

}  // namespace

TEST_CASE("the typing corpus is accepted") {
  for (auto& fx : typing_corpus()) {
    CAPTURE(fx.name);
    CHECK(rejected_by(fx.text) == "");
  }
}

TEST_CASE("the rejected corpus fails at the expected rule") {
  for (auto& fx : rejected_corpus()) {
    CAPTURE(fx.name);
    CHECK(rejected_by(fx.text) == fx.rule);
  }
}

TEST_CASE("ticks are affine and clock bound") {
  CHECK(rejected_by("clocks k; ctx x : Later k (Later k Nat), a : k; x [a] [a] : Nat") ==
        "tick-app");
  CHECK(rejected_by("clocks k k2; ctx x : Later k Nat, a : k2; x [a] : Nat") == "tick-app");
  CHECK(rejected_by("clocks k; ctx x : Later k Nat, a : k; x [a] : Nat") == "");
  CHECK(rejected_by("clocks k; ctx x : Nat; tlam (a : k) x : Later k Nat") == "");
  CHECK(rejected_by("clocks k k2; ctx x : Nat; tlam (a : k2) x : Later k Nat") == "tick-abs");
}

TEST_CASE("variables bound before a tick stay usable after it") {
  CHECK(rejected_by("clocks k; ctx x : Later k Nat, y : Nat, a : k; pair (x [a]) y : "
                    "Sig (n : Nat) Nat") == "");
}

TEST_CASE("fixed points") {
  CHECK(rejected_by("clocks k; dfix k (lam (x : Later k Nat) 0) : Later k Nat") == "");
  CHECK(rejected_by("clocks k; dfix k (lam (x : Later k Nat) x) : Later k Nat") == "dfix");
  CHECK(rejected_by("clocks k; dfix k 0 : Later k Nat") == "dfix");
}

TEST_CASE("clock quantification") {
  CHECK(rejected_by("clocks k; clam c 0 : Forall c Nat") == "");
  CHECK(rejected_by("clocks k; ctx x : Nat; x [k] : Nat") == "clock-app");
  CHECK(rejected_by("clocks k; ctx x : Forall c Str[c]; cirr x : Forall c Forall d Nat") ==
        "cirr");
}

TEST_CASE("conversion") {
  Ctx ctx = parse_ctx("clocks k; ctx x : Nat, y : Later k Nat");
  auto e = [&](const std::string& s) { return parse_expr(s, ctx); };
  CHECK(conv(e("(lam (z : Nat) suc z) x"), e("suc x")));
  CHECK(conv(e("fst (pair x 0)"), e("x")));
  CHECK(conv(e("tlam (a : k) y [a]"), e("y")));
  CHECK(conv(e("(clam c x) [k]"), e("x")));
  CHECK(conv(e("natrec 0 (lam (m : Nat) lam (r : Nat) suc r) 2"), e("2")));
  CHECK_FALSE(conv(e("x"), e("suc x")));
  CHECK(conv(e("Str[k]"), e("Sig (h : Nat) Later k Str[k]")));
  CHECK_FALSE(conv(e("Later k Nat"), e("Nat")));
}

TEST_CASE("normal forms") {
  Ctx ctx = parse_ctx("clocks k; ctx x : Nat");
  CHECK(alpha_eq(normalize(parse_expr("(lam (z : Nat) pair z z) x", ctx)),
                 parse_expr("pair x x", ctx)));
  CHECK(alpha_eq(normalize(parse_expr("snd (pair 0 (suc x))", ctx)), parse_expr("suc x", ctx)));
}

TEST_CASE("contexts") {
  Checker c;
  CHECK_NOTHROW(c.check_ctx(parse_ctx("clocks k; ctx x : Nat, a : k, y : Nat")));
  try {
    c.check_ctx(parse_ctx("clocks k; ctx x : Nat, x : Nat"));
    FAIL("duplicate accepted");
  } catch (const TypeError& e) {
    CHECK(e.rule == "ctx-wf");
  }
}

TEST_CASE("substitutions are checked binding by binding") {
  std::string src = "clocks k; ctx x : Nat, a : k";
  CHECK(subst_rejected_by(src, "clocks k; ctx y : Nat, b : k", "k -> k; y := x, b := a") == "");
  CHECK(subst_rejected_by(src, "clocks k; ctx y : Nat, b : k", "k -> k; y := x, b := x") ==
        "subst-tick");
  CHECK(subst_rejected_by(src, "clocks k; ctx y : Nat", "k -> k; y := 0") == "");
  CHECK(subst_rejected_by("clocks k; ctx x : Nat", "clocks k j; ctx y : Nat, b : j",
                          "k -> k, j -> k; y := x, b := <> k") == "");
  CHECK(subst_rejected_by("clocks k k2; ctx x : Nat", "clocks k k2 j; ctx y : Nat, b : j",
                          "k -> k, k2 -> k2, j -> k2; y := x, b := <> k") == "subst-diamond");
}

TEST_CASE("errors carry the judgement") {
  Source s = parse_file("clocks k; ctx x : Nat; x : Later k Nat");
  try {
    Checker().check(s.ctx, s.term, s.type);
    FAIL("accepted");
  } catch (const TypeError& e) {
    CHECK(e.rule == "conv");
    CHECK(e.judgement.find("Later k Nat") != std::string::npos);
    CHECK(e.to_json()["rule"] == "conv");
  }
}

TEST_CASE("derivations name their rules") {
  Source s = parse_file("clocks k; lam (x : Nat) tlam (a : k) x : Nat -> Later k Nat");
  Derivation d = Checker().check(s.ctx, s.term, s.type);
  std::string text = print(d);
  CHECK(text.find("tick-abs") != std::string::npos);
  CHECK(to_json(d).contains("rule"));
}
