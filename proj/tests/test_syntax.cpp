#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clott/harness.hpp"
#include "clott/syntax.hpp"

using namespace clott;

TEST_CASE("printing then parsing gives the same term") {
  for (auto& fx : typing_corpus()) {
    CAPTURE(fx.name);
    Source s = parse_file(fx.text);
    ExprP back = parse_expr(print(s.term), s.ctx);
    CHECK(alpha_eq(back, s.term));
    if (s.type) CHECK(alpha_eq(parse_expr(print(s.type), s.ctx), s.type));
    std::string clocks;
    for (auto& k : s.ctx.clocks) clocks += " " + k;
    Ctx c2 = parse_ctx("clocks" + clocks + "; ctx " + print(s.ctx));
    CHECK(c2.clocks == s.ctx.clocks);
    CHECK(c2.entries.size() == s.ctx.entries.size());
  }
}

TEST_CASE("arrows and later chains") {
  Ctx ctx = parse_ctx("clocks k;");
  ExprP A = parse_expr("Later k (Nat -> Nat) -> Later k Nat -> Later k Nat", ctx);
  REQUIRE(A->kind == Kind::Pi);
  CHECK(A->a->kind == Kind::Later);
  CHECK(A->a->b->kind == Kind::Pi);
  ExprP B = parse_expr("Later k Later k Nat", ctx);
  CHECK(B->b->kind == Kind::Later);
  CHECK(alpha_eq(parse_expr(print(A), ctx), A));
  CHECK(alpha_eq(parse_expr(print(B), ctx), B));
}

TEST_CASE("alpha equivalence") {
  ExprP a = parse_expr("lam (x : Nat) x");
  ExprP b = parse_expr("lam (y : Nat) y");
  ExprP c = parse_expr("lam (y : Nat) z");
  CHECK(alpha_eq(a, b));
  CHECK_FALSE(alpha_eq(a, c));
  CHECK(alpha_eq(parse_expr("tlam (a : k) f [a]"), parse_expr("tlam (b : k) f [b]")));
  CHECK(alpha_eq(parse_expr("clam c (xs [c])"), parse_expr("clam d (xs [d])")));
  CHECK_FALSE(alpha_eq(parse_expr("tlam (a : k) f [a]"), parse_expr("tlam (a : k2) f [a]")));
}

TEST_CASE("substitution avoids capture") {
  ExprP t = parse_expr("lam (y : Nat) pair x y");
  ExprP r = subst_var(t, "x", mk::var("y"));
  REQUIRE(r->kind == Kind::Lam);
  CHECK(r->name != "y");
  CHECK(free_vars(r) == std::set<std::string>{"y"});
  CHECK(alpha_eq(r, parse_expr("lam (z : Nat) pair y z")));
}

TEST_CASE("clock renaming avoids capture") {
  Ctx ctx = parse_ctx("clocks k c; ctx xs : Forall c Str[c]");
  ExprP t = parse_expr("clam c (xs [k])", ctx);
  ExprP r = rename_clock(t, "k", "c");
  CHECK(free_clocks(r) == std::set<std::string>{"c"});
  CHECK(alpha_eq(r, parse_expr("clam d (xs [c])", ctx)));
  CHECK(alpha_eq(rename_tick(parse_expr("x [a]"), "a", "b"), parse_expr("x [b]")));
}

TEST_CASE("free variables and clocks") {
  ExprP t = parse_expr("tlam (a : k) pair (x [a]) (dfix k2 f)");
  CHECK(free_vars(t) == std::set<std::string>{"x", "f"});
  CHECK(free_clocks(t) == std::set<std::string>{"k", "k2"});
  CHECK(occurs_free("x", t));
  CHECK_FALSE(occurs_free("a", t));
  CHECK(fresh_name("x", {"x", "x1"}) != "x");
}

TEST_CASE("scope and syntax errors") {
  Ctx ctx = parse_ctx("clocks k; ctx x : Nat");
  CHECK_THROWS_AS(parse_expr("y", ctx), ScopeError);
  CHECK_THROWS_AS(parse_expr("Later k2 Nat", ctx), ScopeError);
  CHECK_THROWS_AS(parse_expr("lam (x : Nat", ctx), SyntaxError);
  try {
    parse_file("clocks k;\n  pair 0 )");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("brackets resolve to tick or clock application") {
  Ctx ctx = parse_ctx("clocks k; ctx x : Later k Nat, xs : Forall c Str[c], a : k");
  CHECK(parse_expr("x [a]", ctx)->kind == Kind::TickApp);
  CHECK(parse_expr("xs [k]", ctx)->kind == Kind::ClockApp);
}

TEST_CASE("file header") {
  Source s = parse_file("clocks k k2; ctx x : Nat, a : k; x : Nat");
  CHECK(s.ctx.clocks == std::vector<std::string>{"k", "k2"});
  REQUIRE(s.ctx.entries.size() == 2);
  CHECK(s.ctx.entries[1].tick);
  CHECK(s.ctx.entries[1].clock == "k");
  REQUIRE(s.type);
  CHECK(s.type->kind == Kind::Nat);
  CHECK_FALSE(parse_file("clocks k; 0").type);
}

TEST_CASE("syntactic substitution acts on terms and ticks") {
  Ctx src = parse_ctx("clocks k; ctx g : Later k Nat, x : Nat, a : k");
  Ctx dst = parse_ctx("clocks k; ctx f : Later k Nat, y : Nat, b : k");
  SyntacticSubst s = parse_subst("k -> k; f := g, y := suc x, b := a", src, dst);
  ExprP t = parse_expr("tlam (c : k) pair y (f [b])", dst);
  ExprP r = apply_subst(t, s);
  CHECK(alpha_eq(r, parse_expr("tlam (c : k) pair (suc x) (g [a])", src)));
}

TEST_CASE("identity substitution and composition") {
  Ctx ctx = parse_ctx("clocks k; ctx x : Nat, a : k, y : Later k Nat");
  SyntacticSubst id = identity_subst(ctx);
  ExprP t = parse_expr("pair x (y [a])", ctx);
  CHECK(alpha_eq(apply_subst(t, id), t));
  SyntacticSubst twice = compose(id, id, ctx);
  CHECK(alpha_eq(apply_subst(t, twice), t));
}

TEST_CASE("weakening refuses captures") {
  Ctx ctx = parse_ctx("clocks k; ctx x : Nat");
  Ctx big = weaken_ctx(ctx, 1, Entry{false, "z", mk::nat(), ""});
  CHECK(big.entries.size() == 2);
  CHECK_THROWS(weaken(mk::var("x"), ctx, 0, Entry{false, "x", mk::nat(), ""}));
  CHECK(weaken_clock(ctx, "k2").has_clock("k2"));
}

TEST_CASE("stream sugar") {
  Ctx ctx = parse_ctx("clocks k;");
  ExprP s = parse_expr("Str[k]", ctx);
  CHECK(s->kind == Kind::Str);
  CHECK(print(s) == "Str[k]");
  CHECK(print(mk::num(3)) == "3");
}
