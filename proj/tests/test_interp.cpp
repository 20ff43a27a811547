#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clott/harness.hpp"
#include "clott/interp.hpp"

using namespace clott;

namespace {

World one_clock(int ticks) {
  return world_from_json(json{{"clocks", {{"l0", ticks}}}, {"valuation", {{"k", "l0"}}}}, {"k"});
}

// zeros seen at n ticks: n+1 heads, then the unit
json zeros_by_hand(int n) { return json::array({0, n == 0 ? json("*") : zeros_by_hand(n - 1)}); }

ValueP eval_closed(const std::string& text, const World& w) {
  Source s = parse_file(text);
  Checker().check(s.ctx, s.term, s.type);
  auto envs = ctx_elements(s.ctx, w);
  REQUIRE(envs.size() == 1);
  return eval(s.term, s.ctx, w, envs[0]);
}

}  // namespace

TEST_CASE("zeros unfolds to one head per tick") {
  configure(SuiteConfig{});
  std::string zeros = "clocks k; (lam (x : Later k Str[k]) pair 0 x) "
                      "(dfix k (lam (x : Later k Str[k]) pair 0 x)) : Str[k]";
  CHECK(to_json(eval_closed(zeros, one_clock(2))).dump() == "[0,[0,[0,\"*\"]]]");
  for (int n = 0; n <= 3; ++n)
    CHECK(to_json(eval_closed(zeros, one_clock(n))) == zeros_by_hand(n));
}

TEST_CASE("stream prefixes") {
  configure(SuiteConfig{});
  CHECK(stream_prefix(3) == std::vector<long>{0, 0, 0});
  CHECK(stream_prefix(0).empty());
  CHECK(stream_prefix(3, "nats") == std::vector<long>{0, 1, 2});
  CHECK_THROWS_AS(stream_prefix(config().trunc.N + 1), TruncationError);
}

TEST_CASE("recursion on naturals") {
  configure(SuiteConfig{});
  Ctx ctx = parse_ctx("clocks k;");
  ExprP dbl = parse_expr("lam (n : Nat) natrec 0 (lam (m : Nat) lam (r : Nat) suc (suc r)) n", ctx);
  World w = one_clock(1);
  for (int i = 0; i < 6; ++i) {
    ExprP t = mk::app(dbl, mk::num(i));
    ValueP v = eval(t, ctx, w, val::star());
    REQUIRE(v->kind == VK::Nat);
    CHECK(v->n == 2 * i);
  }
}

TEST_CASE("environment counts follow the context shape") {
  configure(SuiteConfig{});
  int nb = config().natBound;
  Ctx nat = parse_ctx("clocks k; ctx x : Nat");
  Ctx later = parse_ctx("clocks k; ctx x : Later k Nat");
  Ctx tick = parse_ctx("clocks k k2; ctx x : Nat, a : k");
  for (auto& w : enumerate_worlds({"k"}, Truncation{})) {
    CHECK(ctx_elements(nat, w).size() == size_t(nb));
    CHECK(ctx_elements(later, w).size() == (w.ticks_of("k") == 0 ? 1u : size_t(nb)));
  }
  for (auto& w : enumerate_worlds({"k", "k2"}, Truncation{})) {
    size_t subsets = w.of("k") == w.of("k2") ? 2 : 1;
    CHECK(ctx_elements(tick, w).size() == subsets * nb);
    for (auto& g : ctx_elements(tick, w)) CHECK(ctx_member(g, tick, w));
  }
}

TEST_CASE("typed terms evaluate into their types") {
  configure(SuiteConfig{});
  for (auto& name : {"next", "apply", "zeros", "zeros-delayed", "two-clock", "adv-next", "natrec"}) {
    CAPTURE(name);
    const TermFixture* fx = nullptr;
    for (auto& f : typing_corpus())
      if (f.name == name) fx = &f;
    REQUIRE(fx);
    Source s = parse_file(fx->text);
    for (auto& w : enumerate_worlds(s.ctx.clocks, Truncation{2, 2, 2}))
      for (auto& g : ctx_elements(s.ctx, w))
        CHECK(member(eval(s.term, s.ctx, w, g), s.type, s.ctx, w, g));
  }
}

TEST_CASE("membership rejects values of the wrong shape") {
  configure(SuiteConfig{});
  Ctx ctx = parse_ctx("clocks k;");
  World w = one_clock(1);
  CHECK(member(val::nat(2), mk::nat(), ctx, w, val::star()));
  CHECK_FALSE(member(val::star(), mk::nat(), ctx, w, val::star()));
  CHECK_FALSE(member(val::nat(1), parse_expr("Later k Nat", ctx), ctx, w, val::star()));
  CHECK(member(val::star(), parse_expr("Later k Nat", ctx), ctx, one_clock(0), val::star()));
}

TEST_CASE("tick layers project back to the prefix") {
  configure(SuiteConfig{});
  Ctx ctx = parse_ctx("clocks k; ctx x : Nat, a : k");
  for (auto& w : enumerate_worlds({"k"}, Truncation{})) {
    for (auto& g : ctx_elements(ctx, w)) {
      ValueP layer = project_layer(ctx, 1, w, g);
      REQUIRE(layer->kind == VK::Tick);
      CHECK(layer->X == std::set<std::string>{"k"});
    }
  }
}

TEST_CASE("diamond substitution puts the fresh clock one tick ahead") {
  configure(SuiteConfig{});
  Ctx ctx = parse_ctx("clocks k; ctx x : Nat");
  for (auto& w : enumerate_worlds({"k"}, Truncation{})) {
    for (auto& g : ctx_elements(ctx, w)) {
      ValueP d = diamond_subst("j", "k", w, g);
      REQUIRE(d->kind == VK::Tick);
      CHECK(d->X == std::set<std::string>{"j"});
      CHECK(d->clock == w.of("k"));
      CHECK(value_eq(d->a, g));
    }
  }
}

TEST_CASE("evaluation past the materialised bound is reported") {
  SuiteConfig cfg;
  cfg.trunc = Truncation{1, 1, 0};
  configure(cfg);
  CHECK_THROWS_AS(stream_prefix(3), TruncationError);
  configure(SuiteConfig{});
}
