#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clott/semantics.hpp"

using namespace clott;

namespace {

Presheaf nats(int bound) {
  return {"Nat", [bound](const World&) {
            std::vector<ValueP> out;
            for (int i = 0; i < bound; ++i) out.push_back(val::nat(i));
            return out;
          }};
}

size_t fiber_size(const World& w, const std::string& k) { return w.fiber(w.of(k)).size(); }

}  // namespace

TEST_CASE("later has one element at zero ticks and copies the payload otherwise") {
  Presheaf L = later("k", nats(4));
  for (auto& w : enumerate_worlds({"k", "k2"}, Truncation{})) {
    size_t expect = w.ticks_of("k") == 0 ? 1 : 4;
    CHECK(L.elements(w).size() == expect);
  }
  Presheaf LL = later("k", later("k", nats(4)));
  for (auto& w : enumerate_worlds({"k"}, Truncation{})) {
    size_t expect = w.ticks_of("k") <= 1 ? 1 : 4;
    CHECK(LL.elements(w).size() == expect);
  }
}

TEST_CASE("earlier splits by tick subsets of the fiber") {
  Presheaf E = earlier("k", nats(3));
  for (auto& w : enumerate_worlds({"k", "k2"}, Truncation{})) {
    size_t subsets = size_t(1) << (fiber_size(w, "k") - 1);
    CHECK(E.elements(w).size() == subsets * 3);
  }
}

TEST_CASE("restriction is functorial on later values") {
  Truncation tr{2, 2, 2};
  Presheaf L = later("k", later("k", nats(2)));
  for (auto& w : enumerate_worlds({"k"}, tr)) {
    for (auto& t2 : enumerate_time_objects(tr)) {
      for (auto& f : enumerate_morphisms(w.t, t2)) {
        for (auto& t3 : enumerate_time_objects(tr)) {
          for (auto& g : enumerate_morphisms(t2, t3)) {
            for (auto& v : L.elements(w)) {
              ValueP a = restrict(v, compose(g, f));
              ValueP b = restrict(restrict(v, f), g);
              CHECK(value_eq(a, b));
            }
          }
        }
      }
      for (auto& v : L.elements(w)) CHECK(value_eq(restrict(v, identity(w.t)), v));
    }
  }
}

TEST_CASE("restriction keeps the tick set") {
  World w{TimeObj{{{0, 1}}}, {"k", "k2"}, {{"k", 0}, {"k2", 0}}};
  ValueP x = val::tick({"k"}, 0, val::nat(2));
  TimeObj t2{{{0, 0}}};
  Morphism m{w.t, t2, {{0, 0}}};
  ValueP r = restrict(x, m);
  REQUIRE(r->kind == VK::Tick);
  CHECK(r->X == std::set<std::string>{"k"});
}

TEST_CASE("restricting a later value to zero ticks gives the unit") {
  ValueP v = val::later(0, val::nat(1));
  Morphism m{TimeObj{{{0, 1}}}, TimeObj{{{0, 0}}}, {{0, 0}}};
  CHECK(restrict(v, m)->kind == VK::Star);
}

TEST_CASE("next at zero ticks is the unit") {
  World w{TimeObj{{{0, 0}}}, {"k"}, {{"k", 0}}};
  CHECK(next("k", w, val::nat(3))->kind == VK::Star);
  World w1{TimeObj{{{0, 2}}}, {"k"}, {{"k", 0}}};
  ValueP n = next("k", w1, val::nat(3));
  REQUIRE(n->kind == VK::Later);
  CHECK(value_eq(un_later(n), val::nat(3)));
}

TEST_CASE("counit on a constant family forgets the tick") {
  for (auto& w : enumerate_worlds({"k", "k2"}, Truncation{})) {
    for (auto& X : tick_subsets(w, "k")) {
      Advanced a = advance_world(w, X, "k");
      for (int i = 0; i < 3; ++i) {
        ValueP x = val::tick(X, w.of("k"), val::later(a.sharp, val::nat(i)));
        CHECK(value_eq(counit("k", w, x), val::nat(i)));
      }
    }
  }
}

TEST_CASE("exchange renames the tick set") {
  ValueP x = val::tick({"k"}, 0, val::nat(1));
  ValueP e = exchange({{"a", "k"}, {"b", "k"}, {"c", "k2"}}, {"a", "b", "c"}, "a",
                      World{}, x);
  CHECK(e->X == std::set<std::string>{"a", "b"});
  CHECK(value_eq(e->a, val::nat(1)));
}

TEST_CASE("value equality") {
  CHECK(value_eq(val::pair(val::nat(1), val::star()), val::pair(val::nat(1), val::star())));
  CHECK_FALSE(value_eq(val::nat(1), val::nat(2)));
  CHECK_FALSE(value_eq(val::tick({"k"}, 0, val::star()), val::tick({"k", "k2"}, 0, val::star())));
  ValueP f1 = val::fam(TimeObj{}, -1, [](int n) { return val::nat(n); });
  ValueP f2 = val::fam(TimeObj{}, -1, [](int n) { return val::nat(n); });
  ValueP f3 = val::fam(TimeObj{}, -1, [](int n) { return val::nat(n == 2 ? 7 : n); });
  CHECK(value_eq(f1, f2));
  CHECK_FALSE(value_eq(f1, f3));
  CHECK(to_json(val::pair(val::nat(0), val::star())).dump() == "[0,\"*\"]");
}

TEST_CASE("transposition round trip on a constant family") {
  SemMap a = [](const World&, const ValueP& x) { return x->a; };
  SemMap b = transpose_fwd("k", a);
  SemMap back = transpose_bwd("k", b);
  Presheaf E = earlier("k", nats(2));
  for (auto& w : enumerate_worlds({"k"}, Truncation{})) {
    for (auto& x : E.elements(w)) CHECK(value_eq(back(w, x), a(w, x)));
  }
}
