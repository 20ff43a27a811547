#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "clott/worlds.hpp"

using namespace clott;

namespace {

// brute force: labelled time objects of size <= B, every clock map, keyed up to renaming
size_t count_worlds_by_hand(const std::vector<std::string>& delta, const Truncation& tr) {
  using Key = std::vector<std::pair<int, std::vector<std::string>>>;
  std::set<Key> seen;
  for (int m = 1; m <= tr.B; ++m) {
    std::vector<int> ticks(m, 0);
    for (;;) {
      std::vector<int> f(delta.size(), 0);
      for (;;) {
        Key key(m);
        for (int c = 0; c < m; ++c) key[c].first = ticks[c];
        for (size_t i = 0; i < delta.size(); ++i) key[f[i]].second.push_back(delta[i]);
        std::sort(key.begin(), key.end());
        seen.insert(key);
        size_t i = 0;
        while (i < f.size() && ++f[i] == m) f[i++] = 0;
        if (i == f.size()) break;
      }
      int c = 0;
      while (c < m && ++ticks[c] > tr.N) ticks[c++] = 0;
      if (c == m) break;
    }
  }
  return seen.size();
}

World world(std::map<SemClock, int> ticks, std::vector<std::string> delta,
            std::map<std::string, SemClock> f) {
  return World{TimeObj{std::move(ticks)}, std::move(delta), std::move(f)};
}

}  // namespace

TEST_CASE("world counts match a brute force enumeration") {
  Truncation tr;
  CHECK(enumerate_worlds({"k"}, tr).size() == count_worlds_by_hand({"k"}, tr));
  CHECK(enumerate_worlds({"k", "k2"}, tr).size() == count_worlds_by_hand({"k", "k2"}, tr));
  CHECK(enumerate_worlds({"k"}, tr).size() == 60);
  CHECK(enumerate_worlds({"k", "k2"}, tr).size() == 140);

  Truncation small{2, 1, 2};
  CHECK(enumerate_worlds({"k", "k2", "k3"}, small).size() ==
        count_worlds_by_hand({"k", "k2", "k3"}, small));
}

TEST_CASE("enumerated worlds are canonical and distinct") {
  auto ws = enumerate_worlds({"k", "k2"}, Truncation{});
  std::set<std::string> shown;
  for (auto& w : ws) {
    CHECK(canonicalize(w) == w);
    shown.insert(show(w));
  }
  CHECK(shown.size() == ws.size());
}

TEST_CASE("canonicalize forgets clock names") {
  World a = world({{5, 2}, {9, 0}}, {"k"}, {{"k", 9}});
  World b = world({{0, 0}, {1, 2}}, {"k"}, {{"k", 0}});
  CHECK(canonicalize(a) == canonicalize(b));
  CHECK(canonicalize(a).ticks_of("k") == 0);
}

TEST_CASE("morphisms never increase ticks") {
  TimeObj a{{{0, 2}, {1, 1}}};
  TimeObj b{{{0, 1}, {1, 3}}};
  auto ms = enumerate_morphisms(a, b);
  // 0 can go to 0 only, 1 to 0 only
  REQUIRE(ms.size() == 1);
  CHECK(ms[0](0) == 0);
  CHECK(ms[0](1) == 0);
  for (auto& m : enumerate_morphisms(b, a)) CHECK(m.valid());

  Morphism bad{a, b, {{0, 1}, {1, 0}}};
  CHECK_FALSE(bad.valid());
}

TEST_CASE("world morphisms respect the clock map") {
  World w = world({{0, 2}, {1, 2}}, {"k", "k2"}, {{"k", 0}, {"k2", 1}});
  World merged = world({{0, 1}}, {"k", "k2"}, {{"k", 0}, {"k2", 0}});
  Morphism m{w.t, merged.t, {{0, 0}, {1, 0}}};
  CHECK(is_world_morphism(w, merged, m));
  CHECK(push(w, m) == merged);

  World apart = world({{0, 1}, {1, 1}}, {"k", "k2"}, {{"k", 0}, {"k2", 1}});
  Morphism swap{w.t, apart.t, {{0, 1}, {1, 0}}};
  CHECK_FALSE(is_world_morphism(w, apart, swap));
}

TEST_CASE("composition and identity") {
  TimeObj a{{{0, 3}}}, b{{{0, 2}, {1, 0}}}, c{{{0, 1}}};
  Morphism f{a, b, {{0, 0}}};
  Morphism g{b, c, {{0, 0}, {1, 0}}};
  Morphism gf = compose(g, f);
  CHECK(gf.valid());
  CHECK(gf(0) == 0);
  CHECK(compose(f, identity(a)) == f);
  CHECK(compose(identity(b), f) == f);
}

TEST_CASE("advancing a world adds a fresh clock one tick ahead") {
  World w = world({{0, 1}}, {"k", "k2"}, {{"k", 0}, {"k2", 0}});
  Advanced a = advance_world(w, {"k"}, "k");
  CHECK(a.w.ticks_of("k") == 2);
  CHECK(a.w.of("k2") == 0);
  CHECK(a.chi(a.sharp) == 0);
  CHECK(a.chi.valid());

  Advanced both = advance_world(w, {"k", "k2"}, "k");
  CHECK(both.w.of("k") == both.w.of("k2"));

  CHECK_THROWS_AS(advance_world(w, {"k2"}, "k"), WorldError);
  World apart = world({{0, 1}, {1, 1}}, {"k", "k2"}, {{"k", 0}, {"k2", 1}});
  CHECK_THROWS_AS(advance_world(apart, {"k", "k2"}, "k"), WorldError);
}

TEST_CASE("tick subsets contain the clock and stay in its fiber") {
  World w = world({{0, 1}, {1, 1}}, {"k", "k2", "k3"}, {{"k", 0}, {"k2", 0}, {"k3", 1}});
  auto xs = tick_subsets(w, "k");
  CHECK(xs.size() == 2);
  for (auto& X : xs) {
    CHECK(X.count("k"));
    CHECK_FALSE(X.count("k3"));
  }
}

TEST_CASE("decrement refuses zero") {
  World w = world({{0, 0}}, {"k"}, {{"k", 0}});
  CHECK_THROWS_AS(tick_dec(w, "k"), WorldError);
  World w1 = world({{0, 2}}, {"k"}, {{"k", 0}});
  CHECK(tick_dec(w1, "k").ticks_of("k") == 1);
}

TEST_CASE("s_kappa and r_Xkappa are valid morphisms") {
  for (auto& w : enumerate_worlds({"k", "k2"}, Truncation{})) {
    if (w.ticks_of("k") > 0) CHECK(s_kappa(w, "k").valid());
    for (auto& X : tick_subsets(w, "k")) CHECK(r_Xkappa(w, X, "k").valid());
  }
}

TEST_CASE("reindex composes the clock map") {
  World w = world({{0, 1}, {1, 3}}, {"k", "k2"}, {{"k", 0}, {"k2", 1}});
  World r = reindex(w, {"a", "b"}, {{"a", "k2"}, {"b", "k2"}});
  CHECK(r.delta == std::vector<std::string>{"a", "b"});
  CHECK(r.ticks_of("a") == 3);
  CHECK(r.of("a") == r.of("b"));
}

TEST_CASE("json round trip") {
  for (auto& w : enumerate_worlds({"k", "k2"}, Truncation{2, 2, 2})) {
    World back = world_from_json(to_json(w), w.delta);
    CHECK(back == w);
  }
  json j = json::parse(R"({"clocks":{"l0":2},"valuation":{"k":"l0"}})");
  World w = world_from_json(j, {"k"});
  CHECK(w.ticks_of("k") == 2);
  CHECK_THROWS(world_from_json(json::parse(R"({"clocks":{"l0":2},"valuation":{}})"), {"k"}));
  CHECK(clock_name(parse_clock("l7")) == "l7");
}
