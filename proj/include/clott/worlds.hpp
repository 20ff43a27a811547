#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace clott {

using json = nlohmann::json;

// semantic clocks are small ints, printed as l0, l1, ...
using SemClock = int;

struct TimeObj {
  std::map<SemClock, int> ticks;

  bool has(SemClock c) const { return ticks.count(c) != 0; }
  int at(SemClock c) const;
  SemClock fresh() const;
  size_t size() const { return ticks.size(); }
  bool operator==(const TimeObj&) const = default;
  bool operator<(const TimeObj& o) const { return ticks < o.ticks; }
};

struct World {
  TimeObj t;
  std::vector<std::string> delta;
  std::map<std::string, SemClock> f;

  SemClock of(const std::string& k) const;
  int ticks_of(const std::string& k) const { return t.at(of(k)); }
  bool has_clock(const std::string& k) const { return f.count(k) != 0; }
  std::set<std::string> fiber(SemClock c) const;
  bool operator==(const World&) const = default;
};

struct Morphism {
  TimeObj src, dst;
  std::map<SemClock, SemClock> map;

  SemClock operator()(SemClock c) const;
  bool valid() const;
  bool operator==(const Morphism&) const = default;
};

struct Truncation {
  int B = 3;
  int N = 3;
  int padding = 2;
};

struct WorldError : std::logic_error {
  using std::logic_error::logic_error;
};

Morphism identity(const TimeObj& t);
// g after f
Morphism compose(const Morphism& g, const Morphism& f);
bool is_world_morphism(const World& w, const World& w2, const Morphism& m);
World push(const World& w, const Morphism& m);  // (dst; m o f)

World tick_dec(const World& w, const std::string& k);

struct Advanced {
  World w;
  Morphism chi;
  SemClock sharp;
};
Advanced advance_world(const World& w, const std::set<std::string>& X,
                       const std::string& k);

// w -> (w[k-])[fiber,k+]
Morphism s_kappa(const World& w, const std::string& k);
// (w[X,k+])[k-] -> w
Morphism r_Xkappa(const World& w, const std::set<std::string>& X,
                  const std::string& k);
// Theta -> Theta,newClock with newClock at n
Morphism iota_incl(const TimeObj& t, SemClock newClock, int n);
Morphism rename(const TimeObj& t, SemClock a, SemClock b);
// Theta,sharp -> Theta collapsing sharp onto target
Morphism collapse(const TimeObj& t, SemClock sharp, SemClock target);

// f o nu for nu : delta2 -> delta
World reindex(const World& w, const std::vector<std::string>& delta2,
              const std::map<std::string, std::string>& nu);

std::vector<std::set<std::string>> tick_subsets(const World& w,
                                                const std::string& k);

std::vector<World> enumerate_worlds(const std::vector<std::string>& delta,
                                    const Truncation& tr);
std::vector<TimeObj> enumerate_time_objects(const Truncation& tr);
std::vector<Morphism> enumerate_morphisms(const World& w, const World& w2);
std::vector<Morphism> enumerate_morphisms(const TimeObj& a, const TimeObj& b);
// surjective maps onto canonical quotients, ticks anywhere below the bound
std::vector<Morphism> quotient_probes(const TimeObj& t, size_t cap);

World canonicalize(const World& w);

std::string clock_name(SemClock c);
SemClock parse_clock(const std::string& s);
json to_json(const TimeObj& t);
json to_json(const World& w);
json to_json(const Morphism& m);
World world_from_json(const json& j, const std::vector<std::string>& delta);
Morphism morphism_from_json(const json& j, const TimeObj& src,
                            const TimeObj& dst);
std::string show(const World& w);

}  // namespace clott
