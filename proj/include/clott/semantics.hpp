#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "clott/worlds.hpp"

namespace clott {

struct Value;
using ValueP = std::shared_ptr<const Value>;

enum class VK { Star, Nat, Pair, Refl, Later, Tick, Fam, Fn };

// Kripke closure living at w.  apply(tau, a): tau : w.t -> w'.t, a at w'.
struct FnData {
  World w;
  std::function<ValueP(const Morphism&, const ValueP&)> apply;
  std::function<std::vector<ValueP>(const Morphism&)> domain;  // sample arguments
};

// Component n lives at (base, sharp ; sharp -> n) with sharp = base.fresh().
struct FamData {
  TimeObj base;
  int bound = -1;  // -1: unbounded, generated on demand
  std::function<ValueP(int)> gen;
  mutable std::mutex mu;
  mutable std::map<int, ValueP> cache;

  ValueP at(int n) const;
};

struct Value {
  VK kind = VK::Star;
  long n = 0;
  ValueP a, b;
  std::set<std::string> X;  // Tick
  SemClock clock = 0;       // Later, Tick
  std::shared_ptr<FnData> fn;
  std::shared_ptr<FamData> fam;
};

struct SemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SemConfig {
  Truncation trunc;
  int natBound = 4;
  size_t probeCap = 6;
  size_t sampleCap = 4;
  size_t elemCap = 4096;
};

SemConfig& config();
int fam_limit();  // N + padding

namespace val {
ValueP star();
ValueP nat(long n);
ValueP pair(ValueP a, ValueP b);
ValueP refl();
ValueP later(SemClock c, ValueP payload);
ValueP tick(std::set<std::string> X, SemClock c, ValueP payload);
ValueP fam(TimeObj base, int bound, std::function<ValueP(int)> gen);
ValueP fn(World w, std::function<ValueP(const Morphism&, const ValueP&)> apply,
          std::function<std::vector<ValueP>(const Morphism&)> domain);
}  // namespace val

ValueP restrict(const ValueP& v, const Morphism& tau);
bool value_eq(const ValueP& a, const ValueP& b);
json to_json(const ValueP& v);
std::string show(const ValueP& v);

ValueP un_later(const ValueP& v);
ValueP fst(const ValueP& v);
ValueP snd(const ValueP& v);

// time object on which a Later payload lives, and the one under a Tick
TimeObj dec_at(const TimeObj& t, SemClock c);
TimeObj tick_base(const TimeObj& t, SemClock c);
// tau extended by fresh(src) -> fresh(dst), with the given tick counts
Morphism extend_fresh(const Morphism& tau, int srcTicks, int dstTicks);

// a presheaf given by its elements at each world; restriction is on values
struct Presheaf {
  std::string name;
  std::function<std::vector<ValueP>(const World&)> elements;
};

using SemMap = std::function<ValueP(const World&, const ValueP&)>;

Presheaf later(const std::string& k, const Presheaf& F);
Presheaf earlier(const std::string& k, const Presheaf& F);
// nu : delta2 -> w.delta ; (nu* F)(w) = F(w nu)
Presheaf reindex(const std::map<std::string, std::string>& nu,
                 const std::vector<std::string>& delta2, const Presheaf& F);

ValueP unit(const std::string& k, const World& w, const ValueP& g);
ValueP counit(const std::string& k, const World& w, const ValueP& x);
// functor actions
ValueP later_map(const std::string& k, const SemMap& phi, const World& w, const ValueP& v);
ValueP earlier_map(const std::string& k, const SemMap& phi, const World& w, const ValueP& v);

ValueP p_earlier(const std::string& k, const World& w, const ValueP& x);
ValueP next(const std::string& k, const World& w, const ValueP& g);

// e^{k,nu} : earlier^{nu k} nu* G -> nu* earlier^k G, at a delta world w
ValueP exchange(const std::map<std::string, std::string>& nu,
                const std::vector<std::string>& delta2, const std::string& k,
                const World& w, const ValueP& x);
ValueP exchange_abstract(const std::map<std::string, std::string>& nu,
                         const std::vector<std::string>& delta2, const std::string& k,
                         const World& w, const ValueP& x);

// a : earlier G -> A  gives  G -> later A, and back
SemMap transpose_fwd(const std::string& k, const SemMap& a);
SemMap transpose_bwd(const std::string& k, const SemMap& b);

// comparison later(G).later(A) -> later(G.A); identity away from zero ticks
ValueP zeta(const std::string& k, const World& w, const ValueP& v);

}  // namespace clott
