#include "clott/semantics.hpp"

#include <algorithm>

namespace clott {

SemConfig& config() {
  static SemConfig c;
  return c;
}

int fam_limit() { return config().trunc.N + config().trunc.padding; }

ValueP FamData::at(int n) const {
  if (bound >= 0 && n > bound)
    throw TruncationError("clock family component " + std::to_string(n) +
                          " beyond materialised bound " + std::to_string(bound));
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  ValueP v = gen(n);
  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(n, v);
  return v;
}

namespace val {

namespace {
std::shared_ptr<Value> blank(VK k) {
  auto v = std::make_shared<Value>();
  v->kind = k;
  return v;
}
}  // namespace

ValueP star() {
  static ValueP s = blank(VK::Star);
  return s;
}
ValueP nat(long n) {
  auto v = blank(VK::Nat);
  v->n = n;
  return v;
}
ValueP pair(ValueP a, ValueP b) {
  auto v = blank(VK::Pair);
  v->a = std::move(a);
  v->b = std::move(b);
  return v;
}
ValueP refl() {
  static ValueP r = blank(VK::Refl);
  return r;
}
ValueP later(SemClock c, ValueP payload) {
  auto v = blank(VK::Later);
  v->clock = c;
  v->a = std::move(payload);
  return v;
}
ValueP tick(std::set<std::string> X, SemClock c, ValueP payload) {
  auto v = blank(VK::Tick);
  v->X = std::move(X);
  v->clock = c;
  v->a = std::move(payload);
  return v;
}
ValueP fam(TimeObj base, int bound, std::function<ValueP(int)> gen) {
  auto v = blank(VK::Fam);
  auto d = std::make_shared<FamData>();
  d->base = std::move(base);
  d->bound = bound;
  d->gen = std::move(gen);
  v->fam = d;
  return v;
}
ValueP fn(World w, std::function<ValueP(const Morphism&, const ValueP&)> apply,
          std::function<std::vector<ValueP>(const Morphism&)> domain) {
  auto v = blank(VK::Fn);
  v->fn = std::make_shared<FnData>(FnData{std::move(w), std::move(apply), std::move(domain)});
  return v;
}

}  // namespace val

TimeObj dec_at(const TimeObj& t, SemClock c) {
  TimeObj o = t;
  if (o.at(c) == 0) throw SemError("no tick left on " + clock_name(c));
  o.ticks[c] -= 1;
  return o;
}

TimeObj tick_base(const TimeObj& t, SemClock c) {
  TimeObj o = t;
  o.ticks[t.fresh()] = t.at(c) + 1;
  return o;
}

Morphism extend_fresh(const Morphism& tau, int srcTicks, int dstTicks) {
  Morphism m = tau;
  SemClock s = tau.src.fresh(), d = tau.dst.fresh();
  m.src.ticks[s] = srcTicks;
  m.dst.ticks[d] = dstTicks;
  m.map[s] = d;
  return m;
}

namespace {

bool is_identity(const Morphism& t) {
  if (!(t.src == t.dst)) return false;
  for (auto& [a, b] : t.map)
    if (a != b) return false;
  return true;
}

}  // namespace

ValueP restrict(const ValueP& v, const Morphism& tau) {
  if (is_identity(tau)) return v;
  switch (v->kind) {
    case VK::Star:
    case VK::Nat:
    case VK::Refl:
      return v;
    case VK::Pair:
      return val::pair(restrict(v->a, tau), restrict(v->b, tau));
    case VK::Later: {
      SemClock c = tau(v->clock);
      if (tau.dst.at(c) == 0) return val::star();
      Morphism inner{dec_at(tau.src, v->clock), dec_at(tau.dst, c), tau.map};
      return val::later(c, restrict(v->a, inner));
    }
    case VK::Tick: {
      SemClock c = tau(v->clock);
      Morphism inner = extend_fresh(tau, tau.src.at(v->clock) + 1, tau.dst.at(c) + 1);
      return val::tick(v->X, c, restrict(v->a, inner));
    }
    case VK::Fam: {
      auto old = v->fam;
      return val::fam(tau.dst, old->bound, [old, tau](int n) {
        return restrict(old->at(n), extend_fresh(tau, n, n));
      });
    }
    case VK::Fn: {
      auto old = v->fn;
      if (!(old->w.t == tau.src)) throw SemError("restricting a closure along a foreign morphism");
      return val::fn(
          push(old->w, tau),
          [old, tau](const Morphism& s, const ValueP& a) { return old->apply(compose(s, tau), a); },
          [old, tau](const Morphism& s) { return old->domain(compose(s, tau)); });
    }
  }
  return v;
}

namespace {
thread_local int fn_depth = 0;
}

bool value_eq(const ValueP& a, const ValueP& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case VK::Star:
    case VK::Refl:
      return true;
    case VK::Nat:
      return a->n == b->n;
    case VK::Pair:
      return value_eq(a->a, b->a) && value_eq(a->b, b->b);
    case VK::Later:
      return a->clock == b->clock && value_eq(a->a, b->a);
    case VK::Tick:
      return a->X == b->X && a->clock == b->clock && value_eq(a->a, b->a);
    case VK::Fam: {
      int hi = config().trunc.N;
      if (a->fam->bound >= 0) hi = std::min(hi, a->fam->bound);
      if (b->fam->bound >= 0) hi = std::min(hi, b->fam->bound);
      if (!(a->fam->base == b->fam->base)) return false;
      for (int n = 0; n <= hi; ++n)
        if (!value_eq(a->fam->at(n), b->fam->at(n))) return false;
      return true;
    }
    case VK::Fn: {
      if (!(a->fn->w.t == b->fn->w.t)) return false;
      std::vector<Morphism> probes;
      if (fn_depth == 0)
        probes = quotient_probes(a->fn->w.t, config().probeCap);
      else
        probes = {identity(a->fn->w.t)};
      ++fn_depth;
      struct Guard {
        ~Guard() { --fn_depth; }
      } g;
      for (auto& p : probes) {
        auto args = a->fn->domain(p);
        size_t cap = fn_depth > 1 ? 2 : config().sampleCap;
        if (args.size() > cap) args.resize(cap);
        for (auto& x : args)
          if (!value_eq(a->fn->apply(p, x), b->fn->apply(p, x))) return false;
      }
      return true;
    }
  }
  return false;
}

json to_json(const ValueP& v) {
  switch (v->kind) {
    case VK::Star: return "*";
    case VK::Nat: return v->n;
    case VK::Refl: return "refl";
    case VK::Pair: return json::array({to_json(v->a), to_json(v->b)});
    case VK::Later: return to_json(v->a);
    case VK::Tick: {
      json X = json::array();
      for (auto& x : v->X) X.push_back(x);
      return {{"X", X}, {"val", to_json(v->a)}};
    }
    case VK::Fam: {
      int hi = config().trunc.N;
      if (v->fam->bound >= 0) hi = std::min(hi, v->fam->bound);
      json o = json::object();
      for (int n = 0; n <= hi; ++n) o[std::to_string(n)] = to_json(v->fam->at(n));
      return {{"omega", o}};
    }
    case VK::Fn: return "<fn>";
  }
  return nullptr;
}

std::string show(const ValueP& v) { return to_json(v).dump(); }

ValueP un_later(const ValueP& v) {
  if (v->kind != VK::Later) throw SemError("expected a delayed value, got " + show(v));
  return v->a;
}

ValueP fst(const ValueP& v) {
  if (v->kind != VK::Pair) throw SemError("fst of a non-pair " + show(v));
  return v->a;
}

ValueP snd(const ValueP& v) {
  if (v->kind != VK::Pair) throw SemError("snd of a non-pair " + show(v));
  return v->b;
}

// ---------------------------------------------------------------- presheaves

Presheaf later(const std::string& k, const Presheaf& F) {
  return {"later " + k + " " + F.name, [k, F](const World& w) {
            if (w.ticks_of(k) == 0) return std::vector<ValueP>{val::star()};
            std::vector<ValueP> out;
            for (auto& x : F.elements(tick_dec(w, k))) out.push_back(val::later(w.of(k), x));
            return out;
          }};
}

Presheaf earlier(const std::string& k, const Presheaf& F) {
  return {"earlier " + k + " " + F.name, [k, F](const World& w) {
            std::vector<ValueP> out;
            for (auto& X : tick_subsets(w, k)) {
              Advanced a = advance_world(w, X, k);
              for (auto& g : F.elements(a.w)) out.push_back(val::tick(X, w.of(k), g));
            }
            return out;
          }};
}

Presheaf reindex(const std::map<std::string, std::string>& nu,
                 const std::vector<std::string>& delta2, const Presheaf& F) {
  return {"reindex " + F.name,
          [nu, delta2, F](const World& w) { return F.elements(reindex(w, delta2, nu)); }};
}

ValueP unit(const std::string& k, const World& w, const ValueP& g) {
  if (w.ticks_of(k) == 0) return val::star();
  SemClock c = w.of(k);
  return val::later(c, val::tick(w.fiber(c), c, restrict(g, s_kappa(w, k))));
}

ValueP counit(const std::string& k, const World& w, const ValueP& x) {
  if (x->kind != VK::Tick) throw SemError("counit expects a tick element");
  return restrict(un_later(x->a), r_Xkappa(w, x->X, k));
}

ValueP later_map(const std::string& k, const SemMap& phi, const World& w, const ValueP& v) {
  if (w.ticks_of(k) == 0) return val::star();
  return val::later(w.of(k), phi(tick_dec(w, k), un_later(v)));
}

ValueP earlier_map(const std::string& k, const SemMap& phi, const World& w, const ValueP& v) {
  if (v->kind != VK::Tick) throw SemError("expected a tick element");
  return val::tick(v->X, v->clock, phi(advance_world(w, v->X, k).w, v->a));
}

ValueP p_earlier(const std::string& k, const World& w, const ValueP& x) {
  if (x->kind != VK::Tick) throw SemError("expected a tick element");
  return restrict(x->a, advance_world(w, x->X, k).chi);
}

ValueP next(const std::string& k, const World& w, const ValueP& g) {
  if (w.ticks_of(k) == 0) return val::star();
  SemClock c = w.of(k);
  Morphism m = identity(w.t);
  m.dst = dec_at(w.t, c);
  return val::later(c, restrict(g, m));
}

ValueP exchange(const std::map<std::string, std::string>& nu,
                const std::vector<std::string>& delta2, const std::string&, const World&,
                const ValueP& x) {
  if (x->kind != VK::Tick) throw SemError("expected a tick element");
  std::set<std::string> Y;
  for (auto& k : delta2)
    if (x->X.count(nu.at(k))) Y.insert(k);
  return val::tick(Y, x->clock, x->a);
}

ValueP exchange_abstract(const std::map<std::string, std::string>& nu,
                         const std::vector<std::string>& delta2, const std::string& k,
                         const World& w, const ValueP& x) {
  if (x->kind != VK::Tick) throw SemError("expected a tick element");
  const std::string& nk = nu.at(k);
  World up = reindex(advance_world(w, x->X, nk).w, delta2, nu);
  ValueP inner = unit(k, up, x->a);
  return counit(nk, w, val::tick(x->X, x->clock, inner));
}

SemMap transpose_fwd(const std::string& k, const SemMap& a) {
  return [k, a](const World& w, const ValueP& g) -> ValueP {
    if (w.ticks_of(k) == 0) return val::star();
    SemClock c = w.of(k);
    return val::later(c, a(tick_dec(w, k), val::tick(w.fiber(c), c, restrict(g, s_kappa(w, k)))));
  };
}

SemMap transpose_bwd(const std::string& k, const SemMap& b) {
  return [k, b](const World& w, const ValueP& x) -> ValueP {
    if (x->kind != VK::Tick) throw SemError("expected a tick element");
    Advanced adv = advance_world(w, x->X, k);
    return restrict(un_later(b(adv.w, x->a)), r_Xkappa(w, x->X, k));
  };
}

ValueP zeta(const std::string& k, const World& w, const ValueP& v) {
  if (w.ticks_of(k) == 0) return val::star();
  return val::later(w.of(k), val::pair(un_later(fst(v)), un_later(snd(v))));
}

}  // namespace clott
