#include "clott/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace clott {

namespace {

ExprP node(Kind k, std::string name = {}, std::string clock = {}, ExprP a = nullptr,
           ExprP b = nullptr, ExprP c = nullptr, std::string clock2 = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->name = std::move(name);
  e->clock = std::move(clock);
  e->clock2 = std::move(clock2);
  e->a = std::move(a);
  e->b = std::move(b);
  e->c = std::move(c);
  return e;
}

}  // namespace

namespace mk {
ExprP var(const std::string& x) { return node(Kind::Var, x); }
ExprP lam(const std::string& x, ExprP A, ExprP body) { return node(Kind::Lam, x, {}, A, body); }
ExprP app(ExprP f, ExprP u) { return node(Kind::App, {}, {}, f, u); }
ExprP pair(ExprP a, ExprP b) { return node(Kind::Pair, {}, {}, a, b); }
ExprP fst(ExprP a) { return node(Kind::Fst, {}, {}, a); }
ExprP snd(ExprP a) { return node(Kind::Snd, {}, {}, a); }
ExprP refl(ExprP a) { return node(Kind::Refl, {}, {}, a); }
ExprP zero() { return node(Kind::Zero); }
ExprP suc(ExprP a) { return node(Kind::Suc, {}, {}, a); }
ExprP num(int n) {
  ExprP e = zero();
  while (n-- > 0) e = suc(e);
  return e;
}
ExprP natrec(ExprP z, ExprP s, ExprP n) { return node(Kind::NatRec, {}, {}, z, s, n); }
ExprP tlam(const std::string& a, const std::string& k, ExprP body) {
  return node(Kind::TickLam, a, k, nullptr, body);
}
ExprP tapp(ExprP t, const std::string& a) { return node(Kind::TickApp, a, {}, t); }
ExprP diamond(ExprP s, const std::string& k, const std::string& target) {
  return node(Kind::DiamondApp, {}, k, s, nullptr, nullptr, target);
}
ExprP clam(const std::string& k, ExprP body) { return node(Kind::ClockLam, {}, k, nullptr, body); }
ExprP capp(ExprP t, const std::string& k) { return node(Kind::ClockApp, {}, k, t); }
ExprP dfix(const std::string& k, ExprP t) { return node(Kind::Dfix, {}, k, t); }
ExprP cirr(ExprP t) { return node(Kind::Cirr, {}, {}, t); }
ExprP tirr(const std::string& k, ExprP t) { return node(Kind::Tirr, {}, k, t); }
ExprP nat() { return node(Kind::Nat); }
ExprP pi(const std::string& x, ExprP A, ExprP B) { return node(Kind::Pi, x, {}, A, B); }
ExprP arrow(ExprP A, ExprP B) { return pi("_", A, B); }
ExprP sigma(const std::string& x, ExprP A, ExprP B) { return node(Kind::Sigma, x, {}, A, B); }
ExprP id(ExprP A, ExprP t, ExprP u) { return node(Kind::Id, {}, {}, A, t, u); }
ExprP later(const std::string& a, const std::string& k, ExprP A) {
  return node(Kind::Later, a, k, nullptr, A);
}
ExprP later(const std::string& k, ExprP A) { return later("_", k, A); }
ExprP forall(const std::string& k, ExprP A) { return node(Kind::Forall, {}, k, nullptr, A); }
ExprP str(const std::string& k) { return node(Kind::Str, {}, k); }
ExprP lift(const std::string& k, const std::string& x, ExprP P, ExprP t) {
  return node(Kind::Lift, x, k, P, t);
}
}  // namespace mk

bool Ctx::has_clock(const std::string& k) const {
  return std::find(clocks.begin(), clocks.end(), k) != clocks.end();
}

const Entry* Ctx::find(const std::string& n) const {
  for (auto it = entries.rbegin(); it != entries.rend(); ++it)
    if (it->name == n) return &*it;
  return nullptr;
}

int Ctx::index_of(const std::string& n) const {
  for (int i = (int)entries.size() - 1; i >= 0; --i)
    if (entries[i].name == n) return i;
  return -1;
}

Ctx Ctx::prefix(size_t n) const {
  Ctx c{clocks, {}};
  c.entries.assign(entries.begin(), entries.begin() + std::min(n, entries.size()));
  return c;
}

Ctx Ctx::with(const Entry& e) const {
  Ctx c = *this;
  c.entries.push_back(e);
  return c;
}

Ctx Ctx::with_clock(const std::string& k) const {
  Ctx c = *this;
  c.clocks.push_back(k);
  return c;
}

std::set<std::string> Ctx::names() const {
  std::set<std::string> s;
  for (auto& e : entries) s.insert(e.name);
  return s;
}

// ---------------------------------------------------------------- free names

namespace {

void fv(const ExprP& e, std::set<std::string>& bound, std::set<std::string>& out) {
  if (!e) return;
  auto under = [&](const std::string& x, const ExprP& body) {
    bool had = bound.count(x);
    bound.insert(x);
    fv(body, bound, out);
    if (!had) bound.erase(x);
  };
  switch (e->kind) {
    case Kind::Var:
      if (!bound.count(e->name)) out.insert(e->name);
      return;
    case Kind::TickApp:
    case Kind::Bracket:
      fv(e->a, bound, out);
      if (!bound.count(e->name)) out.insert(e->name);
      return;
    case Kind::Lam:
    case Kind::Pi:
    case Kind::Sigma:
      fv(e->a, bound, out);
      under(e->name, e->b);
      return;
    case Kind::TickLam:
    case Kind::Later:
      under(e->name, e->b);
      return;
    case Kind::Lift:
      under(e->name, e->a);
      fv(e->b, bound, out);
      return;
    default:
      fv(e->a, bound, out);
      fv(e->b, bound, out);
      fv(e->c, bound, out);
  }
}

void fc(const ExprP& e, std::set<std::string>& bound, std::set<std::string>& out) {
  if (!e) return;
  auto ref = [&](const std::string& k) {
    if (!k.empty() && !bound.count(k)) out.insert(k);
  };
  auto under = [&](const std::string& k, const ExprP& body) {
    bool had = bound.count(k);
    bound.insert(k);
    fc(body, bound, out);
    if (!had) bound.erase(k);
  };
  switch (e->kind) {
    case Kind::ClockLam:
    case Kind::Forall:
      under(e->clock, e->b);
      return;
    case Kind::DiamondApp:
      under(e->clock, e->a);
      ref(e->clock2);
      return;
    case Kind::Bracket:
      fc(e->a, bound, out);
      return;
    case Kind::TickLam:
    case Kind::Later:
    case Kind::ClockApp:
    case Kind::Dfix:
    case Kind::Tirr:
    case Kind::Str:
    case Kind::Lift:
      ref(e->clock);
      [[fallthrough]];
    default:
      fc(e->a, bound, out);
      fc(e->b, bound, out);
      fc(e->c, bound, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const ExprP& e) {
  std::set<std::string> b, out;
  fv(e, b, out);
  return out;
}

std::set<std::string> free_clocks(const ExprP& e) {
  std::set<std::string> b, out;
  fc(e, b, out);
  return out;
}

bool occurs_free(const std::string& x, const ExprP& e) { return free_vars(e).count(x) != 0; }

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit((unsigned char)stem.back())) stem.pop_back();
  if (stem.empty() || stem == "_") stem = "x";
  if (!avoid.count(stem) && stem != base) return stem;
  for (int i = 1;; ++i) {
    std::string s = stem + std::to_string(i);
    if (!avoid.count(s)) return s;
  }
}

// ---------------------------------------------------------------- substitution

namespace {

struct Sub {
  RawSubst s;
  std::set<std::string> avoid;   // names in the range
  std::set<std::string> cavoid;  // clocks in the range
};

Sub prepare(const RawSubst& r) {
  Sub s{r, {}, {}};
  for (auto& [x, t] : r.vars) {
    for (auto& n : free_vars(t)) s.avoid.insert(n);
    for (auto& k : free_clocks(t)) s.cavoid.insert(k);
  }
  for (auto& [a, im] : r.ticks) {
    if (im.diamond) {
      s.cavoid.insert(im.target);
    } else {
      s.avoid.insert(im.tick);
    }
  }
  for (auto& [k, v] : r.clocks) s.cavoid.insert(v);
  return s;
}

ExprP go(const ExprP& e, const Sub& s);

// var or tick binder; returns the new binder name and the inner substitution
std::pair<std::string, Sub> bind_name(const std::string& x, bool isTick, const Sub& s,
                                      std::initializer_list<ExprP> bodies) {
  Sub in = s;
  in.s.vars.erase(x);
  in.s.ticks.erase(x);
  if (x == "_" || !s.avoid.count(x)) return {x, in};
  std::set<std::string> av = s.avoid;
  for (auto& b : bodies)
    for (auto& n : free_vars(b)) av.insert(n);
  for (auto& [k, _] : s.s.vars) av.insert(k);
  for (auto& [k, _] : s.s.ticks) av.insert(k);
  std::string y = fresh_name(x, av);
  if (isTick)
    in.s.ticks[x] = TickImage{false, y, {}, {}};
  else
    in.s.vars[x] = mk::var(y);
  in.avoid.insert(y);
  return {y, in};
}

std::pair<std::string, Sub> bind_clock(const std::string& k, const Sub& s, const ExprP& body) {
  Sub in = s;
  in.s.clocks.erase(k);
  if (!s.cavoid.count(k)) return {k, in};
  std::set<std::string> av = s.cavoid;
  for (auto& c : free_clocks(body)) av.insert(c);
  for (auto& [c, _] : s.s.clocks) av.insert(c);
  std::string k2 = fresh_name(k, av);
  in.s.clocks[k] = k2;
  in.cavoid.insert(k2);
  return {k2, in};
}

std::string cl(const std::string& k, const Sub& s) {
  auto it = s.s.clocks.find(k);
  return it == s.s.clocks.end() ? k : it->second;
}

ExprP go(const ExprP& e, const Sub& s) {
  if (!e) return e;
  auto rebuild = [&](ExprP a, ExprP b, ExprP c) {
    auto n = std::make_shared<Expr>(*e);
    n->a = a;
    n->b = b;
    n->c = c;
    return ExprP(n);
  };
  switch (e->kind) {
    case Kind::Var: {
      auto it = s.s.vars.find(e->name);
      return it == s.s.vars.end() ? e : it->second;
    }
    case Kind::Lam:
    case Kind::Pi:
    case Kind::Sigma: {
      auto [y, in] = bind_name(e->name, false, s, {e->b});
      auto n = std::make_shared<Expr>(*e);
      n->name = y;
      n->a = go(e->a, s);
      n->b = go(e->b, in);
      return n;
    }
    case Kind::TickLam:
    case Kind::Later: {
      auto [y, in] = bind_name(e->name, true, s, {e->b});
      auto n = std::make_shared<Expr>(*e);
      n->name = y;
      n->clock = cl(e->clock, s);
      n->b = go(e->b, in);
      return n;
    }
    case Kind::Lift: {
      auto [y, in] = bind_name(e->name, false, s, {e->a});
      auto n = std::make_shared<Expr>(*e);
      n->name = y;
      n->clock = cl(e->clock, s);
      n->a = go(e->a, in);
      n->b = go(e->b, s);
      return n;
    }
    case Kind::TickApp: {
      auto it = s.s.ticks.find(e->name);
      if (it == s.s.ticks.end()) return rebuild(go(e->a, s), nullptr, nullptr);
      if (!it->second.diamond) {
        auto n = std::make_shared<Expr>(*e);
        n->a = go(e->a, s);
        n->name = it->second.tick;
        return n;
      }
      // t[a] with a |-> diamond: the witness keeps its own copy of the clock
      const TickImage& im = it->second;
      Sub in = s;
      std::string kf = im.clock;
      if (s.cavoid.count(kf)) {
        std::set<std::string> av = s.cavoid;
        for (auto& c : free_clocks(e->a)) av.insert(c);
        kf = fresh_name(kf, av);
      }
      in.s.clocks[im.clock] = kf;
      in.cavoid.insert(kf);
      return mk::diamond(go(e->a, in), kf, im.target);
    }
    case Kind::Bracket:
      return rebuild(go(e->a, s), nullptr, nullptr);
    case Kind::ClockLam:
    case Kind::Forall: {
      auto [k2, in] = bind_clock(e->clock, s, e->b);
      auto n = std::make_shared<Expr>(*e);
      n->clock = k2;
      n->b = go(e->b, in);
      return n;
    }
    case Kind::DiamondApp: {
      auto [k2, in] = bind_clock(e->clock, s, e->a);
      auto n = std::make_shared<Expr>(*e);
      n->clock = k2;
      n->clock2 = cl(e->clock2, s);
      n->a = go(e->a, in);
      return n;
    }
    case Kind::ClockApp:
    case Kind::Dfix:
    case Kind::Tirr:
    case Kind::Str: {
      auto n = std::make_shared<Expr>(*e);
      n->clock = cl(e->clock, s);
      n->a = go(e->a, s);
      return n;
    }
    default:
      return rebuild(go(e->a, s), go(e->b, s), go(e->c, s));
  }
}

}  // namespace

ExprP subst(const ExprP& e, const RawSubst& s) {
  if (s.vars.empty() && s.ticks.empty() && s.clocks.empty()) return e;
  return go(e, prepare(s));
}

ExprP subst_var(const ExprP& e, const std::string& x, ExprP u) {
  RawSubst s;
  s.vars[x] = std::move(u);
  return subst(e, s);
}

ExprP rename_tick(const ExprP& e, const std::string& from, const std::string& to) {
  if (from == to) return e;
  RawSubst s;
  s.ticks[from] = TickImage{false, to, {}, {}};
  return subst(e, s);
}

ExprP rename_clock(const ExprP& e, const std::string& from, const std::string& to) {
  if (from == to) return e;
  RawSubst s;
  s.clocks[from] = to;
  return subst(e, s);
}

RawSubst to_raw(const SyntacticSubst& s) {
  RawSubst r;
  r.clocks = s.nu;
  for (auto& b : s.bindings) {
    switch (b.kind) {
      case Binding::Term:
        r.vars[b.name] = b.term;
        break;
      case Binding::Tick:
        r.ticks[b.name] = TickImage{false, b.tick, {}, {}};
        break;
      case Binding::Diamond: {
        auto it = s.nu.find(b.target);
        if (it == s.nu.end()) throw SubstError("diamond target " + b.target + " outside the clock map");
        r.ticks[b.name] = TickImage{true, {}, b.clock, it->second};
        break;
      }
    }
  }
  return r;
}

ExprP apply_subst(const ExprP& e, const SyntacticSubst& s) {
  // clocks bound by the target are part of nu, so a plain raw pass is enough
  return go(e, prepare(to_raw(s)));
}

SyntacticSubst identity_subst(const Ctx& c) {
  SyntacticSubst s;
  for (auto& k : c.clocks) s.nu[k] = k;
  for (auto& e : c.entries) {
    Binding b;
    b.name = e.name;
    if (e.tick) {
      b.kind = Binding::Tick;
      b.tick = e.name;
    } else {
      b.kind = Binding::Term;
      b.term = mk::var(e.name);
    }
    s.bindings.push_back(b);
  }
  return s;
}

SyntacticSubst compose(const SyntacticSubst& outer, const SyntacticSubst& inner,
                       const Ctx& mid) {
  SyntacticSubst out;
  for (auto& [k, v] : inner.nu) {
    auto it = outer.nu.find(v);
    if (it == outer.nu.end()) throw SubstError("compose: clock " + v + " not mapped");
    out.nu[k] = it->second;
  }
  std::map<std::string, const Binding*> ob;
  for (auto& b : outer.bindings) ob[b.name] = &b;
  for (auto& b : inner.bindings) {
    Binding n = b;
    if (b.kind == Binding::Term) {
      n.term = apply_subst(b.term, outer);
    } else if (b.kind == Binding::Tick) {
      auto it = ob.find(b.tick);
      if (it == ob.end() || !mid.find(b.tick))
        throw SubstError("compose: tick " + b.tick + " not covered");
      if (it->second->kind != Binding::Tick)
        throw SubstError("compose: tick " + b.tick + " sent to diamond");
      n.tick = it->second->tick;
    }
    out.bindings.push_back(n);
  }
  return out;
}

// ---------------------------------------------------------------- alpha

namespace {

struct AEnv {
  std::map<std::string, int> l, r, cl, cr;
  int depth = 0;
};

bool name_eq(const std::string& x, const std::string& y, const std::map<std::string, int>& l,
             const std::map<std::string, int>& r) {
  auto a = l.find(x);
  auto b = r.find(y);
  if (a == l.end() && b == r.end()) return x == y;
  if (a == l.end() || b == r.end()) return false;
  return a->second == b->second;
}

bool aeq(const ExprP& a, const ExprP& b, const AEnv& env) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  auto bindN = [&](const std::string& x, const std::string& y) {
    AEnv n = env;
    n.depth++;
    n.l[x] = n.depth;
    n.r[y] = n.depth;
    return n;
  };
  auto bindC = [&](const std::string& x, const std::string& y) {
    AEnv n = env;
    n.depth++;
    n.cl[x] = n.depth;
    n.cr[y] = n.depth;
    return n;
  };
  auto ceq = [&](const std::string& x, const std::string& y) {
    return name_eq(x, y, env.cl, env.cr);
  };
  switch (a->kind) {
    case Kind::Var:
      return name_eq(a->name, b->name, env.l, env.r);
    case Kind::Lam:
    case Kind::Pi:
    case Kind::Sigma:
      return aeq(a->a, b->a, env) && aeq(a->b, b->b, bindN(a->name, b->name));
    case Kind::TickLam:
    case Kind::Later:
      return ceq(a->clock, b->clock) && aeq(a->b, b->b, bindN(a->name, b->name));
    case Kind::Lift:
      return ceq(a->clock, b->clock) && aeq(a->a, b->a, bindN(a->name, b->name)) &&
             aeq(a->b, b->b, env);
    case Kind::TickApp:
    case Kind::Bracket:
      return name_eq(a->name, b->name, env.l, env.r) && aeq(a->a, b->a, env);
    case Kind::ClockLam:
    case Kind::Forall:
      return aeq(a->b, b->b, bindC(a->clock, b->clock));
    case Kind::DiamondApp:
      return ceq(a->clock2, b->clock2) && aeq(a->a, b->a, bindC(a->clock, b->clock));
    case Kind::ClockApp:
    case Kind::Dfix:
    case Kind::Tirr:
    case Kind::Str:
      return ceq(a->clock, b->clock) && aeq(a->a, b->a, env);
    default:
      return aeq(a->a, b->a, env) && aeq(a->b, b->b, env) && aeq(a->c, b->c, env);
  }
}

}  // namespace

bool alpha_eq(const ExprP& a, const ExprP& b) { return aeq(a, b, AEnv{}); }

// ---------------------------------------------------------------- weakening

Ctx weaken_ctx(const Ctx& c, size_t pos, const Entry& e) {
  if (pos > c.entries.size()) throw SubstError("weaken: position out of range");
  if (c.find(e.name)) throw SubstError("weaken: name collision on " + e.name);
  if (e.tick && !c.has_clock(e.clock)) throw SubstError("weaken: unknown clock " + e.clock);
  if (!e.tick) {
    std::set<std::string> before;
    for (size_t i = 0; i < pos; ++i) before.insert(c.entries[i].name);
    for (auto& n : free_vars(e.type))
      if (!before.count(n)) throw SubstError("weaken: type mentions " + n + " out of scope");
  }
  for (size_t i = pos; i < c.entries.size(); ++i)
    if (!c.entries[i].tick && occurs_free(e.name, c.entries[i].type))
      throw SubstError("weaken: would capture " + e.name);
  Ctx out = c;
  out.entries.insert(out.entries.begin() + pos, e);
  return out;
}

ExprP weaken(const ExprP& j, const Ctx& c, size_t pos, const Entry& e) {
  weaken_ctx(c, pos, e);
  if (occurs_free(e.name, j)) throw SubstError("weaken: would capture " + e.name);
  return j;
}

Ctx weaken_clock(const Ctx& c, const std::string& k) {
  if (c.has_clock(k)) throw SubstError("weaken: clock collision on " + k);
  return c.with_clock(k);
}

// ---------------------------------------------------------------- printing

namespace {

int numeral(const ExprP& e) {
  int n = 0;
  ExprP cur = e;
  while (cur->kind == Kind::Suc) {
    ++n;
    cur = cur->a;
  }
  return cur->kind == Kind::Zero ? n : -1;
}

std::string pr(const ExprP& e);

bool atomic(const ExprP& e) {
  switch (e->kind) {
    case Kind::Var:
    case Kind::Zero:
    case Kind::Nat:
    case Kind::Str:
      return true;
    case Kind::Suc:
      return numeral(e) >= 0;
    case Kind::TickApp:
    case Kind::ClockApp:
    case Kind::Bracket:
      return atomic(e->a);
    default:
      return false;
  }
}

std::string at(const ExprP& e) { return atomic(e) ? pr(e) : "(" + pr(e) + ")"; }

std::string pr(const ExprP& e) {
  switch (e->kind) {
    case Kind::Var: return e->name;
    case Kind::Lam: return "lam (" + e->name + " : " + pr(e->a) + ") " + pr(e->b);
    case Kind::App: {
      std::string head = e->a->kind == Kind::App ? pr(e->a) : at(e->a);
      return head + " " + at(e->b);
    }
    case Kind::Pair: return "pair " + at(e->a) + " " + at(e->b);
    case Kind::Fst: return "fst " + at(e->a);
    case Kind::Snd: return "snd " + at(e->a);
    case Kind::Refl: return "refl " + at(e->a);
    case Kind::Zero: return "0";
    case Kind::Suc: {
      int n = numeral(e);
      return n >= 0 ? std::to_string(n) : "suc " + at(e->a);
    }
    case Kind::NatRec: return "natrec " + at(e->a) + " " + at(e->b) + " " + at(e->c);
    case Kind::TickLam: return "tlam (" + e->name + " : " + e->clock + ") " + pr(e->b);
    case Kind::TickApp:
    case Kind::Bracket: return at(e->a) + " [" + e->name + "]";
    case Kind::DiamondApp: return "adv " + at(e->a) + " " + e->clock + " " + e->clock2;
    case Kind::ClockLam: return "clam " + e->clock + " " + pr(e->b);
    case Kind::ClockApp: return at(e->a) + " [" + e->clock + "]";
    case Kind::Dfix: return "dfix " + e->clock + " " + at(e->a);
    case Kind::Cirr: return "cirr " + at(e->a);
    case Kind::Tirr: return "tirr " + e->clock + " " + at(e->a);
    case Kind::Nat: return "Nat";
    case Kind::Pi:
      if (e->name == "_" || !occurs_free(e->name, e->b)) return at(e->a) + " -> " + pr(e->b);
      return "Pi (" + e->name + " : " + pr(e->a) + ") " + pr(e->b);
    case Kind::Sigma: return "Sig (" + e->name + " : " + pr(e->a) + ") " + pr(e->b);
    case Kind::Id: return "Id " + at(e->a) + " " + at(e->b) + " " + at(e->c);
    case Kind::Later:
      if (e->name == "_" || !occurs_free(e->name, e->b)) {
        bool chain = e->b->kind == Kind::Later &&
                     (e->b->name == "_" || !occurs_free(e->b->name, e->b->b));
        return "Later " + e->clock + " " + (chain ? pr(e->b) : at(e->b));
      }
      return "Later (" + e->name + " : " + e->clock + ") " + pr(e->b);
    case Kind::Forall: return "Forall " + e->clock + " " + pr(e->b);
    case Kind::Str: return "Str[" + e->clock + "]";
    case Kind::Lift:
      return "Lift " + e->clock + " (" + e->name + ". " + pr(e->a) + ") " + at(e->b);
  }
  return "?";
}

}  // namespace

std::string print(const ExprP& e) { return e ? pr(e) : "<null>"; }

std::string print(const Ctx& c) {
  std::string s;
  for (size_t i = 0; i < c.entries.size(); ++i) {
    if (i) s += ", ";
    auto& e = c.entries[i];
    s += e.name + " : " + (e.tick ? e.clock : print(e.type));
  }
  return s;
}

std::string print(const SyntacticSubst& s) {
  std::string out = "(";
  bool first = true;
  for (auto& [k, v] : s.nu) {
    out += (first ? "" : ", ") + k + " -> " + v;
    first = false;
  }
  out += "; ";
  first = true;
  for (auto& b : s.bindings) {
    out += first ? "" : ", ";
    first = false;
    switch (b.kind) {
      case Binding::Term: out += b.name + " := " + print(b.term); break;
      case Binding::Tick: out += b.name + " := " + b.tick; break;
      case Binding::Diamond: out += b.name + " := <> (" + b.clock + " -> " + b.target + ")"; break;
    }
  }
  return out + ")";
}

}  // namespace clott
