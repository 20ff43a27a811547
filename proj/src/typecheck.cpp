#include "clott/typecheck.hpp"

#include <algorithm>

#include "clott/interp.hpp"

namespace clott {

using nlohmann::json;

std::string print(const Judgement& j) {
  std::string head = "clocks ";
  for (size_t i = 0; i < j.ctx.clocks.size(); ++i) head += (i ? " " : "") + j.ctx.clocks[i];
  head += "; " + print(j.ctx) + " |- ";
  switch (j.kind) {
    case Judgement::CtxWf: return head + "ok";
    case Judgement::TypeWf: return head + print(j.subject) + " type";
    case Judgement::Typing:
      return head + print(j.subject) + " : " + (j.type ? print(j.type) : std::string("?"));
    case Judgement::Equality: return head + print(j.subject) + " = " + print(j.rhs);
  }
  return head;
}

json TypeError::to_json() const {
  return {{"rule", rule}, {"message", what()}, {"judgement", judgement}};
}

json to_json(const Derivation& d) {
  json ps = json::array();
  for (auto& p : d.premises) ps.push_back(to_json(p));
  return {{"rule", d.rule}, {"judgement", print(d.concl)}, {"premises", ps}};
}

std::string print(const Derivation& d, int indent) {
  std::string s(indent * 2, ' ');
  s += "[" + d.rule + "] " + print(d.concl) + "\n";
  for (auto& p : d.premises) s += print(p, indent + 1);
  return s;
}

// ---------------------------------------------------------------- reduction

namespace {

thread_local long fuel = 0;
thread_local int reduce_depth = 0;
thread_local long fresh_counter = 0;

struct OutOfFuel {};

struct FuelScope {
  FuelScope() {
    if (reduce_depth++ == 0) fuel = 20000;
  }
  ~FuelScope() { --reduce_depth; }
};

void spend() {
  if (--fuel < 0) throw OutOfFuel{};
}

std::string gensym(const std::string& base) { return base + "%" + std::to_string(++fresh_counter); }

ExprP whnf_(ExprP t, bool unfoldTypes) {
  for (;;) {
    switch (t->kind) {
      case Kind::App: {
        ExprP f = whnf_(t->a, false);
        if (f->kind == Kind::Lam) {
          spend();
          t = subst_var(f->b, f->name, t->b);
          continue;
        }
        return f == t->a ? t : mk::app(f, t->b);
      }
      case Kind::Fst:
      case Kind::Snd: {
        ExprP p = whnf_(t->a, false);
        if (p->kind == Kind::Pair) {
          spend();
          t = t->kind == Kind::Fst ? p->a : p->b;
          continue;
        }
        if (p == t->a) return t;
        return t->kind == Kind::Fst ? mk::fst(p) : mk::snd(p);
      }
      case Kind::TickApp: {
        ExprP h = whnf_(t->a, false);
        if (h->kind == Kind::TickLam) {
          spend();
          t = rename_tick(h->b, h->name, t->name);
          continue;
        }
        return h == t->a ? t : mk::tapp(h, t->name);
      }
      case Kind::ClockApp: {
        ExprP h = whnf_(t->a, false);
        if (h->kind == Kind::ClockLam) {
          spend();
          t = rename_clock(h->b, h->clock, t->clock);
          continue;
        }
        return h == t->a ? t : mk::capp(h, t->clock);
      }
      case Kind::DiamondApp: {
        ExprP s = whnf_(t->a, false);
        const std::string& k = t->clock;
        const std::string& tgt = t->clock2;
        if (s->kind == Kind::TickLam && s->clock == k) {
          spend();
          RawSubst r;
          r.clocks[k] = tgt;
          r.ticks[s->name] = TickImage{true, {}, k, tgt};
          t = subst(s->b, r);
          continue;
        }
        if (s->kind == Kind::Dfix && s->clock == k) {
          spend();
          ExprP u = rename_clock(s->a, k, tgt);
          t = mk::app(u, mk::dfix(tgt, u));
          continue;
        }
        return s == t->a ? t : mk::diamond(s, k, tgt);
      }
      case Kind::NatRec: {
        ExprP n = whnf_(t->c, false);
        if (n->kind == Kind::Zero) {
          spend();
          t = t->a;
          continue;
        }
        if (n->kind == Kind::Suc) {
          spend();
          t = mk::app(mk::app(t->b, n->a), mk::natrec(t->a, t->b, n->a));
          continue;
        }
        return n == t->c ? t : mk::natrec(t->a, t->b, n);
      }
      case Kind::Str:
      case Kind::Lift:
        if (unfoldTypes) return unfold(t, Ctx{});
        return t;
      default:
        return t;
    }
  }
}

ExprP norm_(const ExprP& t0) {
  ExprP t = whnf_(t0, false);
  auto n = std::make_shared<Expr>(*t);
  if (t->a) n->a = norm_(t->a);
  if (t->b) n->b = norm_(t->b);
  if (t->c) n->c = norm_(t->c);
  return n;
}

bool cv(ExprP a, ExprP b);

bool same(const ExprP& a, const ExprP& b) {
  auto bodies = [&](const ExprP& x, const ExprP& y) {
    std::string z = gensym("v");
    return cv(subst_var(x->b, x->name, mk::var(z)), subst_var(y->b, y->name, mk::var(z)));
  };
  auto tbodies = [&](const ExprP& x, const ExprP& y) {
    std::string z = gensym("t");
    return cv(rename_tick(x->b, x->name, z), rename_tick(y->b, y->name, z));
  };
  auto cbodies = [&](const ExprP& x, const ExprP& y) {
    std::string z = gensym("c");
    return cv(rename_clock(x->b, x->clock, z), rename_clock(y->b, y->clock, z));
  };
  switch (a->kind) {
    case Kind::Var: return a->name == b->name;
    case Kind::App: return cv(a->a, b->a) && cv(a->b, b->b);
    case Kind::Lam: return bodies(a, b);
    case Kind::Pi:
    case Kind::Sigma: return cv(a->a, b->a) && bodies(a, b);
    case Kind::Pair: return cv(a->a, b->a) && cv(a->b, b->b);
    case Kind::Fst:
    case Kind::Snd:
    case Kind::Suc:
    case Kind::Cirr: return cv(a->a, b->a);
    case Kind::Refl:
    case Kind::Zero:
    case Kind::Nat: return true;
    case Kind::NatRec: return cv(a->a, b->a) && cv(a->b, b->b) && cv(a->c, b->c);
    case Kind::Id: return cv(a->a, b->a) && cv(a->b, b->b) && cv(a->c, b->c);
    case Kind::TickLam:
    case Kind::Later: return a->clock == b->clock && tbodies(a, b);
    case Kind::TickApp: return a->name == b->name && cv(a->a, b->a);
    case Kind::ClockLam:
    case Kind::Forall: return cbodies(a, b);
    case Kind::ClockApp:
    case Kind::Dfix:
    case Kind::Tirr: return a->clock == b->clock && cv(a->a, b->a);
    case Kind::Str: return a->clock == b->clock;
    case Kind::DiamondApp:
      return a->clock2 == b->clock2 && cv(rename_clock(a->a, a->clock, a->clock2),
                                          rename_clock(b->a, b->clock, b->clock2));
    case Kind::Lift: {
      if (a->clock != b->clock || !cv(a->b, b->b)) return false;
      std::string z = gensym("v");
      return cv(subst_var(a->a, a->name, mk::var(z)), subst_var(b->a, b->name, mk::var(z)));
    }
    case Kind::Bracket: return false;
  }
  return false;
}

bool eta(const ExprP& a, const ExprP& b) {
  switch (a->kind) {
    case Kind::Lam: {
      std::string z = gensym("v");
      return cv(subst_var(a->b, a->name, mk::var(z)), mk::app(b, mk::var(z)));
    }
    case Kind::Pair:
      return cv(a->a, mk::fst(b)) && cv(a->b, mk::snd(b));
    case Kind::TickLam: {
      std::string z = gensym("t");
      return cv(rename_tick(a->b, a->name, z), mk::tapp(b, z));
    }
    case Kind::ClockLam: {
      std::string z = gensym("c");
      return cv(rename_clock(a->b, a->clock, z), mk::capp(b, z));
    }
    default:
      return false;
  }
}

bool cv(ExprP a, ExprP b) {
  if (alpha_eq(a, b)) return true;
  a = whnf_(a, false);
  b = whnf_(b, false);
  if (alpha_eq(a, b)) return true;
  if (a->kind == b->kind) return same(a, b);
  if (eta(a, b) || eta(b, a)) return true;
  bool ua = a->kind == Kind::Str || a->kind == Kind::Lift;
  bool ub = b->kind == Kind::Str || b->kind == Kind::Lift;
  if (ua || ub) return cv(ua ? unfold(a, Ctx{}) : a, ub ? unfold(b, Ctx{}) : b);
  return false;
}

}  // namespace

ExprP whnf(const ExprP& t, bool unfoldTypes) {
  FuelScope fs;
  return whnf_(t, unfoldTypes);
}

ExprP normalize(const ExprP& t) {
  FuelScope fs;
  return norm_(t);
}

bool conv(const ExprP& a, const ExprP& b) {
  FuelScope fs;
  try {
    return cv(a, b);
  } catch (const OutOfFuel&) {
    return false;
  }
}

// ---------------------------------------------------------------- checking

namespace {

Judgement typing(const Ctx& c, const ExprP& t, const ExprP& A) {
  return {Judgement::Typing, c, t, A, nullptr};
}

Judgement typewf(const Ctx& c, const ExprP& A) { return {Judgement::TypeWf, c, A, nullptr, nullptr}; }

[[noreturn]] void fail(const std::string& rule, const std::string& msg, const Judgement& j) {
  throw TypeError(rule, rule + ": " + msg, print(j));
}

ExprP tnf(const ExprP& A) {
  try {
    return whnf(A, true);
  } catch (const OutOfFuel&) {
    return A;
  }
}

std::string show_nf(const ExprP& A) {
  try {
    return print(normalize(A));
  } catch (const OutOfFuel&) {
    return print(A);
  }
}

// term or tick binder entering ctx: keep the name unless it clashes
std::string binder(const Ctx& ctx, const std::string& x, const ExprP& body) {
  if (x != "_" && !ctx.find(x)) return x;
  std::set<std::string> avoid = ctx.names();
  for (auto& n : free_vars(body)) avoid.insert(n);
  return fresh_name(x == "_" ? "x" : x, avoid);
}

std::string clock_binder(const Ctx& ctx, const std::string& k, const ExprP& body) {
  if (!ctx.has_clock(k)) return k;
  std::set<std::string> avoid(ctx.clocks.begin(), ctx.clocks.end());
  for (auto& c : free_clocks(body)) avoid.insert(c);
  return fresh_name(k, avoid);
}

ExprP rn_var(const ExprP& e, const std::string& from, const std::string& to) {
  return from == to || from == "_" ? e : subst_var(e, from, mk::var(to));
}

void need_clock(const Ctx& ctx, const std::string& k, const std::string& rule, const Judgement& j) {
  if (!ctx.has_clock(k)) fail(rule, "clock " + k + " is not in the clock context", j);
}

}  // namespace

Derivation Checker::check_ctx(const Ctx& ctx) {
  Derivation d{"ctx-wf", {Judgement::CtxWf, ctx, nullptr, nullptr, nullptr}, {}};
  std::set<std::string> cl;
  for (auto& k : ctx.clocks)
    if (!cl.insert(k).second) fail("ctx-wf", "duplicate clock " + k, d.concl);
  std::set<std::string> seen;
  for (size_t i = 0; i < ctx.entries.size(); ++i) {
    const Entry& e = ctx.entries[i];
    if (!seen.insert(e.name).second) fail("ctx-wf", "duplicate name " + e.name, d.concl);
    if (e.tick) {
      need_clock(ctx, e.clock, "ctx-wf", d.concl);
    } else {
      d.premises.push_back(check_type(ctx.prefix(i), e.type));
    }
  }
  return d;
}

Derivation Checker::check_type(const Ctx& ctx, const ExprP& A) {
  Judgement j = typewf(ctx, A);
  switch (A->kind) {
    case Kind::Nat:
      return {"Nat-form", j, {}};
    case Kind::Pi:
    case Kind::Sigma: {
      Derivation dA = check_type(ctx, A->a);
      std::string x = binder(ctx, A->name, A->b);
      Derivation dB = check_type(ctx.with(Entry{false, x, A->a, {}}), rn_var(A->b, A->name, x));
      return {A->kind == Kind::Pi ? "Pi-form" : "Sigma-form", j, {dA, dB}};
    }
    case Kind::Id: {
      Derivation dT = check_type(ctx, A->a);
      Derivation dl = check(ctx, A->b, A->a);
      Derivation dr = check(ctx, A->c, A->a);
      return {"Id-form", j, {dT, dl, dr}};
    }
    case Kind::Later: {
      need_clock(ctx, A->clock, "Later-form", j);
      std::string a = binder(ctx, A->name, A->b);
      ExprP B = A->name == "_" ? A->b : rename_tick(A->b, A->name, a);
      return {"Later-form", j, {check_type(ctx.with(Entry{true, a, nullptr, A->clock}), B)}};
    }
    case Kind::Forall: {
      std::string k = clock_binder(ctx, A->clock, A->b);
      return {"Forall-form", j, {check_type(ctx.with_clock(k), rename_clock(A->b, A->clock, k))}};
    }
    case Kind::Str:
      need_clock(ctx, A->clock, "Str-form", j);
      return {"Str-form", j, {}};
    case Kind::Lift: {
      need_clock(ctx, A->clock, "Lift-form", j);
      std::string x = binder(ctx, A->name, A->a);
      Derivation dP =
          check_type(ctx.with(Entry{false, x, mk::nat(), {}}), rn_var(A->a, A->name, x));
      Derivation dt = check(ctx, A->b, mk::str(A->clock));
      return {"Lift-form", j, {dP, dt}};
    }
    default:
      fail("type-form", print(A) + " is not a type", j);
  }
}

Derivation Checker::check(const Ctx& ctx, const ExprP& t, const ExprP& A) {
  Judgement j = typing(ctx, t, A);
  ExprP T = tnf(A);
  if (t->kind == Kind::Lam && T->kind == Kind::Pi) {
    if (!conv(t->a, T->a))
      fail("Pi-intro",
           "domain annotation " + print(t->a) + " does not match " + print(T->a), j);
    std::string x = binder(ctx, t->name, mk::pair(t->b, T->b));
    Derivation dA = check_type(ctx, t->a);
    Derivation db = check(ctx.with(Entry{false, x, t->a, {}}), rn_var(t->b, t->name, x),
                          rn_var(T->b, T->name, x));
    return {"Pi-intro", j, {dA, db}};
  }
  if (t->kind == Kind::Pair && T->kind == Kind::Sigma) {
    Derivation da = check(ctx, t->a, T->a);
    Derivation db = check(ctx, t->b, T->name == "_" ? T->b : subst_var(T->b, T->name, t->a));
    return {"Sigma-intro", j, {da, db}};
  }
  if (t->kind == Kind::TickLam && T->kind == Kind::Later) {
    if (t->clock != T->clock)
      fail("tick-abs", "tick on clock " + t->clock + " but the type is later on " + T->clock, j);
    std::string a = binder(ctx, t->name, mk::pair(t->b, T->b));
    ExprP body = t->name == "_" ? t->b : rename_tick(t->b, t->name, a);
    ExprP B = T->name == "_" ? T->b : rename_tick(T->b, T->name, a);
    return {"tick-abs", j, {check(ctx.with(Entry{true, a, nullptr, t->clock}), body, B)}};
  }
  if (t->kind == Kind::ClockLam && T->kind == Kind::Forall) {
    std::string k = clock_binder(ctx, t->clock, mk::pair(t->b, T->b));
    return {"clock-abs", j,
            {check(ctx.with_clock(k), rename_clock(t->b, t->clock, k),
                   rename_clock(T->b, T->clock, k))}};
  }
  if (t->kind == Kind::Refl && T->kind == Kind::Id) {
    Derivation du = check(ctx, t->a, T->a);
    if (!conv(t->a, T->b) || !conv(t->a, T->c))
      fail("refl", "sides differ: " + show_nf(T->b) + " and " + show_nf(T->c), j);
    return {"refl", j, {du}};
  }
  Derivation d = infer(ctx, t);
  if (!conv(d.concl.type, A))
    fail("conv", "inferred type " + show_nf(d.concl.type) + " is not equal to " + show_nf(A), j);
  return {"conv", j, {d}};
}

Derivation Checker::infer(const Ctx& ctx, const ExprP& t) {
  Judgement j = typing(ctx, t, nullptr);
  auto done = [&](const std::string& rule, ExprP ty, std::vector<Derivation> ps) {
    j.type = std::move(ty);
    return Derivation{rule, j, std::move(ps)};
  };
  switch (t->kind) {
    case Kind::Var: {
      const Entry* e = ctx.find(t->name);
      if (!e) fail("var", "unbound variable " + t->name, j);
      if (e->tick) fail("var", "tick " + t->name + " used as a term", j);
      return done("var", e->type, {});
    }
    case Kind::Lam: {
      Derivation dA = check_type(ctx, t->a);
      std::string x = binder(ctx, t->name, t->b);
      Derivation db = infer(ctx.with(Entry{false, x, t->a, {}}), rn_var(t->b, t->name, x));
      return done("Pi-intro", mk::pi(x, t->a, db.concl.type), {dA, db});
    }
    case Kind::App: {
      Derivation df = infer(ctx, t->a);
      ExprP T = tnf(df.concl.type);
      if (T->kind != Kind::Pi)
        fail("Pi-elim", "applying a term of type " + print(df.concl.type) + ", not a function", j);
      Derivation da = check(ctx, t->b, T->a);
      ExprP B = T->name == "_" ? T->b : subst_var(T->b, T->name, t->b);
      return done("Pi-elim", B, {df, da});
    }
    case Kind::Pair: {
      Derivation da = infer(ctx, t->a);
      Derivation db = infer(ctx, t->b);
      return done("Sigma-intro", mk::sigma("_", da.concl.type, db.concl.type), {da, db});
    }
    case Kind::Fst:
    case Kind::Snd: {
      bool first = t->kind == Kind::Fst;
      Derivation dp = infer(ctx, t->a);
      ExprP T = tnf(dp.concl.type);
      if (T->kind != Kind::Sigma)
        fail(first ? "fst" : "snd", "projection from a term of type " + print(dp.concl.type), j);
      if (first) return done("fst", T->a, {dp});
      ExprP B = T->name == "_" ? T->b : subst_var(T->b, T->name, mk::fst(t->a));
      return done("snd", B, {dp});
    }
    case Kind::Refl: {
      Derivation du = infer(ctx, t->a);
      return done("refl", mk::id(du.concl.type, t->a, t->a), {du});
    }
    case Kind::Zero:
      return done("zero", mk::nat(), {});
    case Kind::Suc:
      return done("suc", mk::nat(), {check(ctx, t->a, mk::nat())});
    case Kind::NatRec: {
      Derivation dz = infer(ctx, t->a);
      ExprP A = dz.concl.type;
      Derivation ds = check(ctx, t->b, mk::arrow(mk::nat(), mk::arrow(A, A)));
      Derivation dn = check(ctx, t->c, mk::nat());
      return done("natrec", A, {dz, ds, dn});
    }
    case Kind::TickLam: {
      need_clock(ctx, t->clock, "tick-abs", j);
      std::string a = binder(ctx, t->name, t->b);
      ExprP body = t->name == "_" ? t->b : rename_tick(t->b, t->name, a);
      Derivation db = infer(ctx.with(Entry{true, a, nullptr, t->clock}), body);
      return done("tick-abs", mk::later(a, t->clock, db.concl.type), {db});
    }
    case Kind::TickApp: {
      int i = ctx.index_of(t->name);
      if (i < 0 || !ctx.entries[i].tick) fail("tick-app", "unknown tick " + t->name, j);
      if (occurs_free(t->name, t->a))
        fail("tick-app",
             "tick " + t->name + " also occurs in the term it is applied to; a tick can unpack a term only once",
             j);
      Ctx pre = ctx.prefix(i);
      Derivation du;
      try {
        du = infer(pre, t->a);
      } catch (const TypeError& e) {
        fail("tick-app",
             "the term must be typeable before tick " + t->name + " (" + e.what() + ")", j);
      }
      ExprP T = tnf(du.concl.type);
      const std::string& k = ctx.entries[i].clock;
      if (T->kind != Kind::Later)
        fail("tick-app", "expected a later type on " + k + ", got " + print(du.concl.type), j);
      if (T->clock != k)
        fail("tick-app", "tick " + t->name + " is on clock " + k + " but the term is later on " + T->clock, j);
      ExprP B = T->name == "_" ? T->b : rename_tick(T->b, T->name, t->name);
      return done("tick-app", B, {du});
    }
    case Kind::ClockLam: {
      std::string k = clock_binder(ctx, t->clock, t->b);
      Derivation db = infer(ctx.with_clock(k), rename_clock(t->b, t->clock, k));
      return done("clock-abs", mk::forall(k, db.concl.type), {db});
    }
    case Kind::ClockApp: {
      need_clock(ctx, t->clock, "clock-app", j);
      Derivation du = infer(ctx, t->a);
      ExprP T = tnf(du.concl.type);
      if (T->kind != Kind::Forall)
        fail("clock-app", "expected a clock quantified type, got " + print(du.concl.type), j);
      return done("clock-app", rename_clock(T->b, T->clock, t->clock), {du});
    }
    case Kind::DiamondApp: {
      const std::string& tgt = t->clock2;
      need_clock(ctx, tgt, "diamond", j);
      std::string k = clock_binder(ctx, t->clock, t->a);
      ExprP s = rename_clock(t->a, t->clock, k);
      Derivation ds;
      try {
        ds = infer(ctx.with_clock(k), s);
      } catch (const TypeError& e) {
        fail("diamond", std::string("witness does not typecheck over the extended clock context (") +
                            e.what() + ")",
             j);
      }
      ExprP T = tnf(ds.concl.type);
      if (T->kind != Kind::Later)
        fail("diamond", "witness has type " + print(ds.concl.type) + ", which is not delayed", j);
      if (T->clock != k)
        fail("diamond",
             "witness is delayed on the ambient clock " + T->clock +
                 "; the tick constant only applies to a clock absent from the context",
             j);
      RawSubst r;
      r.clocks[k] = tgt;
      if (T->name != "_") r.ticks[T->name] = TickImage{true, {}, k, tgt};
      return done("diamond", subst(T->b, r), {ds});
    }
    case Kind::Dfix: {
      need_clock(ctx, t->clock, "dfix", j);
      Derivation du = infer(ctx, t->a);
      ExprP T = tnf(du.concl.type);
      if (T->kind != Kind::Pi)
        fail("dfix", "argument must be a function, got " + print(du.concl.type), j);
      ExprP D = tnf(T->a);
      if (D->kind != Kind::Later || D->clock != t->clock)
        fail("dfix", "argument must take a later value on " + t->clock, j);
      if (D->name != "_" && occurs_free(D->name, D->b))
        fail("dfix", "domain must not depend on its tick", j);
      if (T->name != "_" && occurs_free(T->name, T->b))
        fail("dfix", "codomain must not depend on the argument", j);
      if (!conv(D->b, T->b))
        fail("dfix", "domain " + show_nf(D->b) + " and codomain " + show_nf(T->b) + " differ", j);
      return done("dfix", mk::later(t->clock, T->b), {du});
    }
    case Kind::Cirr: {
      Derivation du = infer(ctx, t->a);
      ExprP T = tnf(du.concl.type);
      if (T->kind != Kind::Forall) fail("cirr", "expected a clock quantified term", j);
      if (free_clocks(T->b).count(T->clock))
        fail("cirr", "the quantified clock " + T->clock + " occurs in the result type", j);
      std::set<std::string> avoid(ctx.clocks.begin(), ctx.clocks.end());
      for (auto& c : free_clocks(t->a)) avoid.insert(c);
      std::string k1 = fresh_name("k", avoid);
      avoid.insert(k1);
      std::string k2 = fresh_name("k", avoid);
      return done("cirr",
                  mk::forall(k1, mk::forall(k2, mk::id(T->b, mk::capp(t->a, k1), mk::capp(t->a, k2)))),
                  {du});
    }
    case Kind::Tirr: {
      need_clock(ctx, t->clock, "tirr", j);
      Derivation du = infer(ctx, t->a);
      ExprP T = tnf(du.concl.type);
      if (T->kind != Kind::Later || T->clock != t->clock)
        fail("tirr", "expected a later type on " + t->clock, j);
      if (T->name != "_" && occurs_free(T->name, T->b))
        fail("tirr", "the delayed type must not depend on its tick", j);
      std::set<std::string> avoid = ctx.names();
      for (auto& n : free_vars(t->a)) avoid.insert(n);
      std::string a1 = fresh_name("a", avoid);
      avoid.insert(a1);
      std::string a2 = fresh_name("a", avoid);
      return done("tirr",
                  mk::later(a1, t->clock,
                            mk::later(a2, t->clock, mk::id(T->b, mk::tapp(t->a, a1), mk::tapp(t->a, a2)))),
                  {du});
    }
    default:
      fail("term", print(t) + " is a type, not a term", j);
  }
}

Derivation Checker::check_judgement(const Judgement& j) {
  Derivation dc = check_ctx(j.ctx);
  Derivation d;
  switch (j.kind) {
    case Judgement::CtxWf: return dc;
    case Judgement::TypeWf: d = check_type(j.ctx, j.subject); break;
    case Judgement::Typing:
      d = j.type ? check(j.ctx, j.subject, j.type) : infer(j.ctx, j.subject);
      break;
    case Judgement::Equality: {
      Derivation l = infer(j.ctx, j.subject);
      Derivation r = check(j.ctx, j.rhs, l.concl.type);
      if (!conv(j.subject, j.rhs))
        fail("conv", "sides differ: " + show_nf(j.subject) + " and " + show_nf(j.rhs), j);
      d = {"conv", j, {l, r}};
      break;
    }
  }
  if (!j.ctx.entries.empty()) d.premises.insert(d.premises.begin(), dc);
  return d;
}

// ---------------------------------------------------------------- substitutions

namespace {

Derivation subst_rec(Checker& c, const SyntacticSubst& s, size_t i, const Ctx& src, const Ctx& dst,
                     const std::vector<std::string>& stage) {
  Judgement j{Judgement::CtxWf, src, nullptr, nullptr, nullptr};
  if (i == 0) return {"subst-empty", j, {}};
  const Binding& b = s.bindings[i - 1];
  const Entry& e = dst.entries[i - 1];
  if (b.name != e.name) fail("subst", "binding " + b.name + " does not mirror entry " + e.name, j);
  SyntacticSubst pre{s.nu, {s.bindings.begin(), s.bindings.begin() + (i - 1)}};
  switch (b.kind) {
    case Binding::Term: {
      if (e.tick) fail("subst-term", "term bound to tick entry " + e.name, j);
      Derivation dt = c.check(src, b.term, apply_subst(e.type, pre));
      return {"subst-term", j, {subst_rec(c, s, i - 1, src, dst, stage), dt}};
    }
    case Binding::Tick: {
      if (!e.tick) fail("subst-tick", "tick bound to term entry " + e.name, j);
      int at = src.index_of(b.tick);
      if (at < 0 || !src.entries[at].tick) fail("subst-tick", "unknown source tick " + b.tick, j);
      const std::string& want = s.nu.at(e.clock);
      if (src.entries[at].clock != want)
        fail("subst-tick",
             "tick " + b.tick + " is on " + src.entries[at].clock + " but " + e.name + " needs " + want, j);
      return {"subst-tick", j, {subst_rec(c, s, i - 1, src.prefix(at), dst, stage)}};
    }
    case Binding::Diamond: {
      if (!e.tick) fail("subst-diamond", "tick constant bound to term entry " + e.name, j);
      const std::string& k = e.clock;
      std::vector<std::string> prev;
      for (auto& x : stage)
        if (x != k) prev.push_back(x);
      for (size_t q = 0; q + 1 < i; ++q) {
        const Entry& p = dst.entries[q];
        bool uses = p.tick ? p.clock == k : free_clocks(p.type).count(k) != 0;
        if (uses)
          fail("subst-diamond",
               "clock " + k + " already occurs before " + e.name + "; the tick constant needs a clock outside the target prefix",
               j);
      }
      if (std::find(prev.begin(), prev.end(), b.target) == prev.end())
        fail("subst-diamond", "target clock " + b.target + " is not available in the target prefix", j);
      if (s.nu.at(k) != s.nu.at(b.target))
        fail("subst-diamond", "clock map must send " + k + " where it sends " + b.target, j);
      return {"subst-diamond", j, {subst_rec(c, s, i - 1, src, dst, prev)}};
    }
  }
  fail("subst", "malformed binding", j);
}

}  // namespace

Derivation check_subst(const SyntacticSubst& s, const Ctx& src, const Ctx& dst) {
  Checker c;
  Judgement j{Judgement::CtxWf, src, nullptr, nullptr, nullptr};
  c.check_ctx(src);
  c.check_ctx(dst);
  if (s.bindings.size() != dst.entries.size())
    fail("subst", "substitution has " + std::to_string(s.bindings.size()) + " bindings for " +
                      std::to_string(dst.entries.size()) + " entries",
         j);
  for (auto& k : dst.clocks) {
    auto it = s.nu.find(k);
    if (it == s.nu.end()) fail("subst", "clock map undefined at " + k, j);
    if (!src.has_clock(it->second)) fail("subst", "clock " + it->second + " is not a source clock", j);
  }
  std::set<std::string> diamonds;
  for (auto& b : s.bindings)
    if (b.kind == Binding::Diamond) {
      const Entry* e = dst.find(b.name);
      if (e && !diamonds.insert(e->clock).second)
        fail("subst-diamond", "two tick constants share clock " + e->clock, j);
    }
  return subst_rec(c, s, s.bindings.size(), src, dst, dst.clocks);
}

}  // namespace clott
