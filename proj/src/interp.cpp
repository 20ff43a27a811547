#include "clott/interp.hpp"

#include <algorithm>

namespace clott {

namespace {

World add_clock(const World& w, const TimeObj& t, const std::string& k, SemClock c) {
  World o = w;
  o.t = t;
  o.delta.push_back(k);
  o.f[k] = c;
  return o;
}

// locally bound clock, renamed away from the ambient ones
std::pair<std::string, ExprP> local_clock(const std::string& k, const ExprP& body,
                                          const World& w, const Ctx& ctx) {
  if (!w.has_clock(k) && !ctx.has_clock(k)) return {k, body};
  std::set<std::string> avoid(w.delta.begin(), w.delta.end());
  avoid.insert(ctx.clocks.begin(), ctx.clocks.end());
  for (auto& c : free_clocks(body)) avoid.insert(c);
  std::string k2 = fresh_name(k, avoid);
  return {k2, rename_clock(body, k, k2)};
}

Morphism dec_map(const World& w, SemClock c) {
  Morphism m = identity(w.t);
  m.dst = dec_at(w.t, c);
  return m;
}

ValueP apply_id(const ValueP& f, const ValueP& a) {
  if (f->kind != VK::Fn) throw SemError("application of a non-function " + show(f));
  return f->fn->apply(identity(f->fn->w.t), a);
}

struct Walk {
  World w;
  ValueP cur;
  Morphism chi;  // w.t -> the starting world
};

// strip layers above entry i
Walk walk_to(const Ctx& ctx, size_t i, const World& w, const ValueP& env) {
  Walk s{w, env, identity(w.t)};
  for (size_t j = ctx.entries.size(); j-- > i + 1;) {
    const Entry& e = ctx.entries[j];
    if (e.tick) {
      if (s.cur->kind != VK::Tick) throw SemError("environment does not match context at " + e.name);
      Advanced a = advance_world(s.w, s.cur->X, e.clock);
      s.chi = compose(s.chi, a.chi);
      s.w = a.w;
      s.cur = s.cur->a;
    } else {
      if (s.cur->kind != VK::Pair) throw SemError("environment does not match context at " + e.name);
      s.cur = s.cur->a;
    }
  }
  return s;
}

std::string fresh_tick(const Ctx& ctx, std::initializer_list<ExprP> es) {
  std::set<std::string> avoid = ctx.names();
  for (auto& e : es)
    for (auto& n : free_vars(e)) avoid.insert(n);
  return fresh_name("a", avoid);
}

void cap_push(std::vector<ValueP>& out, ValueP v) {
  if (out.size() >= config().elemCap) throw TruncationError("element enumeration exceeds cap");
  out.push_back(std::move(v));
}

thread_local int member_depth = 0;

}  // namespace

std::vector<ValueP> spread(const std::vector<ValueP>& xs, size_t cap) {
  if (xs.size() <= cap) return xs;
  std::vector<ValueP> out;
  for (size_t i = 0; i < cap; ++i) out.push_back(xs[i * xs.size() / cap]);
  return out;
}

ValueP project_layer(const Ctx& ctx, size_t i, const World& w, const ValueP& env) {
  Walk s = walk_to(ctx, i, w, env);
  return restrict(s.cur, s.chi);
}

ExprP unfold(const ExprP& A, const Ctx& ctx) {
  if (A->kind == Kind::Str) return mk::sigma("_", mk::nat(), mk::later(A->clock, A));
  if (A->kind == Kind::Lift) {
    std::string a = fresh_tick(ctx, {A->a, A->b});
    ExprP head = subst_var(A->a, A->name, mk::fst(A->b));
    ExprP tail = mk::lift(A->clock, A->name, A->a, mk::tapp(mk::snd(A->b), a));
    return mk::sigma("_", head, mk::later(a, A->clock, tail));
  }
  return A;
}

// ---------------------------------------------------------------- eval

ValueP eval(const ExprP& t, const Ctx& ctx, const World& w, const ValueP& env) {
  switch (t->kind) {
    case Kind::Var: {
      int i = ctx.index_of(t->name);
      if (i < 0) throw SemError("unbound variable " + t->name);
      if (ctx.entries[i].tick) throw SemError("tick " + t->name + " used as a term");
      Walk s = walk_to(ctx, i, w, env);
      return restrict(snd(s.cur), s.chi);
    }
    case Kind::Lam: {
      Ctx inner = ctx.with(Entry{false, t->name, t->a, {}});
      ExprP A = t->a, body = t->b;
      return val::fn(
          w,
          [inner, body, w, env](const Morphism& tau, const ValueP& a) {
            return eval(body, inner, push(w, tau), val::pair(restrict(env, tau), a));
          },
          [ctx, A, w, env](const Morphism& tau) {
            return spread(elements(A, ctx, push(w, tau), restrict(env, tau)), config().sampleCap);
          });
    }
    case Kind::App:
      return apply_id(eval(t->a, ctx, w, env), eval(t->b, ctx, w, env));
    case Kind::Pair:
      return val::pair(eval(t->a, ctx, w, env), eval(t->b, ctx, w, env));
    case Kind::Fst:
      return fst(eval(t->a, ctx, w, env));
    case Kind::Snd:
      return snd(eval(t->a, ctx, w, env));
    case Kind::Refl:
      return val::refl();
    case Kind::Zero:
      return val::nat(0);
    case Kind::Suc: {
      ValueP n = eval(t->a, ctx, w, env);
      if (n->kind != VK::Nat) throw SemError("suc of a non-number");
      return val::nat(n->n + 1);
    }
    case Kind::NatRec: {
      ValueP acc = eval(t->a, ctx, w, env);
      ValueP s = eval(t->b, ctx, w, env);
      ValueP n = eval(t->c, ctx, w, env);
      if (n->kind != VK::Nat) throw SemError("natrec on a non-number");
      for (long i = 0; i < n->n; ++i) acc = apply_id(apply_id(s, val::nat(i)), acc);
      return acc;
    }
    case Kind::TickLam: {
      if (w.ticks_of(t->clock) == 0) return val::star();
      SemClock c = w.of(t->clock);
      ValueP g = val::tick(w.fiber(c), c, restrict(env, s_kappa(w, t->clock)));
      return val::later(c, eval(t->b, ctx.with(Entry{true, t->name, nullptr, t->clock}),
                                tick_dec(w, t->clock), g));
    }
    case Kind::TickApp: {
      int i = ctx.index_of(t->name);
      if (i < 0 || !ctx.entries[i].tick) throw SemError("unknown tick " + t->name);
      const std::string& k = ctx.entries[i].clock;
      ValueP layer = project_layer(ctx, i, w, env);
      Advanced adv = advance_world(w, layer->X, k);
      ValueP v = eval(t->a, ctx.prefix(i), adv.w, layer->a);
      return restrict(un_later(v), r_Xkappa(w, layer->X, k));
    }
    case Kind::DiamondApp: {
      auto [k, s] = local_clock(t->clock, t->a, w, ctx);
      const std::string& target = t->clock2;
      int n = w.ticks_of(target);
      SemClock sharp = w.t.fresh();
      Morphism iota = iota_incl(w.t, sharp, n + 1);
      World up = add_clock(w, iota.dst, k, sharp);
      ValueP v = eval(s, ctx.with_clock(k), up, restrict(env, iota));
      World merged = add_clock(w, w.t, k, w.of(target));
      return restrict(un_later(v), r_Xkappa(merged, {k}, k));
    }
    case Kind::ClockLam: {
      auto [k, body] = local_clock(t->clock, t->b, w, ctx);
      Ctx inner = ctx.with_clock(k);
      return val::fam(w.t, -1, [k, body, inner, w, env](int n) {
        SemClock sharp = w.t.fresh();
        Morphism iota = iota_incl(w.t, sharp, n);
        return eval(body, inner, add_clock(w, iota.dst, k, sharp), restrict(env, iota));
      });
    }
    case Kind::ClockApp: {
      ValueP f = eval(t->a, ctx, w, env);
      if (f->kind != VK::Fam) throw SemError("clock application of a non-family");
      int n = w.ticks_of(t->clock);
      ValueP c = f->fam->at(n);
      TimeObj big = f->fam->base;
      SemClock sharp = big.fresh();
      big.ticks[sharp] = n;
      return restrict(c, collapse(big, sharp, w.of(t->clock)));
    }
    case Kind::Dfix: {
      if (w.ticks_of(t->clock) == 0) return val::star();
      SemClock c = w.of(t->clock);
      World w2 = tick_dec(w, t->clock);
      ValueP env2 = restrict(env, dec_map(w, c));
      ValueP f = eval(t->a, ctx, w2, env2);
      return val::later(c, apply_id(f, eval(t, ctx, w2, env2)));
    }
    case Kind::Cirr: {
      TimeObj base = w.t;
      return val::fam(base, -1, [base](int n1) {
        TimeObj b2 = base;
        b2.ticks[base.fresh()] = n1;
        return val::fam(b2, -1, [](int) { return val::refl(); });
      });
    }
    case Kind::Tirr: {
      int m = w.ticks_of(t->clock);
      SemClock c = w.of(t->clock);
      if (m == 0) return val::star();
      if (m == 1) return val::later(c, val::star());
      return val::later(c, val::later(c, val::refl()));
    }
    default:
      throw SemError("cannot evaluate a type as a term: " + print(t));
  }
}

// ---------------------------------------------------------------- carriers

namespace {

std::vector<ValueP> nats() {
  std::vector<ValueP> out;
  for (int i = 0; i < config().natBound; ++i) out.push_back(val::nat(i));
  return out;
}

std::vector<ValueP> pi_elements(const ExprP& P, const Ctx& ctx, const World& w,
                                const ValueP& env) {
  const std::string& x = P->name;
  ExprP A = P->a, B = P->b;
  bool dep = x != "_" && occurs_free(x, B);
  Ctx inner = ctx.with(Entry{false, x, A, {}});
  auto dom = [ctx, A, w, env](const Morphism& tau) {
    return spread(elements(A, ctx, push(w, tau), restrict(env, tau)), config().sampleCap);
  };
  std::vector<ValueP> out;
  if (!dep) {
    if (alpha_eq(A, B))
      cap_push(out, val::fn(w, [](const Morphism&, const ValueP& a) { return a; }, dom));
    if (A->kind == Kind::Nat && B->kind == Kind::Nat)
      cap_push(out, val::fn(
                        w,
                        [](const Morphism&, const ValueP& a) { return val::nat(a->n + 1); },
                        dom));
    for (auto& b : elements(B, inner, w, val::pair(env, val::star())))
      cap_push(out, val::fn(
                        w, [b](const Morphism& tau, const ValueP&) { return restrict(b, tau); },
                        dom));
    return out;
  }
  if (unfold(B, inner)->kind == Kind::Id) {
    auto pick = [inner, B, w, env](const Morphism& tau, const ValueP& a) {
      World w2 = push(w, tau);
      auto bs = elements(B, inner, w2, val::pair(restrict(env, tau), a));
      if (bs.empty()) throw SemError("no witness for dependent codomain");
      return bs.front();
    };
    for (auto& a : elements(A, ctx, w, env))
      if (elements(B, inner, w, val::pair(env, a)).empty()) return out;
    cap_push(out, val::fn(w, pick, dom));
  }
  return out;
}

std::vector<ValueP> strs(const std::string& k, const World& w) {
  std::vector<ValueP> rest;
  if (w.ticks_of(k) == 0) {
    rest.push_back(val::star());
  } else {
    SemClock c = w.of(k);
    for (auto& r : strs(k, tick_dec(w, k))) rest.push_back(val::later(c, r));
  }
  std::vector<ValueP> out;
  for (auto& n : nats())
    for (auto& r : rest) cap_push(out, val::pair(n, r));
  return out;
}

ValueP later_env(const std::string& k, const World& w, const ValueP& env) {
  SemClock c = w.of(k);
  return val::tick(w.fiber(c), c, restrict(env, s_kappa(w, k)));
}

}  // namespace

std::vector<ValueP> elements(const ExprP& A, const Ctx& ctx, const World& w, const ValueP& env) {
  switch (A->kind) {
    case Kind::Nat:
      return nats();
    case Kind::Str:
      return strs(A->clock, w);
    case Kind::Lift:
      return elements(unfold(A, ctx), ctx, w, env);
    case Kind::Pi:
      return pi_elements(A, ctx, w, env);
    case Kind::Sigma: {
      std::vector<ValueP> out;
      Ctx inner = ctx.with(Entry{false, A->name, A->a, {}});
      for (auto& a : elements(A->a, ctx, w, env))
        for (auto& b : elements(A->b, inner, w, val::pair(env, a))) cap_push(out, val::pair(a, b));
      return out;
    }
    case Kind::Id:
      if (value_eq(eval(A->b, ctx, w, env), eval(A->c, ctx, w, env))) return {val::refl()};
      return {};
    case Kind::Later: {
      if (w.ticks_of(A->clock) == 0) return {val::star()};
      SemClock c = w.of(A->clock);
      std::vector<ValueP> out;
      Ctx inner = ctx.with(Entry{true, A->name, nullptr, A->clock});
      for (auto& x : elements(A->b, inner, tick_dec(w, A->clock), later_env(A->clock, w, env)))
        out.push_back(val::later(c, x));
      return out;
    }
    case Kind::Forall: {
      auto [k, body] = local_clock(A->clock, A->b, w, ctx);
      int M = fam_limit();
      SemClock sharp = w.t.fresh();
      Morphism iota = iota_incl(w.t, sharp, M);
      World top = add_clock(w, iota.dst, k, sharp);
      std::vector<ValueP> out;
      for (auto& x : elements(body, ctx.with_clock(k), top, restrict(env, iota))) {
        TimeObj big = iota.dst;
        out.push_back(val::fam(w.t, M, [x, big, sharp](int n) {
          Morphism m = identity(big);
          m.dst.ticks[sharp] = n;
          return restrict(x, m);
        }));
      }
      return out;
    }
    default:
      throw SemError("not a type: " + print(A));
  }
}

bool member(const ValueP& v, const ExprP& A, const Ctx& ctx, const World& w, const ValueP& env) {
  switch (A->kind) {
    case Kind::Nat:
      return v->kind == VK::Nat && v->n >= 0;
    case Kind::Str:
    case Kind::Lift:
      return member(v, unfold(A, ctx), ctx, w, env);
    case Kind::Pi: {
      if (v->kind != VK::Fn || !(v->fn->w.t == w.t)) return false;
      Ctx inner = ctx.with(Entry{false, A->name, A->a, {}});
      std::vector<Morphism> probes =
          member_depth == 0 ? quotient_probes(w.t, config().probeCap)
                            : std::vector<Morphism>{identity(w.t)};
      ++member_depth;
      struct Guard {
        ~Guard() { --member_depth; }
      } g;
      for (auto& tau : probes) {
        World w2 = push(w, tau);
        ValueP env2 = restrict(env, tau);
        for (auto& a : spread(elements(A->a, ctx, w2, env2), config().sampleCap))
          if (!member(v->fn->apply(tau, a), A->b, inner, w2, val::pair(env2, a))) return false;
      }
      return true;
    }
    case Kind::Sigma: {
      if (v->kind != VK::Pair) return false;
      Ctx inner = ctx.with(Entry{false, A->name, A->a, {}});
      return member(v->a, A->a, ctx, w, env) && member(v->b, A->b, inner, w, val::pair(env, v->a));
    }
    case Kind::Id:
      return v->kind == VK::Refl && value_eq(eval(A->b, ctx, w, env), eval(A->c, ctx, w, env));
    case Kind::Later: {
      if (w.ticks_of(A->clock) == 0) return v->kind == VK::Star;
      if (v->kind != VK::Later || v->clock != w.of(A->clock)) return false;
      Ctx inner = ctx.with(Entry{true, A->name, nullptr, A->clock});
      return member(v->a, A->b, inner, tick_dec(w, A->clock), later_env(A->clock, w, env));
    }
    case Kind::Forall: {
      if (v->kind != VK::Fam || !(v->fam->base == w.t)) return false;
      auto [k, body] = local_clock(A->clock, A->b, w, ctx);
      int hi = config().trunc.N;
      if (v->fam->bound >= 0) hi = std::min(hi, v->fam->bound);
      SemClock sharp = w.t.fresh();
      for (int n = 0; n <= hi; ++n) {
        Morphism iota = iota_incl(w.t, sharp, n);
        World wn = add_clock(w, iota.dst, k, sharp);
        if (!member(v->fam->at(n), body, ctx.with_clock(k), wn, restrict(env, iota))) return false;
        if (n < hi) {
          Morphism down = identity(iota.dst);
          down.src.ticks[sharp] = n + 1;
          if (!value_eq(v->fam->at(n), restrict(v->fam->at(n + 1), down))) return false;
        }
      }
      return true;
    }
    default:
      throw SemError("not a type: " + print(A));
  }
}

// ---------------------------------------------------------------- contexts

namespace {

std::vector<ValueP> ctx_rec(const Ctx& ctx, size_t n, const World& w) {
  if (n == 0) return {val::star()};
  const Entry& e = ctx.entries[n - 1];
  std::vector<ValueP> out;
  if (e.tick) {
    for (auto& X : tick_subsets(w, e.clock)) {
      Advanced a = advance_world(w, X, e.clock);
      for (auto& g : ctx_rec(ctx, n - 1, a.w)) cap_push(out, val::tick(X, w.of(e.clock), g));
    }
    return out;
  }
  Ctx pre = ctx.prefix(n - 1);
  for (auto& g : ctx_rec(ctx, n - 1, w))
    for (auto& a : elements(e.type, pre, w, g)) cap_push(out, val::pair(g, a));
  return out;
}

bool ctx_mem(const ValueP& g, const Ctx& ctx, size_t n, const World& w) {
  if (n == 0) return g->kind == VK::Star;
  const Entry& e = ctx.entries[n - 1];
  if (e.tick) {
    if (g->kind != VK::Tick || g->clock != w.of(e.clock) || !g->X.count(e.clock)) return false;
    for (auto& x : g->X)
      if (!w.has_clock(x) || w.of(x) != g->clock) return false;
    return ctx_mem(g->a, ctx, n - 1, advance_world(w, g->X, e.clock).w);
  }
  if (g->kind != VK::Pair) return false;
  return ctx_mem(g->a, ctx, n - 1, w) && member(g->b, e.type, ctx.prefix(n - 1), w, g->a);
}

}  // namespace

std::vector<ValueP> ctx_elements(const Ctx& ctx, const World& w) {
  return ctx_rec(ctx, ctx.entries.size(), w);
}

bool ctx_member(const ValueP& g, const Ctx& ctx, const World& w) {
  return ctx_mem(g, ctx, ctx.entries.size(), w);
}

Presheaf interp_ctx(const Ctx& ctx) {
  return {print(ctx), [ctx](const World& w) { return ctx_elements(ctx, w); }};
}

// ---------------------------------------------------------------- substitutions

ValueP diamond_subst(const std::string& k, const std::string& target, const World& w,
                     const ValueP& env) {
  int n = w.ticks_of(target);
  Morphism iota = iota_incl(w.t, w.t.fresh(), n + 1);
  return val::tick({k}, w.of(target), restrict(env, iota));
}

namespace {

ValueP subst_rec(const SyntacticSubst& s, size_t i, const Ctx& src, const Ctx& dst,
                 const std::vector<std::string>& stage, const World& w, const ValueP& env) {
  if (i == 0) return val::star();
  const Binding& b = s.bindings[i - 1];
  const Entry& e = dst.entries[i - 1];
  switch (b.kind) {
    case Binding::Term:
      return val::pair(subst_rec(s, i - 1, src, dst, stage, w, env), eval(b.term, src, w, env));
    case Binding::Tick: {
      int j = src.index_of(b.tick);
      if (j < 0 || !src.entries[j].tick) throw SemError("tick binding to unknown tick " + b.tick);
      const std::string& k = src.entries[j].clock;
      ValueP layer = project_layer(src, j, w, env);
      Advanced adv = advance_world(w, layer->X, k);
      ValueP inner = subst_rec(s, i - 1, src.prefix(j), dst, stage, adv.w, layer->a);
      return exchange(s.nu, stage, e.clock, w, val::tick(layer->X, layer->clock, inner));
    }
    case Binding::Diamond: {
      std::vector<std::string> pre;
      for (auto& c : stage)
        if (c != e.clock) pre.push_back(c);
      ValueP g = subst_rec(s, i - 1, src, dst, pre, w, env);
      const std::string& tgt = s.nu.at(b.target);
      return diamond_subst(e.clock, tgt, w, g);
    }
  }
  return nullptr;
}

}  // namespace

ValueP interp_subst(const SyntacticSubst& s, const Ctx& src, const Ctx& dst, const World& w,
                    const ValueP& env) {
  if (s.bindings.size() != dst.entries.size())
    throw SemError("substitution does not mirror its target context");
  return subst_rec(s, s.bindings.size(), src, dst, dst.clocks, w, env);
}

WeakenIso clock_weaken_iso(const Ctx& ctx, const std::string& k, const World& w, int n) {
  SemClock sharp = w.t.fresh();
  Morphism iota = iota_incl(w.t, sharp, n);
  World big = add_clock(w, iota.dst, k, sharp);
  World small = w;
  small.t = iota.dst;
  SyntacticSubst inc = identity_subst(ctx);
  Ctx src = ctx.with_clock(k);
  return {[inc, src, ctx, big](const ValueP& g) { return interp_subst(inc, src, ctx, big, g); },
          [](const ValueP& g) { return g; }, big, small};
}

}  // namespace clott
