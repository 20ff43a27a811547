#include "clott/harness.hpp"

#include <algorithm>
#include <functional>

namespace clott {

size_t Report::count(const std::string& status) const {
  return std::count_if(checks.begin(), checks.end(),
                       [&](const Check& c) { return c.status == status; });
}

bool Report::ok() const { return count("pass") == checks.size(); }

json Report::to_json() const {
  json cs = json::array();
  for (auto& c : checks) {
    json o = {{"lemma", c.lemma}, {"fixture", c.fixture}, {"world", c.world}, {"status", c.status}};
    if (c.status != "pass") o["detail"] = c.detail;
    cs.push_back(o);
  }
  return {{"suite", suite}, {"checks", cs}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n = {
      "triangle",         "transpose",       "reindex",           "exchange-eqs",
      "subst-lemma",      "clock-weaken-iso", "beta-eta",         "fixpoint",
      "streams",          "tick-irrelevance", "diamond-choice",   "exchange",
      "clock-irrelevance", "negative-typing", "soundness"};
  return n;
}

void configure(const SuiteConfig& cfg) {
  config().trunc = cfg.trunc;
  config().natBound = cfg.natBound;
}

namespace {

using Body = std::function<std::string()>;  // empty string: pass

struct Run {
  const SuiteConfig& cfg;
  Report rep;

  bool selected(const std::string& fixture) const {
    return cfg.corpus.empty() ||
           std::find(cfg.corpus.begin(), cfg.corpus.end(), fixture) != cfg.corpus.end();
  }

  void record(const std::string& lemma, const std::string& fixture, const World* w,
              const Body& body) {
    Check c{lemma, fixture, w ? to_json(*w) : json(nullptr), "pass", ""};
    try {
      c.detail = body();
      if (!c.detail.empty()) c.status = "fail";
    } catch (const TruncationError& e) {
      c.status = "truncated";
      c.detail = e.what();
    } catch (const TypeError& e) {
      c.status = "error";
      c.detail = e.rule + ": " + e.what();
    } catch (const std::exception& e) {
      c.status = "error";
      c.detail = e.what();
    }
    rep.checks.push_back(std::move(c));
  }

  // one check per world; body runs at that world
  void per_world(const std::string& lemma, const std::string& fixture,
                 const std::vector<std::string>& delta,
                 const std::function<std::string(const World&)>& body) {
    for (auto& w : enumerate_worlds(delta, cfg.trunc))
      record(lemma, fixture, &w, [&] { return body(w); });
  }

  // fixture setup; a failure is recorded and the fixture skipped
  bool setup(const std::string& fixture, const std::function<void()>& f) {
    bool ok = true;
    record("fixture-typechecks", fixture, nullptr, [&] {
      ok = false;
      f();
      ok = true;
      return std::string();
    });
    if (ok) rep.checks.pop_back();
    return ok;
  }
};

std::string mismatch(const ValueP& env, const ValueP& a, const ValueP& b) {
  return "env " + show(env) + ": " + show(a) + " vs " + show(b);
}

bool contains(const std::vector<ValueP>& xs, const ValueP& v) {
  for (auto& x : xs)
    if (value_eq(x, v)) return true;
  return false;
}

std::string same_set(const std::vector<ValueP>& a, const std::vector<ValueP>& b) {
  for (auto& x : a)
    if (!contains(b, x)) return "element " + show(x) + " missing on the right";
  for (auto& x : b)
    if (!contains(a, x)) return "element " + show(x) + " missing on the left";
  return "";
}

Ctx load_ctx(const std::string& text) {
  Ctx c = parse_ctx(text);
  Checker().check_ctx(c);
  return c;
}

ExprP load_term(const std::string& text, const Ctx& ctx, ExprP* type = nullptr) {
  ExprP t = parse_expr(text, ctx);
  Derivation d = Checker().infer(ctx, t);
  if (type) *type = d.concl.type;
  return t;
}

ExprP load_checked(const std::string& text, const Ctx& ctx, const ExprP& type) {
  ExprP t = parse_expr(text, ctx);
  Checker().check(ctx, t, type);
  return t;
}

ExprP load_type(const std::string& text, const Ctx& ctx) {
  ExprP A = parse_expr(text, ctx);
  Checker().check_type(ctx, A);
  return A;
}

std::string fresh_tick_name(const Ctx& ctx, const std::string& base) {
  return fresh_name(base, ctx.names());
}

std::string fresh_clock(const Ctx& ctx, const std::string& base) {
  std::set<std::string> avoid(ctx.clocks.begin(), ctx.clocks.end());
  return fresh_name(base, avoid);
}

// both sides evaluated at every environment
std::string eval_agree(const ExprP& l, const ExprP& r, const Ctx& ctx, const World& w) {
  for (auto& g : ctx_elements(ctx, w)) {
    ValueP a = eval(l, ctx, w, g), b = eval(r, ctx, w, g);
    if (!value_eq(a, b)) return mismatch(g, a, b);
  }
  return "";
}

std::map<std::string, std::string> compose_nu(const std::map<std::string, std::string>& mu,
                                              const std::map<std::string, std::string>& nu) {
  std::map<std::string, std::string> out;
  for (auto& [k, v] : nu) out[k] = mu.at(v);
  return out;
}

bool same_clocks(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return std::set<std::string>(a.begin(), a.end()) == std::set<std::string>(b.begin(), b.end());
}

// ---------------------------------------------------------------- suites

void triangle(Run& r) {
  for (auto& fx : context_corpus()) {
    if (!r.selected(fx.name)) continue;
    Ctx ctx;
    if (!r.setup(fx.name, [&] { ctx = load_ctx(fx.text); })) continue;
    Presheaf F = interp_ctx(ctx);
    for (auto& k : ctx.clocks) {
      SemMap eps = [k](const World& w, const ValueP& x) { return counit(k, w, x); };
      SemMap eta = [k](const World& w, const ValueP& x) { return unit(k, w, x); };
      r.per_world("later-triangle", fx.name + "@" + k, ctx.clocks, [&](const World& w) {
        for (auto& x : later(k, F).elements(w)) {
          ValueP y = later_map(k, eps, w, unit(k, w, x));
          if (!value_eq(x, y)) return mismatch(x, x, y);
        }
        return std::string();
      });
      r.per_world("earlier-triangle", fx.name + "@" + k, ctx.clocks, [&](const World& w) {
        for (auto& x : earlier(k, F).elements(w)) {
          ValueP y = counit(k, w, earlier_map(k, eta, w, x));
          if (!value_eq(x, y)) return mismatch(x, x, y);
        }
        return std::string();
      });
    }
  }
}

void transpose(Run& r) {
  for (auto& fx : later_corpus()) {
    if (!r.selected(fx.name)) continue;
    Ctx ctx, up;
    ExprP t, u;
    std::string a;
    if (!r.setup(fx.name, [&] {
          ctx = load_ctx(fx.ctx);
          t = load_term(fx.term, ctx);
          a = fresh_tick_name(ctx, "a");
          up = ctx.with(Entry{true, a, nullptr, fx.clock});
          u = mk::tapp(t, a);
          Checker().infer(up, u);
        }))
      continue;
    const std::string k = fx.clock;
    SemMap b = [t, ctx](const World& w, const ValueP& g) { return eval(t, ctx, w, g); };
    SemMap am = [u, up](const World& w, const ValueP& x) { return eval(u, up, w, x); };
    r.per_world("transpose-forward-back", fx.name, ctx.clocks, [&](const World& w) {
      SemMap round = transpose_fwd(k, transpose_bwd(k, b));
      for (auto& g : ctx_elements(ctx, w)) {
        ValueP x = b(w, g), y = round(w, g);
        if (!value_eq(x, y)) return mismatch(g, x, y);
      }
      return std::string();
    });
    r.per_world("transpose-back-forward", fx.name, ctx.clocks, [&](const World& w) {
      SemMap round = transpose_bwd(k, transpose_fwd(k, am));
      for (auto& g : ctx_elements(up, w)) {
        ValueP x = am(w, g), y = round(w, g);
        if (!value_eq(x, y)) return mismatch(g, x, y);
      }
      return std::string();
    });
    ExprP abs = mk::tlam(a, k, u);
    r.per_world("tick-abstraction-transposes", fx.name, ctx.clocks, [&](const World& w) {
      SemMap fwd = transpose_fwd(k, am);
      for (auto& g : ctx_elements(ctx, w)) {
        ValueP x = eval(abs, ctx, w, g), y = fwd(w, g);
        if (!value_eq(x, y)) return mismatch(g, x, y);
      }
      return std::string();
    });
  }
}

void reindex_suite(Run& r) {
  for (auto& fx : context_corpus()) {
    if (!r.selected(fx.name)) continue;
    Ctx ctx;
    if (!r.setup(fx.name, [&] { ctx = load_ctx(fx.text); })) continue;
    Presheaf F = interp_ctx(ctx);
    for (auto& nu : clock_maps()) {
      if (nu.delta2 != ctx.clocks) continue;
      for (auto& k : nu.delta2) {
        r.per_world("reindex-commutes-with-later", fx.name + "/" + nu.name + "@" + k, nu.delta,
                    [&](const World& w) {
                      auto lhs = reindex(nu.nu, nu.delta2, later(k, F)).elements(w);
                      auto rhs = later(nu.nu.at(k), reindex(nu.nu, nu.delta2, F)).elements(w);
                      return same_set(lhs, rhs);
                    });
      }
    }
  }
}

void exchange_eqs(Run& r) {
  for (auto& fx : context_corpus()) {
    if (!r.selected(fx.name)) continue;
    Ctx ctx;
    if (!r.setup(fx.name, [&] { ctx = load_ctx(fx.text); })) continue;
    Presheaf G = interp_ctx(ctx);
    for (auto& nu : clock_maps()) {
      if (nu.delta2 != ctx.clocks) continue;
      for (auto& k : nu.delta2) {
        const std::string nk = nu.nu.at(k);
        SemMap e = [&nu, k](const World& w, const ValueP& x) {
          return exchange(nu.nu, nu.delta2, k, w, x);
        };
        std::string fname = fx.name + "/" + nu.name + "@" + k;
        r.per_world("exchange-unit", fname, nu.delta, [&](const World& w) {
          World wn = reindex(w, nu.delta2, nu.nu);
          for (auto& g : G.elements(wn)) {
            ValueP a = later_map(nk, e, w, unit(nk, w, g)), b = unit(k, wn, g);
            if (!value_eq(a, b)) return mismatch(g, a, b);
          }
          return std::string();
        });
        r.per_world("exchange-counit", fname, nu.delta, [&](const World& w) {
          World wn = reindex(w, nu.delta2, nu.nu);
          Presheaf src = earlier(nk, reindex(nu.nu, nu.delta2, later(k, G)));
          for (auto& x : src.elements(w)) {
            ValueP a = counit(k, wn, exchange(nu.nu, nu.delta2, k, w, x)), b = counit(nk, w, x);
            if (!value_eq(a, b)) return mismatch(x, a, b);
          }
          return std::string();
        });
      }
    }
  }
}

void exchange_suite(Run& r) {
  for (auto& fx : context_corpus()) {
    if (!r.selected(fx.name)) continue;
    Ctx ctx;
    if (!r.setup(fx.name, [&] { ctx = load_ctx(fx.text); })) continue;
    Presheaf G = interp_ctx(ctx);
    std::map<std::string, std::string> id;
    for (auto& k : ctx.clocks) id[k] = k;
    for (auto& k : ctx.clocks) {
      r.per_world("exchange-identity", fx.name + "@" + k, ctx.clocks, [&](const World& w) {
        for (auto& x : earlier(k, G).elements(w)) {
          ValueP y = exchange(id, ctx.clocks, k, w, x);
          if (!value_eq(x, y)) return mismatch(x, x, y);
        }
        return std::string();
      });
    }
    for (auto& nu : clock_maps()) {
      if (nu.delta2 != ctx.clocks) continue;
      for (auto& k : nu.delta2) {
        const std::string nk = nu.nu.at(k);
        std::string fname = fx.name + "/" + nu.name + "@" + k;
        Presheaf src = earlier(nk, reindex(nu.nu, nu.delta2, G));
        r.per_world("exchange-concrete-abstract", fname, nu.delta, [&](const World& w) {
          for (auto& x : src.elements(w)) {
            ValueP a = exchange(nu.nu, nu.delta2, k, w, x);
            ValueP b = exchange_abstract(nu.nu, nu.delta2, k, w, x);
            if (!value_eq(a, b)) return mismatch(x, a, b);
          }
          return std::string();
        });
        r.per_world("next-reindex", fname, nu.delta, [&](const World& w) {
          World wn = reindex(w, nu.delta2, nu.nu);
          for (auto& g : G.elements(wn)) {
            ValueP a = next(k, wn, g), b = next(nk, w, g);
            if (!value_eq(a, b)) return mismatch(g, a, b);
          }
          return std::string();
        });
        r.per_world("projection-after-exchange", fname, nu.delta, [&](const World& w) {
          World wn = reindex(w, nu.delta2, nu.nu);
          for (auto& x : src.elements(w)) {
            ValueP a = p_earlier(k, wn, exchange(nu.nu, nu.delta2, k, w, x));
            ValueP b = p_earlier(nk, w, x);
            if (!value_eq(a, b)) return mismatch(x, a, b);
          }
          return std::string();
        });
        // composition law against every mu : nu.delta -> delta
        for (auto& mu : clock_maps()) {
          if (!same_clocks(mu.delta2, nu.delta)) continue;
          auto mn = compose_nu(mu.nu, nu.nu);
          Presheaf src2 = earlier(mu.nu.at(nk), reindex(mn, nu.delta2, G));
          r.per_world("exchange-composition", fname + "/" + mu.name, mu.delta,
                      [&](const World& w) {
                        World wm = reindex(w, mu.delta2, mu.nu);
                        for (auto& x : src2.elements(w)) {
                          ValueP a = exchange(mn, nu.delta2, k, w, x);
                          ValueP b = exchange(nu.nu, nu.delta2, k, wm,
                                              exchange(mu.nu, mu.delta2, nk, w, x));
                          if (!value_eq(a, b)) return mismatch(x, a, b);
                        }
                        return std::string();
                      });
        }
      }
    }
    // the tick constant as a substitution
    std::string j = fresh_clock(ctx, "j");
    for (auto& target : ctx.clocks) {
      SyntacticSubst s24 = identity_subst(ctx);
      s24.nu[j] = target;
      Ctx big = ctx.with_clock(j);
      SyntacticSubst inc = identity_subst(ctx);
      std::string fname = fx.name + "@" + j + "->" + target;
      r.per_world("diamond-projection", fname, ctx.clocks, [&](const World& w) {
        World merged = reindex(w, big.clocks, s24.nu);
        for (auto& g : ctx_elements(ctx, w)) {
          ValueP a = p_earlier(j, merged, diamond_subst(j, target, w, g));
          ValueP b = interp_subst(s24, ctx, big, w, g);
          if (!value_eq(a, b)) return mismatch(g, a, b);
        }
        return std::string();
      });
      // the exact form above sees j in tick sets; this one forgets it
      r.per_world("diamond-projection-forgetting-fresh-clock", fname, ctx.clocks,
                  [&](const World& w) {
                    World merged = reindex(w, big.clocks, s24.nu);
                    for (auto& g : ctx_elements(ctx, w)) {
                      ValueP a = interp_subst(
                          inc, big, ctx, merged,
                          p_earlier(j, merged, diamond_subst(j, target, w, g)));
                      ValueP b = interp_subst(inc, big, ctx, merged,
                                              interp_subst(s24, ctx, big, w, g));
                      if (!value_eq(a, b)) return mismatch(g, a, b);
                    }
                    return std::string();
                  });
      r.per_world("merge-then-weaken", fname, ctx.clocks, [&](const World& w) {
        World merged = reindex(w, big.clocks, s24.nu);
        for (auto& g : ctx_elements(ctx, w)) {
          ValueP a = interp_subst(inc, big, ctx, merged, interp_subst(s24, ctx, big, w, g));
          if (!value_eq(a, g)) return mismatch(g, g, a);
        }
        return std::string();
      });
    }
  }
}

void subst_lemma(Run& r) {
  for (auto& fx : subst_corpus()) {
    if (!r.selected(fx.name)) continue;
    Ctx src, dst;
    SyntacticSubst s;
    ExprP t, st;
    if (!r.setup(fx.name, [&] {
          src = load_ctx(fx.src);
          dst = load_ctx(fx.dst);
          s = parse_subst(fx.subst, src, dst);
          check_subst(s, src, dst);
          if (fx.type) {
            t = load_type(fx.subject, dst);
            st = apply_subst(t, s);
            Checker().check_type(src, st);
          } else {
            ExprP A;
            t = load_term(fx.subject, dst, &A);
            st = apply_subst(t, s);
            Checker().check(src, st, apply_subst(A, s));
          }
        }))
      continue;
    r.per_world("subst-lands-in-target", fx.name, src.clocks, [&](const World& w) {
      World wn = reindex(w, dst.clocks, s.nu);
      for (auto& g : ctx_elements(src, w)) {
        ValueP d = interp_subst(s, src, dst, w, g);
        if (!ctx_member(d, dst, wn)) return "env " + show(g) + ": image " + show(d) + " outside";
      }
      return std::string();
    });
    r.per_world(fx.type ? "subst-lemma-type" : "subst-lemma-term", fx.name, src.clocks,
                [&](const World& w) {
                  World wn = reindex(w, dst.clocks, s.nu);
                  for (auto& g : ctx_elements(src, w)) {
                    ValueP d = interp_subst(s, src, dst, w, g);
                    if (fx.type) {
                      std::string m = same_set(elements(st, src, w, g), elements(t, dst, wn, d));
                      if (!m.empty()) return "env " + show(g) + ": " + m;
                    } else {
                      ValueP a = eval(st, src, w, g), b = eval(t, dst, wn, d);
                      if (!value_eq(a, b)) return mismatch(g, a, b);
                    }
                  }
                  return std::string();
                });
    // composing with identities on either side
    std::vector<std::pair<std::string, SyntacticSubst>> comps;
    try {
      comps.push_back({"compose-identity-left", compose(identity_subst(src), s, src)});
    } catch (const SubstError&) {
    }
    try {
      comps.push_back({"compose-identity-right", compose(s, identity_subst(dst), dst)});
    } catch (const SubstError&) {
    }
    for (auto& [lemma, c] : comps) {
      r.per_world(lemma, fx.name, src.clocks, [&](const World& w) {
        for (auto& g : ctx_elements(src, w)) {
          ValueP a = interp_subst(c, src, dst, w, g), b = interp_subst(s, src, dst, w, g);
          if (!value_eq(a, b)) return mismatch(g, a, b);
        }
        return std::string();
      });
    }
  }
  for (auto& fx : context_corpus()) {
    if (!r.selected(fx.name)) continue;
    Ctx ctx;
    if (!r.setup(fx.name, [&] { ctx = load_ctx(fx.text); })) continue;
    SyntacticSubst id = identity_subst(ctx);
    r.per_world("identity-subst", fx.name, ctx.clocks, [&](const World& w) {
      for (auto& g : ctx_elements(ctx, w)) {
        ValueP a = interp_subst(id, ctx, ctx, w, g);
        if (!value_eq(a, g)) return mismatch(g, g, a);
      }
      return std::string();
    });
  }
}

void clock_weaken_iso_suite(Run& r) {
  for (auto& fx : context_corpus()) {
    if (!r.selected(fx.name)) continue;
    Ctx ctx;
    if (!r.setup(fx.name, [&] { ctx = load_ctx(fx.text); })) continue;
    std::string k = fresh_clock(ctx, "k");
    Ctx big = ctx.with_clock(k);
    r.per_world("weaken-iso-roundtrip", fx.name, ctx.clocks, [&](const World& w) {
      for (int n = 0; n <= r.cfg.trunc.N; ++n) {
        WeakenIso iso = clock_weaken_iso(ctx, k, w, n);
        auto bigEls = ctx_elements(big, iso.big);
        auto smallEls = ctx_elements(ctx, iso.small);
        std::vector<ValueP> image;
        for (auto& g : bigEls) {
          ValueP h = iso.to(g);
          if (!value_eq(iso.from(h), g)) return "n=" + std::to_string(n) + " " + mismatch(g, g, h);
          image.push_back(h);
        }
        for (auto& g : smallEls)
          if (!value_eq(iso.to(iso.from(g)), g))
            return "n=" + std::to_string(n) + " back-and-forth fails at " + show(g);
        std::string m = same_set(image, smallEls);
        if (!m.empty()) return "n=" + std::to_string(n) + " " + m;
      }
      return std::string();
    });
  }
}

void equalities(Run& r, const std::vector<EqFixture>& corpus, const std::string& convLemma,
                const std::string& semLemma) {
  for (auto& fx : corpus) {
    if (!r.selected(fx.name)) continue;
    Ctx ctx;
    ExprP l, rr;
    if (!r.setup(fx.name, [&] {
          ctx = load_ctx(fx.ctx);
          ExprP A = load_type(fx.type, ctx);
          l = load_checked(fx.lhs, ctx, A);
          rr = load_checked(fx.rhs, ctx, A);
        }))
      continue;
    r.record(convLemma, fx.name, nullptr, [&] {
      return conv(l, rr) ? std::string()
                         : "not convertible: " + print(normalize(l)) + " vs " + print(normalize(rr));
    });
    r.per_world(semLemma, fx.name, ctx.clocks,
                [&](const World& w) { return eval_agree(l, rr, ctx, w); });
  }
}

void fixpoint(Run& r) {
  equalities(r, fixpoint_corpus(), "unfold-conv", "unfold-semantic");
  for (auto& fx : fixpoint_corpus()) {
    if (!r.selected(fx.name)) continue;
    Ctx ctx;
    ExprP l, rr;
    if (!r.setup(fx.name, [&] {
          ctx = load_ctx(fx.ctx);
          ExprP body = parse_expr(fx.rhs, ctx);
          if (body->kind != Kind::App || body->b->kind != Kind::Dfix)
            throw std::invalid_argument("fixture is not of the form t (dfix t)");
          const std::string& k = body->b->clock;
          std::string a = fresh_tick_name(ctx, "a");
          l = mk::tlam(a, k, body);
          rr = body->b;
          ExprP A;
          load_term(print(l), ctx, &A);
          Checker().check(ctx, rr, A);
        }))
      continue;
    r.per_world("fix-lambda-form", fx.name, ctx.clocks,
                [&](const World& w) { return eval_agree(l, rr, ctx, w); });
  }
}

// right-nested tuple depth of a stream value, -1 when malformed
int stream_depth(const ValueP& v) {
  if (v->kind != VK::Pair || v->a->kind != VK::Nat) return -1;
  if (v->b->kind == VK::Star) return 1;
  if (v->b->kind != VK::Later) return -1;
  int d = stream_depth(v->b->a);
  return d < 0 ? -1 : d + 1;
}

void streams(Run& r) {
  r.record("stream-prefix", "zeros", nullptr, [&] {
    auto p = stream_prefix(3, "zeros");
    return p == std::vector<long>{0, 0, 0} ? std::string() : "got " + json(p).dump();
  });
  r.record("stream-prefix-empty", "zeros", nullptr, [&] {
    return stream_prefix(0, "zeros").empty() ? std::string() : "nonempty prefix";
  });
  r.record("stream-prefix-increasing", "nats", nullptr, [&] {
    auto p = stream_prefix(r.cfg.trunc.N, "nats");
    for (size_t i = 1; i < p.size(); ++i)
      if (p[i] <= p[i - 1]) return "not increasing: " + json(p).dump();
    return std::string();
  });
  Ctx ctx = load_ctx("clocks k;");
  ExprP str = mk::str("k");
  ExprP zeros = load_term("(lam (s : Later k Str[k]) pair 0 s) (dfix k (lam (s : Later k Str[k]) "
                          "pair 0 s))",
                          ctx);
  r.per_world("stream-shape", "Str", ctx.clocks, [&](const World& w) {
    int n = w.ticks_of("k");
    auto els = elements(str, ctx, w, val::star());
    size_t expect = 1;
    for (int i = 0; i <= n; ++i) expect *= config().natBound;
    if (els.size() != expect)
      return "expected " + std::to_string(expect) + " elements, got " + std::to_string(els.size());
    for (auto& v : els)
      if (stream_depth(v) != n + 1) return "bad shape " + show(v);
    return std::string();
  });
  r.per_world("stream-shape", "zeros", ctx.clocks, [&](const World& w) {
    ValueP v = eval(zeros, ctx, w, val::star());
    if (stream_depth(v) != w.ticks_of("k") + 1) return "bad shape " + show(v);
    for (ValueP c = v;; c = c->b->a) {
      if (c->a->n != 0) return "nonzero entry in " + show(v);
      if (c->b->kind == VK::Star) break;
    }
    return std::string();
  });
}

void tick_irrelevance(Run& r) {
  for (auto& fx : later_corpus()) {
    if (!r.selected(fx.name)) continue;
    Ctx ctx, two;
    ExprP t, ta, tb, l15, r15;
    bool dependent = false;
    if (!r.setup(fx.name, [&] {
          ctx = load_ctx(fx.ctx);
          ExprP L;
          t = load_term(fx.term, ctx, &L);
          L = whnf(L, true);
          dependent = L->kind == Kind::Later && L->name != "_" && occurs_free(L->name, L->b);
          std::string a = fresh_tick_name(ctx, "a");
          two = ctx.with(Entry{true, a, nullptr, fx.clock});
          std::string b = fresh_tick_name(two, "b");
          two = two.with(Entry{true, b, nullptr, fx.clock});
          ta = mk::tapp(t, a);
          tb = mk::tapp(t, b);
          Checker().infer(two, ta);
          Checker().infer(two, tb);
          l15 = mk::tlam(b, fx.clock, t);
          r15 = mk::tlam(b, fx.clock, mk::tlam(a, fx.clock, mk::tapp(t, b)));
          if (dependent) return;  // the swapped form is not typeable at the same type
          ExprP A;
          load_term(print(l15), ctx, &A);
          Checker().check(ctx, r15, A);
        }))
      continue;
    r.per_world("tick-irrelevance", fx.name, ctx.clocks,
                [&](const World& w) { return eval_agree(ta, tb, two, w); });
    if (dependent) continue;
    r.per_world("outer-tick-swap", fx.name, ctx.clocks,
                [&](const World& w) { return eval_agree(l15, r15, ctx, w); });
  }
}

void diamond_choice(Run& r) {
  for (auto& fx : diamond_corpus()) {
    if (!r.selected(fx.name)) continue;
    Ctx ctx;
    ExprP t1, t2;
    if (!r.setup(fx.name, [&] {
          ctx = load_ctx(fx.ctx);
          Ctx inner = ctx.with_clock(fx.bound);
          ExprP s1 = parse_expr(fx.s1, inner), s2 = parse_expr(fx.s2, inner);
          if (alpha_eq(s1, s2)) throw std::invalid_argument("decompositions coincide");
          if (!alpha_eq(rename_clock(s1, fx.bound, fx.target), rename_clock(s2, fx.bound, fx.target)))
            throw std::invalid_argument("decompositions display different terms");
          t1 = mk::diamond(s1, fx.bound, fx.target);
          t2 = mk::diamond(s2, fx.bound, fx.target);
          ExprP A1, A2;
          load_term(print(t1), ctx, &A1);
          load_term(print(t2), ctx, &A2);
          if (!conv(A1, A2)) throw std::invalid_argument("decompositions have different types");
        }))
      continue;
    r.per_world("diamond-independent-of-witness", fx.name, ctx.clocks,
                [&](const World& w) { return eval_agree(t1, t2, ctx, w); });
  }
}

void clock_irrelevance(Run& r) {
  for (auto& fx : forall_corpus()) {
    if (!r.selected(fx.name)) continue;
    Ctx ctx;
    ExprP l, rr;
    if (!r.setup(fx.name, [&] {
          ctx = load_ctx(fx.ctx);
          ExprP A;
          ExprP t = load_term(fx.term, ctx, &A);
          A = whnf(A);
          if (A->kind != Kind::Forall) throw std::invalid_argument("not a clock quantification");
          if (free_clocks(A->b).count(A->clock))
            throw std::invalid_argument("quantified clock occurs in the body type");
          l = mk::capp(t, fx.k1);
          rr = mk::capp(t, fx.k2);
        }))
      continue;
    r.per_world("clock-irrelevance", fx.name, ctx.clocks,
                [&](const World& w) { return eval_agree(l, rr, ctx, w); });
  }
  for (auto& fx : carrier_corpus()) {
    if (!r.selected(fx.name)) continue;
    Ctx ctx;
    ExprP A;
    if (!r.setup(fx.name, [&] {
          ctx = load_ctx(fx.ctx);
          A = load_type(fx.type, ctx);
        }))
      continue;
    r.per_world("fresh-clock-bijection", fx.name, ctx.clocks, [&](const World& w) {
      SemClock sharp = w.t.fresh();
      for (int n = 0; n <= r.cfg.trunc.N; ++n) {
        Morphism iota = iota_incl(w.t, sharp, n);
        World wi = w;
        wi.t = iota.dst;
        for (auto& g : ctx_elements(ctx, w)) {
          auto src = elements(A, ctx, w, g);
          auto dst = elements(A, ctx, wi, restrict(g, iota));
          std::vector<ValueP> img;
          for (auto& a : src) img.push_back(restrict(a, iota));
          for (size_t i = 0; i < src.size(); ++i)
            for (size_t j = i + 1; j < src.size(); ++j)
              if (!value_eq(src[i], src[j]) && value_eq(img[i], img[j]))
                return "not injective at " + show(src[i]) + ", " + show(src[j]);
          for (auto& b : dst)
            if (!contains(img, b)) return "not surjective, missing " + show(b);
          for (auto& b : img)
            if (!contains(dst, b)) return "image " + show(b) + " outside the carrier";
        }
      }
      return std::string();
    });
  }
}

void negative_typing(Run& r) {
  for (auto& fx : rejected_corpus()) {
    if (!r.selected(fx.name)) continue;
    r.record("rejected", fx.name, nullptr, [&] {
      Source s = parse_file(fx.text);
      try {
        if (s.type)
          Checker().check(s.ctx, s.term, s.type);
        else
          Checker().infer(s.ctx, s.term);
      } catch (const TypeError& e) {
        if (e.rule != fx.rule) return "rejected by " + e.rule + " instead of " + fx.rule;
        return std::string();
      }
      return std::string("accepted");
    });
  }
  for (auto& fx : typing_corpus()) {
    if (!r.selected(fx.name)) continue;
    r.record("accepted", fx.name, nullptr, [&] {
      Source s = parse_file(fx.text);
      Checker().check(s.ctx, s.term, s.type);
      return std::string();
    });
  }
}

void soundness(Run& r) {
  for (auto& fx : typing_corpus()) {
    if (!r.selected(fx.name)) continue;
    Source s;
    if (!r.setup(fx.name, [&] {
          s = parse_file(fx.text);
          Checker().check(s.ctx, s.term, s.type);
        }))
      continue;
    r.per_world("interpretation-in-type", fx.name, s.ctx.clocks, [&](const World& w) {
      for (auto& g : ctx_elements(s.ctx, w)) {
        ValueP v = eval(s.term, s.ctx, w, g);
        if (!member(v, s.type, s.ctx, w, g)) return "env " + show(g) + ": " + show(v);
      }
      return std::string();
    });
  }
}

}  // namespace

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  configure(cfg);
  Run r{cfg, Report{name, {}}};
  if (name == "triangle") triangle(r);
  else if (name == "transpose") transpose(r);
  else if (name == "reindex") reindex_suite(r);
  else if (name == "exchange-eqs") exchange_eqs(r);
  else if (name == "subst-lemma") subst_lemma(r);
  else if (name == "clock-weaken-iso") clock_weaken_iso_suite(r);
  else if (name == "beta-eta") equalities(r, beta_eta_corpus(), "conv", "semantic");
  else if (name == "fixpoint") fixpoint(r);
  else if (name == "streams") streams(r);
  else if (name == "tick-irrelevance") tick_irrelevance(r);
  else if (name == "diamond-choice") diamond_choice(r);
  else if (name == "exchange") exchange_suite(r);
  else if (name == "clock-irrelevance") clock_irrelevance(r);
  else if (name == "negative-typing") negative_typing(r);
  else if (name == "soundness") soundness(r);
  else throw std::invalid_argument("unknown suite " + name);
  return r.rep;
}

Report check_equalities(const std::vector<EqFixture>& corpus, const SuiteConfig& cfg) {
  configure(cfg);
  Run r{cfg, Report{"equalities", {}}};
  equalities(r, corpus, "conv", "semantic");
  return r.rep;
}

std::vector<long> stream_prefix(int depth, const std::string& stream) {
  if (depth < 0) throw std::invalid_argument("negative depth");
  if (depth > config().trunc.N)
    throw TruncationError("prefix depth " + std::to_string(depth) + " beyond N = " +
                          std::to_string(config().trunc.N));
  Ctx ctx = parse_ctx("clocks k0;");
  ExprP s = parse_expr(stream_term(stream), ctx);
  ExprP hd = parse_expr(stream_term("hd"), ctx);
  ExprP tl = parse_expr(stream_term("tl"), ctx);
  Checker().check(ctx, s, parse_expr("Forall c Str[c]", ctx));
  World w = world_from_json(json::parse(R"({"clocks":{"l0":0},"valuation":{"k0":"l0"}})"),
                            ctx.clocks);
  std::vector<long> out;
  ExprP cur = s;
  for (int i = 0; i < depth; ++i) {
    ExprP head = mk::app(hd, cur);
    if (i == 0) Checker().infer(ctx, head);
    ValueP v = eval(head, ctx, w, val::star());
    if (v->kind != VK::Nat) throw SemError("stream head is not a number: " + show(v));
    out.push_back(v->n);
    cur = mk::app(tl, cur);
  }
  return out;
}

}  // namespace clott
