#include <sstream>

#include "clott/harness.hpp"

namespace clott {

namespace {

std::string zeros_step(const std::string& k) {
  return "(lam (s : Later " + k + " Str[" + k + "]) pair 0 s)";
}

std::string map_step(const std::string& c) {
  return "(lam (m : Later " + c + " (Str[" + c + "] -> Str[" + c + "])) lam (xs : Str[" + c +
         "]) pair (suc (fst xs)) (tlam (a : " + c + ") (m [a]) ((snd xs) [a])))";
}

std::string fix(const std::string& k, const std::string& step) {
  return "(" + step + " (dfix " + k + " " + step + "))";
}

std::string nats_step(const std::string& c) {
  return "(lam (s : Later " + c + " Str[" + c + "]) pair 0 (tlam (a : " + c + ") " +
         fix(c, map_step(c)) + " (s [a])))";
}

std::string lift_step(const std::string& k) {
  return "(lam (q : Later " + k + " (Pi (y : Str[" + k + "]) Lift " + k +
         " (x. Id Nat x x) y)) lam (y : Str[" + k + "]) pair (refl (fst y)) (tlam (a : " + k +
         ") (q [a]) ((snd y) [a])))";
}

const std::string lift_goal = "Pi (y : Str[k]) Lift k (x. Id Nat x x) y";

}  // namespace

std::string stream_term(const std::string& name) {
  if (name == "zeros") return "clam c " + fix("c", zeros_step("c"));
  if (name == "nats") return "clam c " + fix("c", nats_step("c"));
  if (name == "hd") return "lam (xs : Forall c Str[c]) fst (xs [k0])";
  if (name == "tl") return "lam (xs : Forall c Str[c]) clam c (adv (snd (xs [j])) j c)";
  throw std::invalid_argument("unknown stream term " + name);
}

const std::vector<TermFixture>& typing_corpus() {
  static const std::vector<TermFixture> c = {
      {"next", "clocks k; lam (x : Nat) tlam (a : k) x : Nat -> Later k Nat"},
      {"apply", "clocks k; lam (f : Later k (Nat -> Nat)) lam (y : Later k Nat) "
                "tlam (a : k) (f [a]) (y [a]) : Later k (Nat -> Nat) -> Later k Nat -> Later k Nat"},
      {"apply-dep",
       "clocks k; lam (f : Later (a : k) (Pi (n : Nat) Id Nat n n)) lam (y : Later k Nat) "
       "tlam (a : k) (f [a]) (y [a]) : (Later (a : k) (Pi (n : Nat) Id Nat n n)) -> "
       "Pi (y : Later k Nat) Later (a : k) Id Nat (y [a]) (y [a])"},
      {"zeros", "clocks k; " + fix("k", zeros_step("k")) + " : Str[k]"},
      {"zeros-delayed", "clocks k; dfix k " + zeros_step("k") + " : Later k Str[k]"},
      {"zeros-all", "clocks k0; " + stream_term("zeros") + " : Forall c Str[c]"},
      {"nats-all", "clocks k0; " + stream_term("nats") + " : Forall c Str[c]"},
      {"hd", "clocks k0; " + stream_term("hd") + " : (Forall c Str[c]) -> Nat"},
      {"tl", "clocks k0; " + stream_term("tl") + " : (Forall c Str[c]) -> Forall c Str[c]"},
      {"lift-step", "clocks k; " + lift_step("k") + " : Later k (" + lift_goal + ") -> " + lift_goal},
      {"lift-proof", "clocks k; " + fix("k", lift_step("k")) + " : " + lift_goal},
      {"two-clock", "clocks k k2; ctx x : Later k Nat, y : Later k2 Nat; "
                    "tlam (a : k) pair (x [a]) y : Later k (Sig (n : Nat) Later k2 Nat)"},
      {"tick-weaken", "clocks k; ctx x : Later k Nat; tlam (a : k) lam (z : Nat) suc (x [a]) "
                      ": Later k (Nat -> Nat)"},
      {"tick-weaken-tick", "clocks k; ctx x : Later k Nat; tlam (a : k) tlam (b : k) x [a] "
                           ": Later k (Later k Nat)"},
      {"adv-next", "clocks k; ctx x : Nat; adv (tlam (a : j) suc x) j k : Nat"},
      {"clock-app", "clocks k; ctx xs : Forall c Str[c]; xs [k] : Str[k]"},
      {"fix-lambda", "clocks k; tlam (a : k) " + fix("k", zeros_step("k")) + " : Later k Str[k]"},
      {"cirr", "clocks k; ctx x : Forall c Nat; cirr x : Forall c Forall d Id Nat (x [c]) (x [d])"},
      {"tirr", "clocks k; ctx x : Later k Nat; tirr k x : Later (a : k) Later (b : k) "
               "Id Nat (x [a]) (x [b])"},
      {"natrec", "clocks k; lam (n : Nat) natrec 0 (lam (m : Nat) lam (r : Nat) suc (suc r)) n "
                 ": Nat -> Nat"},
      {"sigma-eta", "clocks k; ctx p : Sig (x : Nat) Id Nat x x; pair (fst p) (snd p) "
                    ": Sig (x : Nat) Id Nat x x"},
      {"pred-tail", "clocks k; ctx xs : Str[k], h : Lift k (x. Id Nat x x) xs; "
                    "tlam (a : k) (snd h) [a] : Later (a : k) Lift k (x. Id Nat x x) ((snd xs) [a])"},
  };
  return c;
}

const std::vector<RejectFixture>& rejected_corpus() {
  static const std::vector<RejectFixture> c = {
      {"double-tick", "clocks k; lam (x : Later k (Later k Nat)) tlam (a : k) x [a] [a] "
                      ": Later k (Later k Nat) -> Later k Nat",
       "tick-app"},
      {"dfix-force", "clocks k; dfix k (lam (x : Later k Str[k]) adv x k1 k) : Later k Str[k]",
       "diamond"},
      {"wrong-clock-tick", "clocks k k2; ctx x : Later k Nat; tlam (a : k2) x [a] : Later k2 Nat",
       "tick-app"},
      {"not-later", "clocks k; lam (x : Nat) x : Nat -> Later k Nat", "conv"},
      {"clock-app-not-quantified", "clocks k; ctx x : Nat; x [k] : Nat", "clock-app"},
      {"clock-escape", "clocks k; clam c (tlam (a : c) 0) : Later k Nat", "conv"},
  };
  return c;
}

const std::vector<CtxFixture>& context_corpus() {
  static const std::vector<CtxFixture> c = {
      {"empty", "clocks k;"},
      {"nat", "clocks k; ctx x : Nat"},
      {"stream", "clocks k; ctx xs : Str[k]"},
      {"nat-tick", "clocks k; ctx x : Nat, a : k"},
      {"two-clock-nat", "clocks k k2; ctx x : Nat"},
      {"two-clock-tick", "clocks k k2; ctx a : k, y : Nat"},
      {"two-clock-later", "clocks k k2; ctx x : Later k2 Nat"},
  };
  return c;
}

const std::vector<NuFixture>& clock_maps() {
  static const std::vector<NuFixture> c = {
      {"identity", {"k"}, {"k"}, {{"k", "k"}}},
      {"identity2", {"k", "k2"}, {"k", "k2"}, {{"k", "k"}, {"k2", "k2"}}},
      {"collapse", {"k", "k2"}, {"k"}, {{"k", "k"}, {"k2", "k"}}},
      {"swap", {"k", "k2"}, {"k", "k2"}, {{"k", "k2"}, {"k2", "k"}}},
      {"into-second", {"k"}, {"k", "k2"}, {{"k", "k2"}}},
  };
  return c;
}

const std::vector<SubstFixture>& subst_corpus() {
  static const std::vector<SubstFixture> c = {
      {"empty-fix", "clocks k; ctx x : Nat", "clocks k;", "k -> k;",
       "dfix k " + zeros_step("k")},
      {"empty-rename", "clocks k k2;", "clocks j;", "j -> k2;", "dfix j " + zeros_step("j")},
      {"empty-collapse", "clocks k;", "clocks j j2;", "j -> k, j2 -> k;",
       "lam (x : Later j Nat) lam (y : Later j2 Nat) pair x y"},
      {"term-nat", "clocks k; ctx x : Nat", "clocks k; ctx y : Nat", "k -> k; y := suc x",
       "pair y (tlam (a : k) y)"},
      {"term-stream", "clocks k; ctx xs : Str[k]", "clocks k; ctx ys : Str[k]",
       "k -> k; ys := pair 1 (snd xs)", "snd ys"},
      {"term-dependent", "clocks k; ctx x : Nat", "clocks k; ctx y : Nat, e : Id Nat y y",
       "k -> k; y := x, e := refl x", "pair e y"},
      {"term-later", "clocks k; ctx x : Later k Nat", "clocks k; ctx f : Later k Nat",
       "k -> k; f := tlam (a : k) suc (x [a])", "tlam (b : k) suc (f [b])"},
      {"tick-rename", "clocks k; ctx x : Later k Nat, a : k", "clocks k; ctx y : Later k Nat, b : k",
       "k -> k; y := x, b := a", "y [b]"},
      {"tick-weaken-term", "clocks k; ctx x : Later k Nat, a : k, z : Nat",
       "clocks k; ctx y : Later k Nat, b : k", "k -> k; y := x, b := a", "suc (y [b])"},
      {"tick-weaken-tick", "clocks k; ctx x : Later k Nat, a : k, a2 : k",
       "clocks k; ctx y : Later k Nat, b : k", "k -> k; y := x, b := a", "pair (y [b]) 0"},
      {"tick-two-clock", "clocks k; ctx x : Later k Nat, a : k",
       "clocks j j2; ctx y : Later j Nat, b : j", "j -> k, j2 -> k; y := x, b := a",
       "lam (q : Later j2 Nat) y [b]"},
      {"tick-then-term", "clocks k; ctx x : Later k Nat, a : k",
       "clocks k; ctx y : Later k Nat, b : k, n : Nat", "k -> k; y := x, b := a, n := x [a]",
       "suc n"},
      {"tick-skip-earlier", "clocks k; ctx x : Later k Nat, a : k, w : Later k Nat, a2 : k",
       "clocks k; ctx y : Later k Nat, b : k", "k -> k; y := w, b := a2", "y [b]"},
      {"diamond-next", "clocks k; ctx x : Nat", "clocks k j; ctx y : Nat, b : j",
       "k -> k, j -> k; y := x, b := <> k", "(tlam (c : j) suc y) [b]"},
      {"diamond-dfix", "clocks k; ctx x : Nat", "clocks k j; ctx y : Nat, b : j",
       "k -> k, j -> k; y := x, b := <> k",
       "(dfix j (lam (s : Later j Str[j]) pair y s)) [b]"},
      {"diamond-forall", "clocks k; ctx xs : Forall c Later c Nat",
       "clocks k j; ctx ys : Forall c Later c Nat, b : j", "k -> k, j -> k; ys := xs, b := <> k",
       "(ys [j]) [b]"},
      {"diamond-second", "clocks k k2; ctx x : Nat", "clocks k k2 j; ctx y : Nat, b : j",
       "k -> k, k2 -> k2, j -> k2; y := x, b := <> k2", "(tlam (c : j) pair y y) [b]"},
      {"diamond-after-tick", "clocks k; ctx x : Later k Nat, a : k",
       "clocks k j; ctx y : Later k Nat, c : k, b : j", "k -> k, j -> k; y := x, c := a, b := <> k",
       "(tlam (d : j) suc (y [c])) [b]"},
      {"diamond-then-term", "clocks k; ctx x : Nat", "clocks k j; ctx y : Nat, b : j, z : Nat",
       "k -> k, j -> k; y := x, b := <> k, z := suc x", "pair z ((tlam (c : j) y) [b])"},
      {"projection", "clocks k; ctx x : Nat, z : Nat", "clocks k; ctx x : Nat", "k -> k; x := x",
       "suc x"},
      {"projection-clock", "clocks k k2; ctx x : Nat", "clocks k; ctx x : Nat", "k -> k; x := x",
       "tlam (a : k) x"},
      {"identity", "clocks k; ctx x : Later k Nat, a : k", "clocks k; ctx x : Later k Nat, a : k",
       "k -> k; x := x, a := a", "x [a]"},
      {"type-id", "clocks k; ctx x : Nat", "clocks k; ctx y : Nat", "k -> k; y := 2",
       "Id Nat y 2", true},
      {"type-later", "clocks k; ctx x : Nat", "clocks k; ctx y : Later k Nat",
       "k -> k; y := tlam (a : k) x", "Later (a : k) Id Nat (y [a]) (y [a])", true},
      {"type-lift", "clocks k; ctx xs : Str[k]", "clocks k; ctx ys : Str[k]",
       "k -> k; ys := pair 0 (snd xs)", "Lift k (x. Id Nat x 0) ys", true},
      {"type-collapse", "clocks k;", "clocks j j2;", "j -> k, j2 -> k;", "Later j (Later j2 Nat)",
       true},
      {"type-diamond", "clocks k; ctx x : Nat", "clocks k j; ctx y : Nat, b : j",
       "k -> k, j -> k; y := x, b := <> k", "Later j (Id Nat y y)", true},
  };
  return c;
}

const std::vector<EqFixture>& beta_eta_corpus() {
  static const std::vector<EqFixture> c = {
      {"tick-beta", "clocks k; ctx y : Later k Nat, b : k", "(tlam (a : k) suc (y [a])) [b]",
       "suc (y [b])", "Nat"},
      {"tick-eta", "clocks k; ctx y : Later k Nat", "tlam (a : k) y [a]", "y", "Later k Nat"},
      {"tick-eta-stream", "clocks k; ctx xs : Str[k]", "tlam (a : k) (snd xs) [a]", "snd xs",
       "Later k Str[k]"},
      {"clock-beta", "clocks k; ctx x : Nat", "(clam c (tlam (a : c) x)) [k]", "tlam (a : k) x",
       "Later k Nat"},
      {"clock-beta-stream", "clocks k; ", "(" + stream_term("zeros") + ") [k]",
       fix("k", zeros_step("k")), "Str[k]"},
      {"clock-eta", "clocks k; ctx xs : Forall c Str[c]", "clam c (xs [c])", "xs",
       "Forall c Str[c]"},
      {"clock-eta-nat", "clocks k k2; ctx x : Forall c Nat", "clam d (x [d])", "x",
       "Forall c Nat"},
      {"pi-beta", "clocks k; ctx x : Nat", "(lam (z : Nat) pair z (suc z)) x", "pair x (suc x)",
       "Sig (n : Nat) Nat"},
      {"pi-eta", "clocks k; ctx f : Later k Nat -> Nat", "lam (z : Later k Nat) f z", "f",
       "Later k Nat -> Nat"},
      {"sigma-beta-fst", "clocks k; ctx x : Nat, y : Later k Nat", "fst (pair x y)", "x", "Nat"},
      {"sigma-beta-snd", "clocks k; ctx x : Nat, y : Later k Nat", "snd (pair x y)", "y",
       "Later k Nat"},
      {"sigma-eta", "clocks k; ctx xs : Str[k]", "pair (fst xs) (snd xs)", "xs", "Str[k]"},
      {"natrec-suc", "clocks k; ctx x : Nat", "natrec x (lam (m : Nat) lam (r : Nat) suc r) 2",
       "suc (suc x)", "Nat"},
  };
  return c;
}

const std::vector<EqFixture>& fixpoint_corpus() {
  static const std::vector<EqFixture> c = {
      {"zeros", "clocks k;", "adv (dfix j " + zeros_step("j") + ") j k", fix("k", zeros_step("k")),
       "Str[k]"},
      {"nats", "clocks k;", "adv (dfix j " + nats_step("j") + ") j k", fix("k", nats_step("k")),
       "Str[k]"},
      {"lift-proof", "clocks k;", "adv (dfix j " + lift_step("j") + ") j k",
       fix("k", lift_step("k")), lift_goal},
      {"map", "clocks k2 k;", "adv (dfix j " + map_step("j") + ") j k2", fix("k2", map_step("k2")),
       "Str[k2] -> Str[k2]"},
  };
  return c;
}

const std::vector<LaterFixture>& later_corpus() {
  static const std::vector<LaterFixture> c = {
      {"next", "clocks k; ctx x : Nat", "tlam (a : k) suc x", "k"},
      {"variable", "clocks k; ctx x : Later k Nat", "x", "k"},
      {"stream-tail", "clocks k; ctx xs : Str[k]", "snd xs", "k"},
      {"dfix-zeros", "clocks k;", "dfix k " + zeros_step("k"), "k"},
      {"nested", "clocks k; ctx x : Later k (Later k Nat)", "x", "k"},
      {"two-clock-sync", "clocks k k2; ctx x : Later k Nat, y : Later k2 Nat",
       "tlam (a : k) pair (x [a]) y", "k"},
      {"two-clock-other", "clocks k k2; ctx x : Later k Nat, y : Later k2 Nat", "y", "k2"},
      {"dependent-proof", "clocks k; ctx x : Later k Nat, p : Later (a : k) Id Nat (x [a]) (x [a])",
       "p", "k"},
  };
  return c;
}

const std::vector<DiamondFixture>& diamond_corpus() {
  static const std::vector<DiamondFixture> c = {
      {"inner-clock", "clocks k;", "tlam (b : j) tlam (c : j) 0", "tlam (b : j) tlam (c : k) 0",
       "j", "k"},
      {"inner-clock-data", "clocks k; ctx y : Nat", "tlam (b : j) pair y (tlam (c : j) y)",
       "tlam (b : j) pair y (tlam (c : k) y)", "j", "k"},
      {"two-clock", "clocks k k2;", "tlam (b : j) tlam (c : j) 1", "tlam (b : j) tlam (c : k2) 1",
       "j", "k2"},
      {"stream", "clocks k;", "tlam (b : j) dfix j " + zeros_step("j"),
       "tlam (b : j) dfix k " + zeros_step("k"), "j", "k"},
  };
  return c;
}

const std::vector<ForallFixture>& forall_corpus() {
  static const std::vector<ForallFixture> c = {
      {"constant", "clocks k k2;", "clam c 3", "k", "k2"},
      {"head-zeros", "clocks k k2;", "clam c (fst ((" + stream_term("zeros") + ") [c]))", "k",
       "k2"},
      {"head-nats-tail", "clocks k k2;",
       "clam c (fst (((" + stream_term("tl") + ") (" + stream_term("nats") + ")) [c]))", "k",
       "k2"},
      {"variable", "clocks k k2; ctx x : Forall c Nat", "x", "k", "k2"},
      {"head-variable", "clocks k k2; ctx xs : Forall c Sig (n : Nat) Later c Nat", "clam c (fst (xs [c]))", "k",
       "k2"},
      {"same-clock", "clocks k k2; ctx xs : Forall c Sig (n : Nat) Later c Nat", "clam c (fst (xs [c]))",
       "k", "k"},
  };
  return c;
}

const std::vector<CarrierFixture>& carrier_corpus() {
  static const std::vector<CarrierFixture> c = {
      {"nat", "clocks k;", "Nat"},
      {"later-nat", "clocks k;", "Later k Nat"},
      {"stream", "clocks k;", "Str[k]"},
      {"later-stream", "clocks k;", "Later k Str[k]"},
      {"sigma-id", "clocks k;", "Sig (x : Nat) Id Nat x x"},
      {"id-open", "clocks k; ctx x : Nat", "Id Nat x 2"},
      {"lift", "clocks k; ctx xs : Str[k]", "Lift k (x. Id Nat x 0) xs"},
      {"two-clock", "clocks k k2;", "Sig (x : Later k Nat) Later k2 Nat"},
  };
  return c;
}

SyntacticSubst parse_subst(const std::string& text, const Ctx& src, const Ctx& dst) {
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  auto split = [&](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
      if (!trim(item).empty()) out.push_back(trim(item));
    return out;
  };
  size_t semi = text.find(';');
  if (semi == std::string::npos) throw SyntaxError("substitution needs a ';'");
  SyntacticSubst s;
  for (auto& m : split(text.substr(0, semi), ',')) {
    size_t arrow = m.find("->");
    if (arrow == std::string::npos) throw SyntaxError("clock map entry without '->': " + m);
    s.nu[trim(m.substr(0, arrow))] = trim(m.substr(arrow + 2));
  }
  for (auto& b : split(text.substr(semi + 1), ',')) {
    size_t eq = b.find(":=");
    if (eq == std::string::npos) throw SyntaxError("binding without ':=': " + b);
    Binding bd;
    bd.name = trim(b.substr(0, eq));
    std::string rhs = trim(b.substr(eq + 2));
    const Entry* e = dst.find(bd.name);
    if (!e) throw ScopeError("binding for unknown entry " + bd.name, bd.name);
    if (rhs.rfind("<>", 0) == 0) {
      bd.kind = Binding::Diamond;
      bd.clock = e->clock;
      bd.target = trim(rhs.substr(2));
    } else if (e->tick) {
      bd.kind = Binding::Tick;
      bd.tick = rhs;
    } else {
      bd.kind = Binding::Term;
      bd.term = parse_expr(rhs, src);
    }
    s.bindings.push_back(bd);
  }
  return s;
}

}  // namespace clott
