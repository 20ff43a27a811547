#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace clott {

enum class Kind {
  Var, Lam, App, Pair, Fst, Snd, Refl, Zero, Suc, NatRec,
  TickLam, TickApp, DiamondApp, ClockLam, ClockApp, Dfix, Cirr, Tirr,
  Nat, Pi, Sigma, Id, Later, Forall, Str, Lift,
  Bracket  // parser only, resolved into TickApp or ClockApp
};

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

// One node type for terms and types.  Field use per kind:
//   Var name | Lam name a(type) b | App a b | Pair a b | Fst/Snd/Refl/Suc/Cirr a
//   NatRec a(z) b(s) c(n) | TickLam name clock b | TickApp a name
//   DiamondApp a(s) clock(bound in s) clock2(target) | ClockLam clock b
//   ClockApp a clock | Dfix clock a | Tirr clock a
//   Pi/Sigma name a b | Id a(type) b c | Later name clock b | Forall clock b
//   Str clock | Lift clock name a(pred, name bound) b(stream)
struct Expr {
  Kind kind;
  std::string name, clock, clock2;
  ExprP a, b, c;
  int line = 0, col = 0;
};

namespace mk {
ExprP var(const std::string& x);
ExprP lam(const std::string& x, ExprP A, ExprP body);
ExprP app(ExprP f, ExprP u);
ExprP pair(ExprP a, ExprP b);
ExprP fst(ExprP a);
ExprP snd(ExprP a);
ExprP refl(ExprP a);
ExprP zero();
ExprP suc(ExprP a);
ExprP num(int n);
ExprP natrec(ExprP z, ExprP s, ExprP n);
ExprP tlam(const std::string& a, const std::string& k, ExprP body);
ExprP tapp(ExprP t, const std::string& a);
ExprP diamond(ExprP s, const std::string& k, const std::string& target);
ExprP clam(const std::string& k, ExprP body);
ExprP capp(ExprP t, const std::string& k);
ExprP dfix(const std::string& k, ExprP t);
ExprP cirr(ExprP t);
ExprP tirr(const std::string& k, ExprP t);
ExprP nat();
ExprP pi(const std::string& x, ExprP A, ExprP B);
ExprP arrow(ExprP A, ExprP B);
ExprP sigma(const std::string& x, ExprP A, ExprP B);
ExprP id(ExprP A, ExprP t, ExprP u);
ExprP later(const std::string& a, const std::string& k, ExprP A);
ExprP later(const std::string& k, ExprP A);
ExprP forall(const std::string& k, ExprP A);
ExprP str(const std::string& k);
ExprP lift(const std::string& k, const std::string& x, ExprP P, ExprP t);
}  // namespace mk

struct Entry {
  bool tick = false;
  std::string name;
  ExprP type;         // term entries
  std::string clock;  // tick entries
};

struct Ctx {
  std::vector<std::string> clocks;
  std::vector<Entry> entries;

  bool has_clock(const std::string& k) const;
  const Entry* find(const std::string& n) const;
  int index_of(const std::string& n) const;
  Ctx prefix(size_t n) const;
  Ctx with(const Entry& e) const;
  Ctx with_clock(const std::string& k) const;
  std::set<std::string> names() const;
};

struct SyntaxError : std::runtime_error {
  int line, col;
  SyntaxError(const std::string& m, int l = 0, int c = 0)
      : std::runtime_error(m), line(l), col(c) {}
};

struct ScopeError : std::runtime_error {
  std::string ident;
  ScopeError(const std::string& m, std::string id)
      : std::runtime_error(m), ident(std::move(id)) {}
};

struct SubstError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::set<std::string> free_vars(const ExprP& e);    // term and tick names
std::set<std::string> free_clocks(const ExprP& e);
bool occurs_free(const std::string& x, const ExprP& e);
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

struct TickImage {
  bool diamond = false;
  std::string tick;    // plain renaming
  std::string clock;   // clock of the tick in the target context
  std::string target;  // clock it lands on in the source
};

// Simultaneous capture-avoiding substitution; unmapped names are left alone.
struct RawSubst {
  std::map<std::string, std::string> clocks;
  std::map<std::string, ExprP> vars;
  std::map<std::string, TickImage> ticks;
};

ExprP subst(const ExprP& e, const RawSubst& s);
ExprP subst_var(const ExprP& e, const std::string& x, ExprP u);
ExprP rename_tick(const ExprP& e, const std::string& from, const std::string& to);
ExprP rename_clock(const ExprP& e, const std::string& from, const std::string& to);

struct Binding {
  enum Kind { Term, Tick, Diamond } kind = Term;
  std::string name;    // name of the target entry
  ExprP term;          // Term
  std::string tick;    // Tick: source tick variable
  std::string clock;   // Diamond: clock of the target tick entry (fresh for the prefix)
  std::string target;  // Diamond: target clock it is merged with
};

// (nu, sigma) : src |-Delta -> dst |-Delta'.  nu is total on Delta'.
struct SyntacticSubst {
  std::map<std::string, std::string> nu;
  std::vector<Binding> bindings;
};

RawSubst to_raw(const SyntacticSubst& s);
ExprP apply_subst(const ExprP& e, const SyntacticSubst& s);
SyntacticSubst identity_subst(const Ctx& c);
SyntacticSubst compose(const SyntacticSubst& outer, const SyntacticSubst& inner,
                       const Ctx& mid);

bool alpha_eq(const ExprP& a, const ExprP& b);

// weakening leaves the term alone but refuses captures
ExprP weaken(const ExprP& j, const Ctx& c, size_t pos, const Entry& e);
Ctx weaken_ctx(const Ctx& c, size_t pos, const Entry& e);
Ctx weaken_clock(const Ctx& c, const std::string& k);

std::string print(const ExprP& e);
std::string print(const Ctx& c);
std::string print(const SyntacticSubst& s);

struct Source {
  Ctx ctx;
  ExprP term;
  ExprP type;  // may be null
};

Source parse_file(const std::string& text);
ExprP parse_expr(const std::string& text, const Ctx& ctx);
ExprP parse_expr(const std::string& text);  // no scope check
Ctx parse_ctx(const std::string& text);     // "clocks k; ctx x : A"
ExprP resolve(const ExprP& e, const Ctx& ctx);

}  // namespace clott
