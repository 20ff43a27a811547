#include <cctype>
#include <set>

#include "clott/syntax.hpp"

namespace clott {

namespace {

struct Tok {
  enum T { Ident, Num, Sym, End } t;
  std::string s;
  int line, col;
};

std::vector<Tok> lex(const std::string& src) {
  std::vector<Tok> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto adv = [&](size_t n) {
    for (size_t j = 0; j < n; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace((unsigned char)c)) {
      adv(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') adv(1);
      continue;
    }
    int l = line, cc = col;
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum((unsigned char)src[j]) || src[j] == '_' || src[j] == '\''))
        ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), l, cc});
      adv(j - i);
      continue;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < src.size() && std::isdigit((unsigned char)src[j])) ++j;
      out.push_back({Tok::Num, src.substr(i, j - i), l, cc});
      adv(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Sym, "->", l, cc});
      adv(2);
      continue;
    }
    if (std::string("()[]:;,.").find(c) != std::string::npos) {
      out.push_back({Tok::Sym, std::string(1, c), l, cc});
      adv(1);
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", l, cc);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const std::set<std::string> keywords = {
    "lam", "tlam", "clam", "Pi", "Sig", "Forall", "Later", "pair", "fst", "snd", "suc",
    "refl", "cirr", "natrec", "dfix", "adv", "tirr", "Id", "Lift", "Str", "Nat",
    "clocks", "ctx"};

struct Parser {
  std::vector<Tok> toks;
  size_t p = 0;

  const Tok& peek() const { return toks[p]; }
  bool is(const std::string& s) const {
    return peek().t != Tok::End && peek().t != Tok::Num && peek().s == s;
  }
  [[noreturn]] void fail(const std::string& m) const {
    throw SyntaxError(m + (peek().t == Tok::End ? " at end of input" : " near '" + peek().s + "'"),
                      peek().line, peek().col);
  }
  void expect(const std::string& s) {
    if (!is(s)) fail("expected '" + s + "'");
    ++p;
  }
  std::string name() {
    if (peek().t != Tok::Ident || keywords.count(peek().s)) fail("expected a name");
    return toks[p++].s;
  }
  ExprP at(ExprP e, const Tok& t) {
    auto n = std::make_shared<Expr>(*e);
    n->line = t.line;
    n->col = t.col;
    return n;
  }

  bool atom_start() const {
    const Tok& t = peek();
    if (t.t == Tok::Num) return true;
    if (t.t == Tok::Sym) return t.s == "(";
    if (t.t != Tok::Ident) return false;
    return !keywords.count(t.s) || t.s == "Nat" || t.s == "Str";
  }

  bool arg_start() const {
    static const std::set<std::string> prefix = {"pair", "fst", "snd", "suc", "refl", "cirr",
                                                 "natrec", "dfix", "adv", "tirr", "Id", "Lift"};
    return atom_start() || (peek().t == Tok::Ident && prefix.count(peek().s));
  }

  ExprP atom() {
    const Tok& t = peek();
    if (t.t == Tok::Num) {
      ++p;
      return at(mk::num(std::stoi(t.s)), t);
    }
    if (is("(")) {
      ++p;
      ExprP e = expr();
      expect(")");
      return e;
    }
    if (is("Nat")) {
      ++p;
      return at(mk::nat(), t);
    }
    if (is("Str")) {
      ++p;
      expect("[");
      std::string k = name();
      expect("]");
      return at(mk::str(k), t);
    }
    return at(mk::var(name()), t);
  }

  ExprP postfix() {
    ExprP e = atom();
    while (is("[")) {
      const Tok& t = peek();
      ++p;
      std::string n = name();
      expect("]");
      auto b = std::make_shared<Expr>();
      b->kind = Kind::Bracket;
      b->name = n;
      b->a = e;
      b->line = t.line;
      b->col = t.col;
      e = b;
    }
    return e;
  }

  ExprP head() {
    const Tok& t = peek();
    auto one = [&](ExprP (*f)(ExprP)) {
      ++p;
      return at(f(postfix()), t);
    };
    if (is("pair")) {
      ++p;
      ExprP a = postfix();
      return at(mk::pair(a, postfix()), t);
    }
    if (is("fst")) return one(mk::fst);
    if (is("snd")) return one(mk::snd);
    if (is("suc")) return one(mk::suc);
    if (is("refl")) return one(mk::refl);
    if (is("cirr")) return one(mk::cirr);
    if (is("natrec")) {
      ++p;
      ExprP z = postfix();
      ExprP s = postfix();
      return at(mk::natrec(z, s, postfix()), t);
    }
    if (is("Id")) {
      ++p;
      ExprP A = postfix();
      ExprP u = postfix();
      return at(mk::id(A, u, postfix()), t);
    }
    if (is("dfix")) {
      ++p;
      std::string k = name();
      return at(mk::dfix(k, postfix()), t);
    }
    if (is("tirr")) {
      ++p;
      std::string k = name();
      return at(mk::tirr(k, postfix()), t);
    }
    if (is("adv")) {
      ++p;
      ExprP s = postfix();
      std::string k = name();
      return at(mk::diamond(s, k, name()), t);
    }
    if (is("Lift")) {
      ++p;
      std::string k = name();
      expect("(");
      std::string x = is("_") ? (++p, "_") : name();
      expect(".");
      ExprP P = expr();
      expect(")");
      return at(mk::lift(k, x, P, postfix()), t);
    }
    if (!atom_start()) fail("expected a term");
    return postfix();
  }

  ExprP app() {
    ExprP e = head();
    while (arg_start()) {
      const Tok& t = peek();
      e = at(mk::app(e, head()), t);
    }
    return e;
  }

  std::pair<std::string, ExprP> typed_binder() {
    expect("(");
    std::string x = name();
    expect(":");
    ExprP A = expr();
    expect(")");
    return {x, A};
  }

  std::pair<std::string, std::string> tick_binder() {
    expect("(");
    std::string a = name();
    expect(":");
    std::string k = name();
    expect(")");
    return {a, k};
  }

  ExprP expr() {
    const Tok& t = peek();
    if (is("lam")) {
      ++p;
      auto [x, A] = typed_binder();
      return at(mk::lam(x, A, expr()), t);
    }
    if (is("tlam")) {
      ++p;
      auto [a, k] = tick_binder();
      return at(mk::tlam(a, k, expr()), t);
    }
    if (is("clam")) {
      ++p;
      std::string k = name();
      return at(mk::clam(k, expr()), t);
    }
    if (is("Pi") || is("Sig")) {
      bool pi = is("Pi");
      ++p;
      auto [x, A] = typed_binder();
      ExprP B = expr();
      return at(pi ? mk::pi(x, A, B) : mk::sigma(x, A, B), t);
    }
    if (is("Forall")) {
      ++p;
      std::string k = name();
      return at(mk::forall(k, expr()), t);
    }
    if (is("Later")) {
      ExprP e = later_operand();
      if (is("->")) {
        ++p;
        return at(mk::arrow(e, expr()), t);
      }
      return e;
    }
    ExprP e = app();
    if (is("->")) {
      ++p;
      return at(mk::arrow(e, expr()), t);
    }
    return e;
  }

  // "Later k A" without a binder takes an application-level operand
  ExprP later_operand() {
    const Tok& t = peek();
    ++p;
    if (is("(")) {
      auto [a, k] = tick_binder();
      return at(mk::later(a, k, expr()), t);
    }
    std::string k = name();
    ExprP body = is("Later") ? later_operand() : app();
    return at(mk::later(k, body), t);
  }

  void done() {
    if (peek().t != Tok::End) fail("unexpected trailing input");
  }
};

struct Scope {
  std::vector<std::pair<std::string, char>> items;  // 'v' term, 't' tick, 'c' clock
  bool strict;

  char lookup(const std::string& n) const {
    for (auto it = items.rbegin(); it != items.rend(); ++it)
      if (it->first == n) return it->second;
    return 0;
  }
  void clock(const std::string& k, const Expr& e) const {
    if (strict && lookup(k) != 'c')
      throw ScopeError("unknown clock '" + k + "' at " + std::to_string(e.line) + ":" +
                           std::to_string(e.col),
                       k);
  }
};

ExprP res(const ExprP& e, Scope& sc) {
  if (!e) return e;
  auto copy = [&]() { return std::make_shared<Expr>(*e); };
  auto under = [&](const std::string& n, char kind, const ExprP& body) {
    sc.items.push_back({n, kind});
    ExprP r = res(body, sc);
    sc.items.pop_back();
    return r;
  };
  auto where = [&]() { return " at " + std::to_string(e->line) + ":" + std::to_string(e->col); };
  switch (e->kind) {
    case Kind::Var: {
      char k = sc.lookup(e->name);
      if (sc.strict && k != 'v')
        throw ScopeError(k == 't' ? "tick '" + e->name + "' used as a term" + where()
                                  : "unbound variable '" + e->name + "'" + where(),
                         e->name);
      return e;
    }
    case Kind::Bracket: {
      auto n = copy();
      n->a = res(e->a, sc);
      char k = sc.lookup(e->name);
      if (k == 't' || (!k && !sc.strict)) {
        n->kind = Kind::TickApp;
      } else if (k == 'c') {
        n->kind = Kind::ClockApp;
        n->clock = e->name;
        n->name.clear();
      } else {
        throw ScopeError("'" + e->name + "' is neither a tick nor a clock in scope" + where(),
                         e->name);
      }
      return n;
    }
    case Kind::TickApp: {
      if (sc.strict && sc.lookup(e->name) != 't')
        throw ScopeError("unknown tick '" + e->name + "'" + where(), e->name);
      auto n = copy();
      n->a = res(e->a, sc);
      return n;
    }
    case Kind::Lam:
    case Kind::Pi:
    case Kind::Sigma: {
      auto n = copy();
      n->a = res(e->a, sc);
      n->b = under(e->name, 'v', e->b);
      return n;
    }
    case Kind::TickLam:
    case Kind::Later: {
      sc.clock(e->clock, *e);
      auto n = copy();
      n->b = under(e->name, 't', e->b);
      return n;
    }
    case Kind::Lift: {
      sc.clock(e->clock, *e);
      auto n = copy();
      n->a = under(e->name, 'v', e->a);
      n->b = res(e->b, sc);
      return n;
    }
    case Kind::ClockLam:
    case Kind::Forall: {
      auto n = copy();
      n->b = under(e->clock, 'c', e->b);
      return n;
    }
    case Kind::DiamondApp: {
      sc.clock(e->clock2, *e);
      auto n = copy();
      n->a = under(e->clock, 'c', e->a);
      return n;
    }
    case Kind::ClockApp:
    case Kind::Dfix:
    case Kind::Tirr:
    case Kind::Str: {
      sc.clock(e->clock, *e);
      auto n = copy();
      n->a = res(e->a, sc);
      return n;
    }
    default: {
      auto n = copy();
      n->a = res(e->a, sc);
      n->b = res(e->b, sc);
      n->c = res(e->c, sc);
      return n;
    }
  }
}

Scope scope_of(const Ctx& ctx, bool strict) {
  Scope sc{{}, strict};
  for (auto& k : ctx.clocks) sc.items.push_back({k, 'c'});
  for (auto& e : ctx.entries) sc.items.push_back({e.name, e.tick ? 't' : 'v'});
  return sc;
}

// clocks and ctx headers, in place
Ctx header(Parser& ps) {
  Ctx ctx;
  if (ps.is("clocks")) {
    ++ps.p;
    while (!ps.is(";") && ps.peek().t != Tok::End) {
      std::string k = ps.name();
      if (ctx.has_clock(k)) ps.fail("duplicate clock '" + k + "'");
      ctx.clocks.push_back(k);
      if (ps.is(",")) ++ps.p;
    }
    if (ps.is(";")) ++ps.p;
  } else {
    ctx.clocks.push_back("k0");
  }
  if (ps.is("ctx")) {
    ++ps.p;
    while (!ps.is(";") && ps.peek().t != Tok::End) {
      Entry e;
      e.name = ps.name();
      ps.expect(":");
      size_t save = ps.p;
      if (ps.peek().t == Tok::Ident && ctx.has_clock(ps.peek().s) &&
          (ps.toks[ps.p + 1].s == "," || ps.toks[ps.p + 1].s == ";" ||
           ps.toks[ps.p + 1].t == Tok::End)) {
        e.tick = true;
        e.clock = ps.toks[ps.p++].s;
      } else {
        ps.p = save;
        Scope sc = scope_of(ctx, true);
        e.type = res(ps.expr(), sc);
      }
      ctx.entries.push_back(e);
      if (ps.is(",")) ++ps.p;
    }
    if (ps.is(";")) ++ps.p;
  }
  return ctx;
}

}  // namespace

ExprP resolve(const ExprP& e, const Ctx& ctx) {
  Scope sc = scope_of(ctx, true);
  return res(e, sc);
}

Source parse_file(const std::string& text) {
  Parser ps{lex(text)};
  Source src;
  src.ctx = header(ps);
  ExprP t = ps.expr();
  ExprP ty;
  if (ps.is(":")) {
    ++ps.p;
    ty = ps.expr();
  }
  ps.done();
  src.term = resolve(t, src.ctx);
  if (ty) src.type = resolve(ty, src.ctx);
  return src;
}

ExprP parse_expr(const std::string& text, const Ctx& ctx) {
  Parser ps{lex(text)};
  ExprP e = ps.expr();
  ps.done();
  return resolve(e, ctx);
}

ExprP parse_expr(const std::string& text) {
  Parser ps{lex(text)};
  ExprP e = ps.expr();
  ps.done();
  Scope sc{{}, false};
  return res(e, sc);
}

Ctx parse_ctx(const std::string& text) {
  Parser ps{lex(text)};
  Ctx c = header(ps);
  ps.done();
  return c;
}

}  // namespace clott
