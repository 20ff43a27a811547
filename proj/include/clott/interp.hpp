#pragma once

#include <utility>

#include "clott/semantics.hpp"
#include "clott/syntax.hpp"

namespace clott {

// Environments mirror the context: Pair(prefix, value) per term entry,
// Tick(X, clock, prefix) per tick entry, Star for the empty context.
// Worlds passed in must carry delta == ctx.clocks (plus locally bound clocks).

ValueP eval(const ExprP& t, const Ctx& ctx, const World& w, const ValueP& env);

std::vector<ValueP> elements(const ExprP& A, const Ctx& ctx, const World& w, const ValueP& env);
bool member(const ValueP& v, const ExprP& A, const Ctx& ctx, const World& w, const ValueP& env);

std::vector<ValueP> ctx_elements(const Ctx& ctx, const World& w);
bool ctx_member(const ValueP& g, const Ctx& ctx, const World& w);
Presheaf interp_ctx(const Ctx& ctx);

// element of the layer for entry i (a Tick for tick entries), restricted back to w
ValueP project_layer(const Ctx& ctx, size_t i, const World& w, const ValueP& env);

// [[(nu, sigma)]] : [[src |-Delta]] -> nu* [[dst |-Delta']]
// w is a src.clocks world; the result lives at reindex(w, dst.clocks, nu).
ValueP interp_subst(const SyntacticSubst& s, const Ctx& src, const Ctx& dst, const World& w,
                    const ValueP& env);

// gamma in [[G |-D]] at w  |->  Tick({k}, f k', iota . gamma), an element of
// [k -> k']* [[G, a : k |-D,k]] at w
ValueP diamond_subst(const std::string& k, const std::string& target, const World& w,
                     const ValueP& env);

struct WeakenIso {
  std::function<ValueP(const ValueP&)> to;    // [[G |-D,k]] at (T,#; n; f[k->#]) -> [[G |-D]]
  std::function<ValueP(const ValueP&)> from;  // inverse
  World big, small;
};
WeakenIso clock_weaken_iso(const Ctx& ctx, const std::string& k, const World& w, int n);

// type with its outermost Str / Lift unfolded once; other types unchanged
ExprP unfold(const ExprP& A, const Ctx& ctx);

std::vector<ValueP> spread(const std::vector<ValueP>& xs, size_t cap);

}  // namespace clott
