#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "clott/syntax.hpp"

namespace clott {

struct Judgement {
  enum Kind { CtxWf, TypeWf, Typing, Equality } kind = Typing;
  Ctx ctx;
  ExprP subject;
  ExprP type;  // Typing
  ExprP rhs;   // Equality
};

struct Derivation {
  std::string rule;
  Judgement concl;
  std::vector<Derivation> premises;
};

struct TypeError : std::runtime_error {
  std::string rule, judgement;
  TypeError(std::string r, const std::string& msg, std::string j)
      : std::runtime_error(msg), rule(std::move(r)), judgement(std::move(j)) {}
  nlohmann::json to_json() const;
};

std::string print(const Judgement& j);
nlohmann::json to_json(const Derivation& d);
std::string print(const Derivation& d, int indent = 0);

// Reduction used by conv.  Fuel bounds the number of contraction steps.
ExprP whnf(const ExprP& t, bool unfoldTypes = false);
ExprP normalize(const ExprP& t);
bool conv(const ExprP& a, const ExprP& b);

class Checker {
 public:
  Derivation check_ctx(const Ctx& ctx);
  Derivation check_type(const Ctx& ctx, const ExprP& A);
  Derivation check(const Ctx& ctx, const ExprP& t, const ExprP& A);
  // returns the inferred type in d.concl.type
  Derivation infer(const Ctx& ctx, const ExprP& t);
  Derivation check_judgement(const Judgement& j);
};

// verifies each binding against its formation rule; throws TypeError
Derivation check_subst(const SyntacticSubst& s, const Ctx& src, const Ctx& dst);

}  // namespace clott
