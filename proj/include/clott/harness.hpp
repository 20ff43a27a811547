#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "clott/interp.hpp"
#include "clott/typecheck.hpp"

namespace clott {

// ---------------------------------------------------------------- fixtures

// a judgement in file syntax: "clocks k; ctx x : A; t : A"
struct TermFixture {
  std::string name;
  std::string text;
};

struct RejectFixture {
  std::string name;
  std::string text;
  std::string rule;  // expected failing rule
};

struct CtxFixture {
  std::string name;
  std::string text;  // "clocks k; ctx x : Nat"
};

// nu : dst clocks -> src clocks
struct NuFixture {
  std::string name;
  std::vector<std::string> delta2;  // domain
  std::vector<std::string> delta;   // codomain
  std::map<std::string, std::string> nu;
};

struct SubstFixture {
  std::string name;
  std::string src, dst;  // contexts
  std::string subst;     // "j -> k, k -> k; y := suc x, b := a, c := <> k"
  std::string subject;   // in dst
  bool type = false;     // subject is a type
};

// two terms in one context; conv must hold, values must agree
struct EqFixture {
  std::string name;
  std::string ctx;
  std::string lhs, rhs, type;
};

// t : Later k A in ctx
struct LaterFixture {
  std::string name;
  std::string ctx;
  std::string term, clock;
};

// adv s1 j k and adv s2 j k with s1[k/j] = s2[k/j]
struct DiamondFixture {
  std::string name;
  std::string ctx;
  std::string s1, s2, bound, target;
};

// t : Forall c A with c not free in A, applied at two clocks
struct ForallFixture {
  std::string name;
  std::string ctx;
  std::string term, k1, k2;
};

struct CarrierFixture {
  std::string name;
  std::string ctx;
  std::string type;
};

const std::vector<TermFixture>& typing_corpus();
const std::vector<RejectFixture>& rejected_corpus();
const std::vector<CtxFixture>& context_corpus();
const std::vector<NuFixture>& clock_maps();
const std::vector<SubstFixture>& subst_corpus();
const std::vector<EqFixture>& beta_eta_corpus();
const std::vector<EqFixture>& fixpoint_corpus();
const std::vector<LaterFixture>& later_corpus();
const std::vector<DiamondFixture>& diamond_corpus();
const std::vector<ForallFixture>& forall_corpus();
const std::vector<CarrierFixture>& carrier_corpus();

// named closed terms used by the stream checks
std::string stream_term(const std::string& name);  // zeros, nats, hd, tl

SyntacticSubst parse_subst(const std::string& text, const Ctx& src, const Ctx& dst);

// ---------------------------------------------------------------- suites

struct SuiteConfig {
  Truncation trunc;
  int natBound = 4;
  std::vector<std::string> corpus;  // fixture names; empty selects all
  uint64_t seed = 1;
};

struct Check {
  std::string lemma, fixture;
  json world;
  std::string status;  // pass | fail | truncated | error
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  size_t count(const std::string& status) const;
  bool ok() const;
  json to_json() const;
};

const std::vector<std::string>& suite_names();
// applies cfg to the global semantic configuration
void configure(const SuiteConfig& cfg);
Report run_suite(const std::string& name, const SuiteConfig& cfg);
// the beta-eta checks on caller supplied pairs
Report check_equalities(const std::vector<EqFixture>& corpus, const SuiteConfig& cfg);

// hd (tl^i zeros) for i < depth at the single ambient clock k0
std::vector<long> stream_prefix(int depth, const std::string& stream = "zeros");

}  // namespace clott
