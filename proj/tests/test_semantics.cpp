#include <random>

#include "doctest.h"
#include "nszoo/catalog.hpp"
#include "nszoo/parse.hpp"
#include "nszoo/print.hpp"
#include "nszoo/semantics.hpp"

using namespace nszoo;

namespace {

TwoLevelModel plain_model(int n, int cutoff, int cap = 0) {
  TwoLevelModel m;
  m.n = n;
  m.cutoff = cutoff;
  m.seq_cap = cap > 0 ? cap : n;
  return m;
}

}  // namespace

TEST_CASE("eval: quantifiers, standardness, bounded search") {
  TwoLevelModel m = plain_model(2, 1);
  Signature sig;
  CHECK(eval(parse_formula("!x:0. ?y:0. y = x", sig), m));
  CHECK(!eval(parse_formula("!x:0. x = 0", sig), m));
  CHECK(eval(parse_formula("!st x:0. x = 0", sig), m));
  CHECK(eval(parse_formula("?x:0. ~st(x)", sig), m));

  TwoLevelModel m3 = plain_model(4, 2);
  CHECK(!eval(parse_formula("st(3)", sig), m3));
  CHECK(eval(parse_formula("st(1)", sig), m3));
  CHECK(eval(parse_formula("?i <= 3. i = 2", sig), m3));
  CHECK(!eval(parse_formula("?i <= 1. i = 2", sig), m3));
  CHECK(eval(parse_formula("!y in [0,1]. y <= 1", sig), m3));
  CHECK(eval(parse_formula("max0([1,3,2]) = 3", sig), m3));
  CHECK(eval(parse_formula("len([]:0) = 0", sig), m3));
}

TEST_CASE("eval: standard function spaces respect application closure") {
  TwoLevelModel m = plain_model(3, 2);
  Signature sig;
  // standard functions map standard points to standard values
  CHECK(eval(parse_formula("!st f:1. !st x:0. st(app(f,x))", sig), m));
  CHECK(eval(parse_formula("?f:1. ~st(f)", sig), m));
  // standard pairs and sequences are componentwise standard
  CHECK(eval(parse_formula("!st p:(0 * 0). st(proj1(p))", sig), m));
  CHECK(eval(parse_formula("!st w:0^*. !y in w. st(y)", sig), m));
}

TEST_CASE("eval: unbound variables and oversized types are reported") {
  TwoLevelModel m = plain_model(2, 1);
  Signature vsig = parse_signature("var f : 1");
  FormulaPtr f = parse_formula("app(f,0) = 0", vsig);
  EvalBudget eb;
  CHECK_THROWS_AS(eval(f, m, {}, eb), EngineError);
  // quantifying over a level-2 function space exceeds the domain bound
  TwoLevelModel tiny = plain_model(3, 1);
  Signature sig;
  Env env;
  EvalBudget eb2;
  CHECK_THROWS_AS(eval(parse_formula("!F:(1 -> 1). 0 = 0", sig), tiny, env, eb2), EngineError);
}

TEST_CASE("enumerate_models: counts and bounds") {
  Signature sig = parse_signature("sym u : 0 -> 0");
  ModelBudget budget;
  budget.max_models = 200;
  auto models = enumerate_models(sig, 2, 0, budget);
  int full_cutoff = 0;
  for (const auto& m : models) {
    CHECK(m.n == 2);
    // interpretations are standard: standard arguments map to standard values
    const auto& table = m.interps.at("u");
    for (int x = 0; x < m.cutoff; x++) CHECK(table[x] < m.cutoff);
    if (m.cutoff == 2 && m.seq_cap == 1) full_cutoff++;
  }
  CHECK(full_cutoff == 4);  // the full interpretation space at total standardness
  CHECK_THROWS_AS(enumerate_models(sig, 5, 1, budget), EngineError);
  CHECK_THROWS_AS(enumerate_models(sig, 3, 3, budget), EngineError);
}

TEST_CASE("monotonicity: enlarging the standard part moves st-quantifiers one way") {
  Signature sig = parse_signature("sym p : 0 -> 0");
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int round = 0; round < 200; round++) {
    TwoLevelModel small = plain_model(3, 1);
    TwoLevelModel large = plain_model(3, 2);
    std::vector<long> table(3);
    for (auto& v : table) v = static_cast<long>(rng() % 3);
    table[0] = 0;  // standard-preserving for both cutoffs
    small.sig = large.sig = sig;
    small.interps["p"] = large.interps["p"] = table;
    FormulaPtr fa = parse_formula("!st x:0. p(x)", sig);
    FormulaPtr ex = parse_formula("?st x:0. p(x)", sig);
    EvalBudget b1, b2, b3, b4;
    bool fa_small = eval(fa, small, {}, b1), fa_large = eval(fa, large, {}, b2);
    bool ex_small = eval(ex, small, {}, b3), ex_large = eval(ex, large, {}, b4);
    if (fa_large) CHECK(fa_small);   // forall-st is antitone in the cutoff
    if (ex_small) CHECK(ex_large);   // exists-st is monotone
    checked++;
  }
  CHECK(checked == 200);
}

TEST_CASE("rule soundness: herbrandized rules hold at finite scale") {
  SoundnessBudget budget;
  budget.pairs = 300;  // the acceptance suite runs the full budget
  for (RewriteRule rule :
       {RewriteRule::HGMPst, RewriteRule::HIPforallst, RewriteRule::HACint,
        RewriteRule::PrenexAndSt, RewriteRule::PrenexOrSt, RewriteRule::PrenexImpliesSt,
        RewriteRule::MarkovSt, RewriteRule::DropStAntecedent, RewriteRule::DoubleNegSt,
        RewriteRule::SkolemizeAntecedent, RewriteRule::BoundSearchClosure,
        RewriteRule::SwapStPrefix}) {
    CAPTURE(rule_name(rule));
    SoundnessVerdict v = check_rule_soundness(rule, budget);
    CHECK(v.status == SoundnessStatus::Pass);
    CHECK(v.pairs_checked >= budget.pairs);
    if (v.status != SoundnessStatus::Pass) MESSAGE(v.counterexample);
  }
}

TEST_CASE("rule soundness: idealisation is refuted at finite scale") {
  SoundnessBudget budget;
  budget.pairs = 500;
  SoundnessVerdict v = check_rule_soundness(RewriteRule::Idealisation, budget);
  CHECK(v.status == SoundnessStatus::ExpectedCounterexample);
  CHECK(!v.counterexample.empty());
}

TEST_CASE("rule soundness: convention rules are documented skips") {
  SoundnessBudget budget;
  for (RewriteRule rule : {RewriteRule::TransferComplement, RewriteRule::TupleCode,
                           RewriteRule::ExpandApprox, RewriteRule::ExpandStdExt}) {
    SoundnessVerdict v = check_rule_soundness(rule, budget);
    CHECK(v.status == SoundnessStatus::Skipped);
    CHECK(!v.note.empty());
  }
}

TEST_CASE("check_extraction: the transfer toy instance over 27 functions") {
  const Principle& trans = get_principle("PI01-TRANS");
  NormalizeResult r = normalize(trans.statement, Logic::Classical, trans.signature);
  ExtractionResult ex = extract(r.nf, r.trace);
  collapse_monotone(ex, {"m"});
  ExtractionVerdict v = check_extraction(ex, 3);
  CHECK(v.pass);
  // a corrupted witness (one candidate dropped) must be detected
  ExtractionVerdict bad = check_extraction(ex, 3, true);
  CHECK(!bad.pass);
  CHECK(!bad.counterexample.empty());
}
