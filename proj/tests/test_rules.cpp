#include "doctest.h"
#include "nszoo/catalog.hpp"
#include "nszoo/normalform.hpp"
#include "nszoo/parse.hpp"
#include "nszoo/print.hpp"

using namespace nszoo;

namespace {
const char* kCurk =
    "!st f:1. ?st m:0. (?n:0. app(f,n) != 0) -> ?i <= m. app(f,i) != 0";
}

TEST_CASE("is_normal_form: decomposition") {
  Signature sig;
  auto nf = is_normal_form(parse_formula(kCurk, sig));
  REQUIRE(nf.has_value());
  CHECK(nf->st_universals.size() == 1);
  CHECK(nf->st_universals[0].first == "f");
  CHECK(nf->st_existentials.size() == 1);
  CHECK(nf->st_existentials[0].first == "m");
  CHECK(is_internal(nf->matrix));
  CHECK(nf->vacuous.empty());

  auto internal = is_normal_form(parse_formula("!n:0. app(f,n) = 0", parse_signature("var f : 1")));
  REQUIRE(internal.has_value());
  CHECK(internal->st_universals.empty());
  CHECK(internal->st_existentials.empty());

  CHECK(!is_normal_form(get_principle("PI01-TRANS").statement).has_value());
}

TEST_CASE("apply_rule: HGMPst single block") {
  Signature sig = parse_signature("var f : 1\nsym psi : 0\n");
  FormulaPtr g = parse_formula("(!st x:0. app(f,x) = 0) -> psi()", sig);
  RuleContext ctx = RuleContext::from(g, sig, Logic::Intuitionistic);
  FormulaPtr out = apply_rule(RewriteRule::HGMPst, g, {}, ctx);
  CHECK(print_formula(out, sig) ==
        "?st x':0^*. (!x in x'. app(f,x) = 0) -> psi()");
}

TEST_CASE("apply_rule: HIPforallst") {
  Signature sig = parse_signature("sym P : 1 -> 0\nsym Q : 1 -> 0\n");
  FormulaPtr g = parse_formula("(!st x:1. P(x)) -> ?st y:1. Q(y)", sig);
  RuleContext ctx = RuleContext::from(g, sig, Logic::Intuitionistic);
  FormulaPtr out = apply_rule(RewriteRule::HIPforallst, g, {}, ctx);
  CHECK(print_formula(out, sig) ==
        "?st y':1^*. (!st x:1. P(x)) -> ?y in y'. Q(y)");
}

TEST_CASE("apply_rule: HACint") {
  Signature sig = parse_signature("sym P : 1 x 0 -> 0\n");
  FormulaPtr g = parse_formula("!st x:1. ?st y:0. P(x,y)", sig);
  RuleContext ctx = RuleContext::from(g, sig, Logic::Intuitionistic);
  FormulaPtr out = apply_rule(RewriteRule::HACint, g, {}, ctx);
  CHECK(print_formula(out, sig) ==
        "?st F:(1 -> 0^*). !st x:1. ?y in app(F,x). P(x,y)");
}

TEST_CASE("apply_rule: Idealisation") {
  Signature sig = parse_signature("sym P : 0 x 0 -> 0\n");
  FormulaPtr g = parse_formula("!st x:0^*. ?y:0. !z in x. P(z,y)", sig);
  RuleContext ctx = RuleContext::from(g, sig, Logic::Classical);
  FormulaPtr out = apply_rule(RewriteRule::Idealisation, g, {}, ctx);
  CHECK(print_formula(out, sig) == "?y:0. !st x:0. P(x,y)");
  // side condition: the matrix must be internal
  FormulaPtr bad = parse_formula("!st x:0^*. ?y:0. !z in x. st(z)", sig);
  RuleContext ctx2 = RuleContext::from(bad, sig, Logic::Classical);
  CHECK_THROWS_AS(apply_rule(RewriteRule::Idealisation, bad, {}, ctx2), EngineError);
}

TEST_CASE("apply_rule: DropStAntecedent requires a negative position") {
  Signature sig = parse_signature("sym P : 0 -> 0\nsym Q : 0\n");
  FormulaPtr g = parse_formula("(!st x:0. P(x)) -> Q()", sig);
  RuleContext ctx = RuleContext::from(g, sig, Logic::Classical);
  FormulaPtr out = apply_rule(RewriteRule::DropStAntecedent, g, {0}, ctx);
  CHECK(print_formula(out, sig) == "(!x:0. P(x)) -> Q()");
  CHECK_THROWS_AS(apply_rule(RewriteRule::DropStAntecedent, g, {1}, ctx), EngineError);
}

TEST_CASE("normalize: transfer principle reaches the search normal form") {
  const Principle& trans = get_principle("PI01-TRANS");
  for (Logic logic : {Logic::Classical, Logic::Intuitionistic}) {
    CAPTURE(logic_name(logic));
    NormalizeResult r = normalize(trans.statement, logic, trans.signature);
    CHECK(alpha_equal(r.nf.to_formula(), parse_formula(kCurk, Signature{})));
    CHECK(is_internal(r.nf.matrix));
    // replay reproduces the derivation
    CHECK(formula_equal(replay(r.trace, logic), r.nf.to_formula()));
    for (const auto& s : r.trace.steps) CHECK(s.rule != RewriteRule::MarkovSt);
  }
  // classical output is byte-exact
  NormalizeResult r = normalize(trans.statement, Logic::Classical, trans.signature);
  CHECK(print_formula(r.nf.to_formula(), trans.signature) == kCurk);
}

TEST_CASE("normalize: degenerate inputs pass through with an empty trace") {
  Signature sig = parse_signature("var f : 1");
  FormulaPtr f = parse_formula("!n:0. app(f,n) = 0", sig);
  NormalizeResult r = normalize(f, Logic::Classical, sig);
  CHECK(r.trace.steps.empty());
  CHECK(formula_equal(r.nf.to_formula(), f));
}

TEST_CASE("normalize: generic prenex fragment") {
  Signature sig = parse_signature("sym P : 0 -> 0\nsym Q : 0 -> 0\n");
  FormulaPtr f = parse_formula("(!st x:0. P(x)) & (?st y:0. Q(y))", sig);
  NormalizeResult r = normalize(f, Logic::Classical, sig);
  CHECK(is_internal(r.nf.matrix));
  CHECK(r.nf.st_universals.size() == 1);
  CHECK(r.nf.st_existentials.size() == 1);
  CHECK(formula_equal(replay(r.trace, Logic::Classical), r.nf.to_formula()));

  FormulaPtr g = parse_formula("?st y:0. !st x:0. P(x)", sig);
  NormalizeResult rg = normalize(g, Logic::Classical, sig);
  CHECK(rg.nf.st_universals.size() == 1);
  CHECK(rg.nf.st_existentials.size() == 1);

  CHECK_THROWS_AS(normalize(parse_formula("st(0)", sig), Logic::Classical, sig), EngineError);
}

TEST_CASE("expand_standard_extensionality: pair-to-pair functional") {
  Signature sig;
  FormulaPtr f = expand_standard_extensionality("Phi", parse_type("(1 * 1)"),
                                                parse_type("(1 * 1)"), sig);
  CHECK(sig.has("bar"));
  std::string expect =
      "!st f:1. !st g:1. !st u:1. !st v:1. !st k:0. !i <= 1. ?st N:0. "
      "bar(f,N) = bar(u,N) & bar(g,N) = bar(v,N) -> "
      "bar(idx([proj1(app(Phi,f,g)),proj2(app(Phi,f,g))],i),k) = "
      "bar(idx([proj1(app(Phi,u,v)),proj2(app(Phi,u,v))],i),k)";
  Signature psig = parse_signature("sym bar : 1 x 0 -> 0\nvar Phi : ((1 * 1) -> (1 * 1))");
  CHECK(print_formula(f, psig) == expect);
  CHECK(formula_equal(f, parse_formula(expect, psig)));
}

TEST_CASE("expand_standard_extensionality: type 1 to 1 modulus shape") {
  Signature sig;
  FormulaPtr f = expand_standard_extensionality("Psi", parse_type("1"), parse_type("1"), sig);
  Signature psig = parse_signature("sym bar : 1 x 0 -> 0\nvar Psi : (1 -> 1)");
  CHECK(print_formula(f, psig) ==
        "!st f:1. !st g:1. !st k:0. ?st N:0. "
        "bar(f,N) = bar(g,N) -> bar(app(Psi,f),k) = bar(app(Psi,g),k)");
}

TEST_CASE("expand_standard_extensionality: ground codomain has no precision") {
  Signature sig;
  FormulaPtr f = expand_standard_extensionality("phi", parse_type("1"), parse_type("0"), sig);
  Signature psig = parse_signature("sym bar : 1 x 0 -> 0\nvar phi : (1 -> 0)");
  CHECK(print_formula(f, psig) ==
        "!st f:1. !st g:1. ?st N:0. bar(f,N) = bar(g,N) -> app(phi,f) = app(phi,g)");
}

TEST_CASE("uniformize matches the stored uniform versions") {
  for (const char* name : {"DNR", "Pi01G", "1GEN", "HYP", "NCS", "KPT"}) {
    CAPTURE(name);
    const Principle& zoo = get_principle(name);
    Principle u = uniformize(zoo);
    const Principle& stored = get_principle(u.name);
    CHECK(alpha_equal(u.statement, stored.statement));
    // selector erasure gives back the zoo statement
    Principle back = de_uniformize(u);
    CHECK(alpha_equal(back.statement, zoo.statement));
  }
}

TEST_CASE("plus_version relativizes and conjoins standard extensionality") {
  Principle up = plus_version(get_principle("UPi01G"));
  CHECK(up.kind == PrincipleKind::UniformPlus);
  CHECK(up.statement->kind == Formula::Kind::ExistsSt);
  auto leaves = conjunction_leaves(up.statement->f1);
  REQUIRE(leaves.size() == 2);
  CHECK(leaves[0].second->kind == Formula::Kind::ForallSt);
  CHECK(classify_internal(up.statement) == Classification::External);
  typecheck(up.statement, {}, up.signature);
  CHECK_THROWS_AS(plus_version(up), EngineError);
}

TEST_CASE("normalize_implication: classical structure shape") {
  Principle up = plus_version(get_principle("UPi01G"));
  const Principle& trans = get_principle("PI01-TRANS");
  Signature sig = up.signature;
  sig.merge(trans.signature);
  NormalizeResult r =
      normalize_implication(up.statement, trans.statement, Logic::Classical, sig);
  REQUIRE(r.nf.st_universals.size() == 3);
  CHECK(type_equal(r.nf.st_universals[0].second, parse_type("((1 * 1) -> (1 * 1))")));
  CHECK(type_equal(r.nf.st_universals[1].second, parse_type("(1 -> 0)")));
  CHECK(type_equal(r.nf.st_universals[2].second, parse_type("1")));
  REQUIRE(r.nf.st_existentials.size() == 1);
  CHECK(type_equal(r.nf.st_existentials[0].second, type_base()));
  CHECK(is_internal(r.nf.matrix));
  // matrix: [(forall h,g) A and (forall Z) B] -> C
  REQUIRE(r.nf.matrix->kind == Formula::Kind::Implies);
  auto premises = conjunction_leaves(r.nf.matrix->f1);
  REQUIRE(premises.size() == 2);
  CHECK(premises[0].second->kind == Formula::Kind::Forall);
  CHECK(premises[0].second->f1->kind == Formula::Kind::Forall);
  CHECK(premises[1].second->kind == Formula::Kind::Forall);
  CHECK(type_equal(premises[1].second->var_type, parse_type("1")));
  // replay
  CHECK(formula_equal(replay(r.trace, Logic::Classical), r.nf.to_formula()));
}

TEST_CASE("normalize_implication: intuitionistic herbrand shape") {
  Principle up = plus_version(get_principle("UPi01G"));
  const Principle& trans = get_principle("PI01-TRANS");
  Signature sig = up.signature;
  sig.merge(trans.signature);
  NormalizeResult r =
      normalize_implication(up.statement, trans.statement, Logic::Intuitionistic, sig);
  NormalizeResult rc =
      normalize_implication(up.statement, trans.statement, Logic::Classical, sig);
  // identical standard-universal prefixes
  REQUIRE(r.nf.st_universals.size() == rc.nf.st_universals.size());
  for (size_t i = 0; i < r.nf.st_universals.size(); i++)
    CHECK(type_equal(r.nf.st_universals[i].second, rc.nf.st_universals[i].second));
  // herbrand existentials 0^*, 1^*, 1^*
  REQUIRE(r.nf.st_existentials.size() == 3);
  CHECK(type_equal(r.nf.st_existentials[0].second, parse_type("0^*")));
  CHECK(type_equal(r.nf.st_existentials[1].second, parse_type("1^*")));
  CHECK(type_equal(r.nf.st_existentials[2].second, parse_type("1^*")));
  // the first herbrand variable's element type matches the classical witness
  CHECK(type_equal(r.nf.st_existentials[0].second->a, rc.nf.st_existentials[0].second));
  CHECK(is_internal(r.nf.matrix));
  // matrix: [(forall h,g in W) A and (forall Z in V) B] -> ?y in sigma. C
  REQUIRE(r.nf.matrix->kind == Formula::Kind::Implies);
  auto premises = conjunction_leaves(r.nf.matrix->f1);
  REQUIRE(premises.size() == 2);
  CHECK(premises[0].second->kind == Formula::Kind::BoundedForallIn);
  CHECK(premises[0].second->f1->kind == Formula::Kind::BoundedForallIn);
  CHECK(premises[1].second->kind == Formula::Kind::BoundedForallIn);
  CHECK(r.nf.matrix->f2->kind == Formula::Kind::BoundedExistsIn);
  CHECK(formula_equal(replay(r.trace, Logic::Intuitionistic), r.nf.to_formula()));
}

TEST_CASE("normalize_implication: vacuous antecedent returns the consequent") {
  Signature sig;
  FormulaPtr truth = parse_formula("0 = 0", sig);
  FormulaPtr nu = parse_formula("!st x:0. ?st y:0. x = y", sig);
  NormalizeResult r = normalize_implication(truth, nu, Logic::Classical, sig);
  CHECK(formula_equal(r.nf.to_formula(), nu));
  CHECK(r.trace.steps.empty());
}

TEST_CASE("trace serialization lists one step per line") {
  const Principle& trans = get_principle("PI01-TRANS");
  NormalizeResult r = normalize(trans.statement, Logic::Classical, trans.signature);
  std::string text = trace_to_text(r.trace);
  CHECK(text.find("STEP 1 TransferComplement AT /") != std::string::npos);
  CHECK(text.find("STEP 2 PrenexImpliesSt AT /0") != std::string::npos);
  CHECK(text.find("STEP 3 BoundSearchClosure AT /0") != std::string::npos);
}

TEST_CASE("nf_measure decreases along the transfer derivation") {
  const Principle& trans = get_principle("PI01-TRANS");
  NormalizeResult r = normalize(trans.statement, Logic::Classical, trans.signature);
  auto prev = nf_measure(r.trace.initial);
  for (const auto& s : r.trace.steps) {
    auto cur = nf_measure(s.after);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("normalize_implication covers all six uniform principles in both logics") {
  for (const char* name : {"DNR", "Pi01G", "1GEN", "HYP", "NCS", "KPT"}) {
    CAPTURE(name);
    Principle u = uniformize(get_principle(name));
    Principle up = plus_version(u);
    const Principle& trans = get_principle("PI01-TRANS");
    Signature sig = up.signature;
    sig.merge(trans.signature);
    for (Logic logic : {Logic::Classical, Logic::Intuitionistic}) {
      CAPTURE(logic_name(logic));
      NormalizeResult r = normalize_implication(up.statement, trans.statement, logic, sig);
      CHECK(is_internal(r.nf.matrix));
      CHECK(!r.nf.st_universals.empty());
      CHECK(!r.nf.st_existentials.empty());
      typecheck(r.nf.to_formula(), {}, r.trace.sig);
    }
  }
}
