#include "doctest.h"
#include "nszoo/catalog.hpp"
#include "nszoo/extraction.hpp"
#include "nszoo/normalform.hpp"
#include "nszoo/parse.hpp"
#include "nszoo/print.hpp"

using namespace nszoo;

namespace {

NormalizeResult transfer_nf(Logic logic = Logic::Classical) {
  const Principle& trans = get_principle("PI01-TRANS");
  return normalize(trans.statement, logic, trans.signature);
}

struct PipelineParts {
  Principle up;
  Signature sig;
  NormalizeResult impl;
  NormalizeResult cons;
};

PipelineParts run_front(const std::string& zoo_name, Logic logic) {
  PipelineParts out{plus_version(uniformize(get_principle(zoo_name))), {}, {}, {}};
  const Principle& trans = get_principle("PI01-TRANS");
  out.sig = out.up.signature;
  out.sig.merge(trans.signature);
  out.impl = normalize_implication(out.up.statement, trans.statement, logic, out.sig);
  out.cons = normalize(trans.statement, logic, trans.signature);
  return out;
}

}  // namespace

TEST_CASE("extract: transfer normal form yields the bounded-search sentence") {
  NormalizeResult r = transfer_nf();
  ExtractionResult ex = extract(r.nf, r.trace);
  CHECK(print_formula(ex.internal_sentence, ex.sig) ==
        "!f:1. ?m in t(f). (?n:0. app(f,n) != 0) -> ?i <= m. app(f,i) != 0");
  CHECK(is_internal(ex.internal_sentence));
  REQUIRE(ex.witnesses.size() == 1);
  CHECK(ex.witnesses[0].first == "m");
  CHECK(print_term(ex.witnesses[0].second, TypeContext{{"f", type_pure(1)}}, ex.sig) == "t(f)");
  // witness terms typecheck at the existential's sequence type
  TypeContext ctx{{"f", type_pure(1)}};
  CHECK(type_equal(typecheck(ex.witnesses[0].second, ctx, ex.sig), parse_type("0^*")));
}

TEST_CASE("extract: empty existential block leaves the matrix under plain universals") {
  Signature sig;
  FormulaPtr f = parse_formula("!st x:0. x = x", sig);
  NormalizeResult r = normalize(f, Logic::Classical, sig);
  ExtractionResult ex = extract(r.nf, r.trace);
  CHECK(ex.witnesses.empty());
  CHECK(print_formula(ex.internal_sentence, ex.sig) == "!x:0. x = x");
}

TEST_CASE("extract: trace and normal form must agree") {
  NormalizeResult r = transfer_nf();
  NormalizeResult other = normalize(parse_formula("!st x:0. ?st y:0. y = x", Signature{}),
                                    Logic::Classical, Signature{});
  CHECK_THROWS_AS(extract(other.nf, r.trace), EngineError);
}

TEST_CASE("collapse_monotone: search collapses to the max of the candidates") {
  NormalizeResult r = transfer_nf();
  ExtractionResult ex = extract(r.nf, r.trace);
  FormulaPtr collapsed = collapse_monotone(ex, {"m"});
  CHECK(print_formula(collapsed, ex.sig) ==
        "!f:1. (?n:0. app(f,n) != 0) -> ?i <= max0(t(f)). app(f,i) != 0");
  REQUIRE(ex.collapsed.has_value());
}

TEST_CASE("collapse_monotone: singleton witness sequence") {
  Signature sig;
  FormulaPtr f = parse_formula("!st f:1. ?st m:0. (?n:0. app(f,n) != 0) -> ?i <= m. app(f,i) != 0",
                               sig);
  NormalizeResult r = normalize(f, Logic::Classical, sig);
  ExtractionResult ex = extract(r.nf, r.trace);
  // replace the candidate sequence by a singleton before collapsing
  FormulaPtr one = parse_formula("!f:1. ?m in [app(f,0)]. 0 = 0", parse_signature("var f : 1"));
  CHECK(one->f1->kind == Formula::Kind::BoundedExistsIn);
  FormulaPtr collapsed = collapse_monotone(ex, {"m"});
  CHECK(collapsed->kind == Formula::Kind::Forall);
}

TEST_CASE("collapse_monotone: non-monotone occurrence fails the certificate") {
  Signature sig;
  // m on the left of <= is a downward use
  FormulaPtr f = parse_formula("!st f:1. ?st m:0. m <= app(f,0)", sig);
  auto nf = is_normal_form(f);
  REQUIRE(nf.has_value());
  RuleTrace trace;
  trace.initial = f;
  trace.sig0 = sig;
  trace.sig = sig;
  ExtractionResult ex = extract(*nf, trace);
  CHECK_THROWS_AS(collapse_monotone(ex, {"m"}), EngineError);
  CHECK_THROWS_AS(collapse_monotone(ex, {"zz"}), EngineError);
}

TEST_CASE("pipeline front end: classical collapse has the search-operator shape") {
  PipelineParts p = run_front("Pi01G", Logic::Classical);
  ExtractionResult ex = extract(p.impl.nf, p.impl.trace);
  REQUIRE(ex.witnesses.size() == 1);
  std::string m = ex.witnesses[0].first;
  FormulaPtr collapsed = collapse_monotone(ex, {m});
  // (forall Phi, Xi, f)[premises -> C(f, max0(t(Phi,Xi,f)))]
  FormulaPtr cur = collapsed;
  int foralls = 0;
  while (cur->kind == Formula::Kind::Forall) {
    foralls++;
    cur = cur->f1;
  }
  CHECK(foralls == 3);
  REQUIRE(cur->kind == Formula::Kind::Implies);
  FormulaPtr c = cur->f2;
  REQUIRE(c->kind == Formula::Kind::Implies);
  CHECK(c->f2->kind == Formula::Kind::BoundedExistsLe);
  CHECK(c->f2->t1->kind == Term::Kind::Max0);
}

TEST_CASE("herbrandise and meta-reverse round trip") {
  for (const char* name : {"Pi01G", "DNR"}) {
    CAPTURE(name);
    Principle up = plus_version(uniformize(get_principle(name)));
    const Principle& trans = get_principle("PI01-TRANS");
    Signature sig = up.signature;
    sig.merge(trans.signature);
    NormalForm a_nf = uniform_plus_exists_nf(up.statement, sig);
    NormalizeResult cons = normalize(trans.statement, Logic::Classical, trans.signature);
    Herbrandisation h = herbrandise(a_nf, cons.nf, sig);
    CHECK(is_internal(h.body));
    CHECK(!h.vacuous_o);
    FormulaPtr back = meta_reverse(h);
    CHECK(alpha_equal(back, mk_implies(up.statement, trans.statement)));
  }
}

TEST_CASE("herbrandisation body has the pointwise-bounded shape") {
  Principle up = plus_version(uniformize(get_principle("Pi01G")));
  const Principle& trans = get_principle("PI01-TRANS");
  Signature sig = up.signature;
  sig.merge(trans.signature);
  NormalForm a_nf = uniform_plus_exists_nf(up.statement, sig);
  NormalizeResult cons = normalize(trans.statement, Logic::Classical, trans.signature);
  Herbrandisation h = herbrandise(a_nf, cons.nf, sig);
  // prefix: Phi, Xi, f
  FormulaPtr cur = h.body;
  std::vector<TypePtr> prefix;
  while (cur->kind == Formula::Kind::Forall) {
    prefix.push_back(cur->var_type);
    cur = cur->f1;
  }
  REQUIRE(prefix.size() == 3);
  REQUIRE(cur->kind == Formula::Kind::Implies);
  auto premises = conjunction_leaves(cur->f1);
  REQUIRE(premises.size() == 2);
  // extensionality family bounded by i(...)(1), zoo family by i(...)(2)
  CHECK(premises[0].second->kind == Formula::Kind::BoundedForallIn);
  CHECK(premises[0].second->t1->kind == Term::Kind::Proj1);
  CHECK(premises[1].second->kind == Formula::Kind::BoundedForallIn);
  CHECK(premises[1].second->f1->kind == Formula::Kind::BoundedForallIn);
  CHECK(premises[1].second->t1->kind == Term::Kind::Proj2);
  // conclusion search bound is o(...)
  REQUIRE(cur->f2->kind == Formula::Kind::Implies);
  CHECK(cur->f2->f2->kind == Formula::Kind::BoundedExistsLe);
  CHECK(cur->f2->f2->t1->kind == Term::Kind::FunSym);
  CHECK(cur->f2->f2->t1->name == h.o_name);
}

TEST_CASE("herbrandise: vacuous consequent existential") {
  Principle up = plus_version(uniformize(get_principle("Pi01G")));
  Signature sig = up.signature;
  NormalForm a_nf = uniform_plus_exists_nf(up.statement, sig);
  Signature vsig = parse_signature("var f : 1");
  FormulaPtr v = parse_formula("!st f:1. app(f,0) = 0", Signature{});
  auto cons = is_normal_form(v);
  REQUIRE(cons.has_value());
  Herbrandisation h = herbrandise(a_nf, *cons, sig);
  CHECK(h.vacuous_o);
  CHECK(is_internal(h.body));
  FormulaPtr back = meta_reverse(h);
  CHECK(back->kind == Formula::Kind::Implies);
}
