#include <random>

#include "doctest.h"
#include "nszoo/ast.hpp"
#include "nszoo/ops.hpp"
#include "nszoo/parse.hpp"
#include "nszoo/print.hpp"

using namespace nszoo;

namespace {

Signature sig_with(const std::string& headers) { return parse_signature(headers); }

FormulaPtr roundtrip(const std::string& text, const Signature& sig) {
  FormulaPtr f = parse_formula(text, sig);
  std::string printed = print_formula(f, sig);
  FormulaPtr g = parse_formula(printed, sig);
  CHECK(formula_equal(f, g));
  CHECK(print_formula(g, sig) == printed);
  return f;
}

}  // namespace

TEST_CASE("types: pure shorthand decodes and re-encodes") {
  CHECK(type_equal(parse_type("1"), type_arrow(type_base(), type_base())));
  CHECK(type_equal(parse_type("2"), type_arrow(parse_type("1"), type_base())));
  CHECK(show_type(parse_type("(0 -> 0)")) == "1");
  CHECK(show_type(parse_type("((1 * 1) -> (1 * 1))")) == "((1 * 1) -> (1 * 1))");
  CHECK(show_type(parse_type("(1 -> 0)^*")) == "2^*");
  CHECK(type_equal(parse_type(show_type(parse_type("((0 -> (0 * 1)) -> 2)^*"))),
                   parse_type("((0 -> (0 * 1)) -> 2)^*")));
}

TEST_CASE("parse: transfer principle surface text") {
  Signature sig;
  FormulaPtr f =
      roundtrip("!st f:1. (?n:0. app(f,n) = 0) -> ?st m:0. app(f,m) = 0", sig);
  CHECK(f->kind == Formula::Kind::ForallSt);
  CHECK(f->f1->kind == Formula::Kind::Implies);
  CHECK(f->f1->f1->kind == Formula::Kind::Exists);
  CHECK(f->f1->f2->kind == Formula::Kind::ExistsSt);
  CHECK(classify_internal(f) == Classification::External);
}

TEST_CASE("parse: internal reflexivity") {
  Signature sig;
  FormulaPtr f = roundtrip("!x:0. x = x", sig);
  CHECK(classify_internal(f) == Classification::Internal);
}

TEST_CASE("parse: ill-typed application is a type error") {
  Signature sig;
  CHECK_THROWS_AS(parse_formula("!x:0. !y:0. app(x,y) = 0", sig), TypeError);
}

TEST_CASE("parse: undeclared symbol and syntax errors carry positions") {
  Signature sig;
  CHECK_THROWS_AS(parse_formula("!x:0. mystery(x) = 0", sig), ParseError);
  try {
    parse_formula("!x:0.\n x = ", sig);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("typecheck: arrow elimination, sequence max, product pairing") {
  Signature sig;
  TypeContext ctx;
  ctx["f"] = parse_type("1");
  ctx["n"] = parse_type("0");
  ctx["g"] = parse_type("1");
  CHECK(type_equal(typecheck(parse_term("app(f,n)", sig, ctx), ctx, sig), type_base()));
  CHECK(type_equal(typecheck(parse_term("max0([app(f,0),app(f,1)])", sig, ctx), ctx, sig),
                   type_base()));
  CHECK(type_equal(typecheck(parse_term("(f,g)", sig, ctx), ctx, sig), parse_type("(1 * 1)")));
  CHECK_THROWS_AS(typecheck(parse_term("max0([f])", sig, ctx), ctx, sig), TypeError);
  CHECK_THROWS_AS(typecheck(mk_var("loose", type_base()), TypeContext{}, sig), TypeError);
}

TEST_CASE("terms: product-domain application flattens and reparses") {
  Signature sig = sig_with("var Phi : ((1 * 1) -> (1 * 1))\nvar f : 1\nvar g : 1\nvar i : 0");
  TypeContext ctx;
  for (const auto& [n, vd] : sig.vars()) ctx[n] = vd.type;
  TermPtr t = parse_term("app(proj2(app(Phi,f,g)),i)", sig, ctx);
  CHECK(type_equal(typecheck(t, ctx, sig), type_base()));
  std::string printed = print_term(t, ctx, sig);
  CHECK(printed == "app(proj2(app(Phi,f,g)),i)");
  CHECK(term_equal(parse_term(printed, sig, ctx), t));
  // a product argument that is not a literal tuple stays grouped
  Signature sig2 = sig_with("var Phi : ((1 * 1) -> (1 * 1))\nvar p : (1 * 1)");
  TypeContext ctx2;
  for (const auto& [n, vd] : sig2.vars()) ctx2[n] = vd.type;
  TermPtr u = parse_term("app(Phi,p)", sig2, ctx2);
  CHECK(print_term(u, ctx2, sig2) == "app(Phi,p)");
  CHECK(term_equal(parse_term(print_term(u, ctx2, sig2), sig2, ctx2), u));
}

TEST_CASE("substitute: plain and capture-avoiding") {
  Signature sig = sig_with("sym P : 0 x 0 -> 0");
  Signature sigv = sig_with("sym P : 0 x 0 -> 0\nvar f : 1\nvar g : 1\nvar m : 0\nvar n : 0");
  FormulaPtr f = parse_formula("?n:0. app(f,n) = 0", sigv);
  FormulaPtr fg = substitute(f, "f", mk_var("g", parse_type("1")));
  CHECK(formula_equal(fg, parse_formula("?n:0. app(g,n) = 0", sigv)));

  FormulaPtr h = parse_formula("!n:0. P(n,m)", sigv);
  FormulaPtr hn = substitute(h, "m", mk_var("n", type_base()));
  CHECK(free_vars(hn).count("n") == 1);
  CHECK(hn->name != "n");  // bound variable renamed
  CHECK(alpha_equal(hn, parse_formula("!k:0. P(k,n)", sigv)));
}

TEST_CASE("substitution lemma on random formulas") {
  // free(phi[x:=t]) = (free(phi) \ {x}) u free(t) whenever x is free in phi
  std::mt19937_64 rng(20260809);
  Signature sig = sig_with("sym P : 0 -> 0\nsym Q : 0 x 0 -> 0");
  std::vector<std::string> pool = {"x", "y", "z", "w"};
  auto rand_term = [&](auto&& self, int depth) -> TermPtr {
    int k = static_cast<int>(rng() % (depth > 0 ? 4 : 2));
    switch (k) {
      case 0:
        return mk_var(pool[rng() % pool.size()], type_base());
      case 1:
        return mk_numeral(static_cast<int>(rng() % 3));
      case 2:
        return mk_succ(self(self, depth - 1));
      default:
        return mk_var(pool[rng() % pool.size()], type_base());
    }
  };
  auto rand_formula = [&](auto&& self, int depth) -> FormulaPtr {
    int k = static_cast<int>(rng() % (depth > 0 ? 7 : 2));
    switch (k) {
      case 0:
        return mk_pred("P", {rand_term(rand_term, depth)});
      case 1:
        return mk_eq(rand_term(rand_term, depth), rand_term(rand_term, depth));
      case 2:
        return mk_not(self(self, depth - 1));
      case 3:
        return mk_and(self(self, depth - 1), self(self, depth - 1));
      case 4:
        return mk_implies(self(self, depth - 1), self(self, depth - 1));
      case 5:
        return mk_quant(Formula::Kind::Forall, pool[rng() % pool.size()], type_base(),
                        self(self, depth - 1));
      default:
        return mk_pred("Q", {rand_term(rand_term, depth), rand_term(rand_term, depth)});
    }
  };
  int applied = 0;
  for (int i = 0; i < 1000; i++) {
    FormulaPtr f = rand_formula(rand_formula, 3);
    std::string x = pool[rng() % pool.size()];
    TermPtr t = rand_term(rand_term, 2);
    auto before = free_vars(f);
    if (before.count(x) == 0) continue;
    applied++;
    FormulaPtr g = substitute(f, x, t);
    auto expect = before;
    expect.erase(x);
    for (const auto& v : free_vars(t)) expect.insert(v);
    CHECK(free_vars(g) == expect);
  }
  CHECK(applied > 100);
}

TEST_CASE("classify and relativize") {
  Signature sig = sig_with("sym P : 1 x 1 -> 0");
  FormulaPtr f = parse_formula("!x:1. ?y:1. P(x,y)", sig);
  FormulaPtr r = relativize_st(f);
  CHECK(formula_equal(r, parse_formula("!st x:1. ?st y:1. P(x,y)", sig)));
  CHECK(classify_internal(r) == Classification::External);

  Signature sigv = sig_with("var f : 1\nvar m : 0");
  FormulaPtr b = parse_formula("?i <= m. app(f,i) = 0", sigv);
  CHECK(formula_equal(relativize_st(b), b));  // bounded quantifiers are exempt

  FormulaPtr qf = parse_formula("app(f,0) = 0", sigv);
  CHECK(formula_equal(relativize_st(qf), qf));
  CHECK(classify_internal(relativize_st(qf)) == Classification::Internal);

  CHECK_THROWS_AS(relativize_st(parse_formula("st(m)", sigv)), EngineError);
}

TEST_CASE("expand_equality") {
  Signature sig = sig_with("var x : 1\nvar y : 1\nvar a : 0\nvar b : 0");
  TypeContext ctx;
  for (const auto& [n, vd] : sig.vars()) ctx[n] = vd.type;

  FormulaPtr approx1 = parse_formula("x ~~[1] y", sig);
  CHECK(alpha_equal(approx1, parse_formula("!st n:0. app(x,n) = app(y,n)", sig)));

  FormulaPtr exact0 = parse_formula("a ==[0] b", sig);
  CHECK(formula_equal(exact0, parse_formula("a = b", sig)));

  // the Approx variant differs from Exact only in quantifier flavor
  FormulaPtr exact1 = parse_formula("x ==[1] y", sig);
  CHECK(formula_equal(erase_st(approx1), exact1));

  // componentwise at product type
  Signature sig2 = sig_with("var Phi : ((1 * 1) -> (1 * 1))\nvar f : 1\nvar g : 1\nvar u : 1\nvar v : 1");
  FormulaPtr prod = parse_formula("app(Phi,f,g) ~~[(1 * 1)] app(Phi,u,v)", sig2);
  CHECK(prod->kind == Formula::Kind::And);
  CHECK(prod->f1->kind == Formula::Kind::ForallSt);
  CHECK(classify_internal(prod) == Classification::External);

  // not ground-returning
  TypeContext ctx3;
  ctx3["s"] = parse_type("0^*");
  ctx3["t"] = parse_type("0^*");
  CHECK_THROWS_AS(
      expand_equality(mk_var("s", parse_type("0^*")), mk_var("t", parse_type("0^*")),
                      parse_type("0^*"), EqMode::Exact, ctx3, Signature{}),
      EngineError);
}

TEST_CASE("roundtrip: nested constructs and canonical whitespace") {
  Signature sig = sig_with("sym T : 0 x 0 x 1 x 0 x 0 -> 0\nvar w : 0^*");
  roundtrip("!A:1. ?f:1. !e:0. !s:0. !m:0. T(e,s,A,e,m) -> app(f,e) != m", sig);
  roundtrip("?x':0^*. (!x in x'. app(f,x) = 0) -> 0 = 0", sig_with("var f : 1"));
  roundtrip("~(0 = 1 & 0 <= 2) | ~(~0 = 3)", sig);
  roundtrip("!x:0. x = x -> (?y:0. y = x) & 1 <= x", sig);
  roundtrip("st(w) -> ?u in w. u = 0", sig_with("var w : 0^*"));
  roundtrip("len([]:0) = 0 & idx([1,2],0) = 1", sig);
  roundtrip("max0([S(S(0)),3]) <= 4", sig);
}

TEST_CASE("roundtrip: empty and nested sequence literals") {
  Signature sig;
  TypeContext ctx;
  TermPtr t = parse_term("[[1,2],[]:0]", sig, ctx);
  CHECK(type_equal(typecheck(t, ctx, sig), parse_type("(0^*)^*")));
  CHECK(term_equal(parse_term(print_term(t, ctx, sig), sig, ctx), t));
}
