// Term and formula ASTs for higher-type arithmetic with a standardness predicate.
// All nodes are immutable; values are shared freely.
#ifndef NSZOO_AST_HPP
#define NSZOO_AST_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "nszoo/types.hpp"

namespace nszoo {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind {
    Var,     // name, type
    Zero,    // numeral 0
    Succ,    // successor, one arg
    App,     // args[0] applied to args[1]
    Pair,    // (args[0], args[1])
    Proj1,   // first component
    Proj2,   // second component
    SeqLit,  // sequence literal, elem_type set (needed when empty)
    Len,     // length of a sequence
    Idx,     // args[0] indexed at args[1]
    Max0,    // maximum entry of a 0^* sequence
    FunSym,  // declared symbol applied to args
  };
  Kind kind;
  std::string name;           // Var, FunSym
  TypePtr type;               // Var type; SeqLit element type
  std::vector<TermPtr> args;  // children
};

TermPtr mk_var(std::string name, TypePtr type);
TermPtr mk_zero();
TermPtr mk_succ(TermPtr t);
TermPtr mk_numeral(int n);
TermPtr mk_app(TermPtr f, TermPtr x);
TermPtr mk_pair(TermPtr a, TermPtr b);
// Right-nested tuple; singleton returns the term itself.
TermPtr mk_tuple(const std::vector<TermPtr>& ts);
TermPtr mk_proj1(TermPtr t);
TermPtr mk_proj2(TermPtr t);
TermPtr mk_seqlit(TypePtr elem, std::vector<TermPtr> elems);
TermPtr mk_len(TermPtr t);
TermPtr mk_idx(TermPtr t, TermPtr i);
TermPtr mk_max0(TermPtr t);
TermPtr mk_funsym(std::string name, std::vector<TermPtr> args);

// Selects 0-based component c of a right-nested product value with n components.
TermPtr mk_component(TermPtr t, int c, int n);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind {
    Eq,       // t1 = t2, type 0
    Le,       // t1 <= t2, type 0
    Pred,     // declared relation applied to args
    St,       // st(t1)
    Not,      // f1
    And,      // f1, f2
    Or,       // f1, f2
    Implies,  // f1 -> f2
    Forall,
    Exists,
    ForallSt,
    ExistsSt,
    BoundedForallLe,  // !v <= t1. f1   (v of type 0)
    BoundedExistsLe,  // ?v <= t1. f1
    BoundedForallIn,  // !v in t1. f1   (v of element type of t1)
    BoundedExistsIn,  // ?v in t1. f1
  };
  Kind kind;
  std::string name;  // Pred name, or bound variable name
  TypePtr var_type;  // bound variable type
  TermPtr t1, t2;
  std::vector<TermPtr> args;
  FormulaPtr f1, f2;
};

FormulaPtr mk_eq(TermPtr a, TermPtr b);
FormulaPtr mk_le(TermPtr a, TermPtr b);
FormulaPtr mk_pred(std::string name, std::vector<TermPtr> args);
FormulaPtr mk_st(TermPtr t);
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_neq(TermPtr a, TermPtr b);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_and_all(const std::vector<FormulaPtr>& fs);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_quant(Formula::Kind k, std::string var, TypePtr type, FormulaPtr body);
FormulaPtr mk_bounded(Formula::Kind k, std::string var, TypePtr var_type, TermPtr bound,
                      FormulaPtr body);

bool is_quantifier(Formula::Kind k);
bool is_bounded_quantifier(Formula::Kind k);

// Structural equality (names included).
bool term_equal(const TermPtr& a, const TermPtr& b);
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

// Equality up to renaming of bound variables.
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);

std::set<std::string> free_vars(const TermPtr& t);
std::set<std::string> free_vars(const FormulaPtr& f);
// All variable and symbol names occurring anywhere (for fresh-name generation).
std::set<std::string> all_names(const FormulaPtr& f);
// Names used as declared symbols (function applications and relation atoms).
std::set<std::string> symbol_names(const FormulaPtr& f);

}  // namespace nszoo

#endif
