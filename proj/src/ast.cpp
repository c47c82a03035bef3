#include "nszoo/ast.hpp"

#include <algorithm>
#include <map>

namespace nszoo {

namespace {
TermPtr term_node(Term::Kind k, std::string name, TypePtr type, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{k, std::move(name), std::move(type), std::move(args)});
}
FormulaPtr formula_node(Formula f) { return std::make_shared<Formula>(std::move(f)); }
}  // namespace

TermPtr mk_var(std::string name, TypePtr type) {
  return term_node(Term::Kind::Var, std::move(name), std::move(type), {});
}
TermPtr mk_zero() { return term_node(Term::Kind::Zero, "", nullptr, {}); }
TermPtr mk_succ(TermPtr t) { return term_node(Term::Kind::Succ, "", nullptr, {std::move(t)}); }
TermPtr mk_numeral(int n) {
  TermPtr t = mk_zero();
  for (int i = 0; i < n; i++) t = mk_succ(t);
  return t;
}
TermPtr mk_app(TermPtr f, TermPtr x) {
  return term_node(Term::Kind::App, "", nullptr, {std::move(f), std::move(x)});
}
TermPtr mk_pair(TermPtr a, TermPtr b) {
  return term_node(Term::Kind::Pair, "", nullptr, {std::move(a), std::move(b)});
}
TermPtr mk_tuple(const std::vector<TermPtr>& ts) {
  TermPtr t = ts.back();
  for (int i = static_cast<int>(ts.size()) - 2; i >= 0; i--) t = mk_pair(ts[i], t);
  return t;
}
TermPtr mk_proj1(TermPtr t) { return term_node(Term::Kind::Proj1, "", nullptr, {std::move(t)}); }
TermPtr mk_proj2(TermPtr t) { return term_node(Term::Kind::Proj2, "", nullptr, {std::move(t)}); }
TermPtr mk_seqlit(TypePtr elem, std::vector<TermPtr> elems) {
  return term_node(Term::Kind::SeqLit, "", std::move(elem), std::move(elems));
}
TermPtr mk_len(TermPtr t) { return term_node(Term::Kind::Len, "", nullptr, {std::move(t)}); }
TermPtr mk_idx(TermPtr t, TermPtr i) {
  return term_node(Term::Kind::Idx, "", nullptr, {std::move(t), std::move(i)});
}
TermPtr mk_max0(TermPtr t) { return term_node(Term::Kind::Max0, "", nullptr, {std::move(t)}); }
TermPtr mk_funsym(std::string name, std::vector<TermPtr> args) {
  return term_node(Term::Kind::FunSym, std::move(name), nullptr, std::move(args));
}

TermPtr mk_component(TermPtr t, int c, int n) {
  // component c of n: chase Proj2 c times, then Proj1 unless at the last slot
  for (int i = 0; i < c; i++) t = mk_proj2(t);
  if (c < n - 1) t = mk_proj1(t);
  return t;
}

FormulaPtr mk_eq(TermPtr a, TermPtr b) {
  return formula_node({Formula::Kind::Eq, "", nullptr, std::move(a), std::move(b), {}, nullptr, nullptr});
}
FormulaPtr mk_le(TermPtr a, TermPtr b) {
  return formula_node({Formula::Kind::Le, "", nullptr, std::move(a), std::move(b), {}, nullptr, nullptr});
}
FormulaPtr mk_pred(std::string name, std::vector<TermPtr> args) {
  return formula_node({Formula::Kind::Pred, std::move(name), nullptr, nullptr, nullptr,
                       std::move(args), nullptr, nullptr});
}
FormulaPtr mk_st(TermPtr t) {
  return formula_node({Formula::Kind::St, "", nullptr, std::move(t), nullptr, {}, nullptr, nullptr});
}
FormulaPtr mk_not(FormulaPtr f) {
  return formula_node({Formula::Kind::Not, "", nullptr, nullptr, nullptr, {}, std::move(f), nullptr});
}
FormulaPtr mk_neq(TermPtr a, TermPtr b) { return mk_not(mk_eq(std::move(a), std::move(b))); }
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
  return formula_node({Formula::Kind::And, "", nullptr, nullptr, nullptr, {}, std::move(a), std::move(b)});
}
FormulaPtr mk_and_all(const std::vector<FormulaPtr>& fs) {
  FormulaPtr f = fs.back();
  for (int i = static_cast<int>(fs.size()) - 2; i >= 0; i--) f = mk_and(fs[i], f);
  return f;
}
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
  return formula_node({Formula::Kind::Or, "", nullptr, nullptr, nullptr, {}, std::move(a), std::move(b)});
}
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
  return formula_node({Formula::Kind::Implies, "", nullptr, nullptr, nullptr, {}, std::move(a), std::move(b)});
}
FormulaPtr mk_quant(Formula::Kind k, std::string var, TypePtr type, FormulaPtr body) {
  return formula_node({k, std::move(var), std::move(type), nullptr, nullptr, {}, std::move(body), nullptr});
}
FormulaPtr mk_bounded(Formula::Kind k, std::string var, TypePtr var_type, TermPtr bound,
                      FormulaPtr body) {
  return formula_node({k, std::move(var), std::move(var_type), std::move(bound), nullptr, {},
                       std::move(body), nullptr});
}

bool is_quantifier(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
    case Formula::Kind::ForallSt:
    case Formula::Kind::ExistsSt:
      return true;
    default:
      return is_bounded_quantifier(k);
  }
}

bool is_bounded_quantifier(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::BoundedForallLe:
    case Formula::Kind::BoundedExistsLe:
    case Formula::Kind::BoundedForallIn:
    case Formula::Kind::BoundedExistsIn:
      return true;
    default:
      return false;
  }
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  bool a_has_type = a->type != nullptr, b_has_type = b->type != nullptr;
  if (a_has_type != b_has_type) return false;
  if (a_has_type && !type_equal(a->type, b->type)) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); i++)
    if (!term_equal(a->args[i], b->args[i])) return false;
  return true;
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  bool at = a->var_type != nullptr, bt = b->var_type != nullptr;
  if (at != bt || (at && !type_equal(a->var_type, b->var_type))) return false;
  if ((a->t1 != nullptr) != (b->t1 != nullptr) || (a->t2 != nullptr) != (b->t2 != nullptr))
    return false;
  if (a->t1 && !term_equal(a->t1, b->t1)) return false;
  if (a->t2 && !term_equal(a->t2, b->t2)) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); i++)
    if (!term_equal(a->args[i], b->args[i])) return false;
  if ((a->f1 != nullptr) != (b->f1 != nullptr) || (a->f2 != nullptr) != (b->f2 != nullptr))
    return false;
  if (a->f1 && !formula_equal(a->f1, b->f1)) return false;
  if (a->f2 && !formula_equal(a->f2, b->f2)) return false;
  return true;
}

namespace {

// Alpha comparison via binder levels: a bound variable is identified by the
// depth of its binder, a free variable by its name and type.
using LevelMap = std::map<std::string, int>;

bool alpha_term(const TermPtr& a, const TermPtr& b, const LevelMap& la, const LevelMap& lb) {
  if (!a || !b) return a.get() == b.get();
  if (a->kind != b->kind) return false;
  if (a->kind == Term::Kind::Var) {
    auto ia = la.find(a->name);
    auto ib = lb.find(b->name);
    if ((ia != la.end()) != (ib != lb.end())) return false;
    if (ia != la.end()) return ia->second == ib->second;
    return a->name == b->name && type_equal(a->type, b->type);
  }
  if (a->name != b->name) return false;
  if ((a->type != nullptr) != (b->type != nullptr)) return false;
  if (a->type && !type_equal(a->type, b->type)) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); i++)
    if (!alpha_term(a->args[i], b->args[i], la, lb)) return false;
  return true;
}

bool alpha_formula(const FormulaPtr& a, const FormulaPtr& b, LevelMap la, LevelMap lb, int depth) {
  if (!a || !b) return a.get() == b.get();
  if (a->kind != b->kind) return false;
  if (is_quantifier(a->kind)) {
    if ((a->var_type != nullptr) != (b->var_type != nullptr)) return false;
    if (a->var_type && !type_equal(a->var_type, b->var_type)) return false;
    if ((a->t1 != nullptr) != (b->t1 != nullptr)) return false;
    if (a->t1 && !alpha_term(a->t1, b->t1, la, lb)) return false;
    la[a->name] = depth;
    lb[b->name] = depth;
    return alpha_formula(a->f1, b->f1, std::move(la), std::move(lb), depth + 1);
  }
  if (a->kind == Formula::Kind::Pred && a->name != b->name) return false;
  if ((a->t1 != nullptr) != (b->t1 != nullptr) || (a->t2 != nullptr) != (b->t2 != nullptr))
    return false;
  if (a->t1 && !alpha_term(a->t1, b->t1, la, lb)) return false;
  if (a->t2 && !alpha_term(a->t2, b->t2, la, lb)) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); i++)
    if (!alpha_term(a->args[i], b->args[i], la, lb)) return false;
  if ((a->f1 != nullptr) != (b->f1 != nullptr) || (a->f2 != nullptr) != (b->f2 != nullptr))
    return false;
  if (a->f1 && !alpha_formula(a->f1, b->f1, la, lb, depth + 1)) return false;
  if (a->f2 && !alpha_formula(a->f2, b->f2, la, lb, depth + 1)) return false;
  return true;
}

void collect_free_term(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == Term::Kind::Var) {
    if (bound.count(t->name) == 0) out.insert(t->name);
    return;
  }
  for (const auto& a : t->args) collect_free_term(a, bound, out);
}

void collect_free(const FormulaPtr& f, std::set<std::string> bound, std::set<std::string>& out) {
  if (!f) return;
  if (is_quantifier(f->kind)) {
    if (f->t1) collect_free_term(f->t1, bound, out);  // bound term is outside the binder
    bound.insert(f->name);
    collect_free(f->f1, bound, out);
    return;
  }
  if (f->t1) collect_free_term(f->t1, bound, out);
  if (f->t2) collect_free_term(f->t2, bound, out);
  for (const auto& a : f->args) collect_free_term(a, bound, out);
  collect_free(f->f1, bound, out);
  collect_free(f->f2, bound, out);
}

void collect_names_term(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (!t->name.empty()) out.insert(t->name);
  for (const auto& a : t->args) collect_names_term(a, out);
}

void collect_names(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f) return;
  if (!f->name.empty()) out.insert(f->name);
  collect_names_term(f->t1, out);
  collect_names_term(f->t2, out);
  for (const auto& a : f->args) collect_names_term(a, out);
  collect_names(f->f1, out);
  collect_names(f->f2, out);
}

}  // namespace

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
  return alpha_formula(a, b, {}, {}, 0);
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, out;
  collect_free_term(t, bound, out);
  return out;
}

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_free(f, {}, out);
  return out;
}

std::set<std::string> all_names(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_names(f, out);
  return out;
}

namespace {

void collect_symbols_term(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == Term::Kind::FunSym) out.insert(t->name);
  for (const auto& a : t->args) collect_symbols_term(a, out);
}

void collect_symbols(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f) return;
  if (f->kind == Formula::Kind::Pred) out.insert(f->name);
  collect_symbols_term(f->t1, out);
  collect_symbols_term(f->t2, out);
  for (const auto& a : f->args) collect_symbols_term(a, out);
  collect_symbols(f->f1, out);
  collect_symbols(f->f2, out);
}

}  // namespace

std::set<std::string> symbol_names(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_symbols(f, out);
  return out;
}

}  // namespace nszoo
