#include "nszoo/ops.hpp"

#include <algorithm>

namespace nszoo {

namespace {

std::string term_head(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var:
      return "variable " + t->name;
    case Term::Kind::FunSym:
      return "symbol " + t->name;
    default:
      return "term";
  }
}

}  // namespace

TypePtr typecheck(const TermPtr& t, const TypeContext& ctx, const Signature& sig) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = ctx.find(t->name);
      if (it == ctx.end()) {
        if (sig.has_var(t->name)) {
          if (!type_equal(sig.get_var(t->name).type, t->type))
            throw TypeError("variable " + t->name + " used at type " + show_type(t->type) +
                            " but declared " + show_type(sig.get_var(t->name).type));
          return t->type;
        }
        throw TypeError("unbound variable " + t->name);
      }
      if (!type_equal(it->second, t->type))
        throw TypeError("variable " + t->name + " used at type " + show_type(t->type) +
                        " but bound at " + show_type(it->second));
      return t->type;
    }
    case Term::Kind::Zero:
      return type_base();
    case Term::Kind::Succ: {
      TypePtr a = typecheck(t->args[0], ctx, sig);
      if (a->kind != Type::Kind::Base) throw TypeError("S applied to non-number");
      return type_base();
    }
    case Term::Kind::App: {
      TypePtr f = typecheck(t->args[0], ctx, sig);
      if (f->kind != Type::Kind::Arrow)
        throw TypeError("application head has non-arrow type " + show_type(f) + " (" +
                        term_head(t->args[0]) + ")");
      TypePtr x = typecheck(t->args[1], ctx, sig);
      if (!type_equal(f->a, x))
        throw TypeError("argument type " + show_type(x) + " does not match domain " +
                        show_type(f->a));
      return f->b;
    }
    case Term::Kind::Pair:
      return type_prod(typecheck(t->args[0], ctx, sig), typecheck(t->args[1], ctx, sig));
    case Term::Kind::Proj1: {
      TypePtr p = typecheck(t->args[0], ctx, sig);
      if (p->kind != Type::Kind::Prod) throw TypeError("proj1 of non-product " + show_type(p));
      return p->a;
    }
    case Term::Kind::Proj2: {
      TypePtr p = typecheck(t->args[0], ctx, sig);
      if (p->kind != Type::Kind::Prod) throw TypeError("proj2 of non-product " + show_type(p));
      return p->b;
    }
    case Term::Kind::SeqLit: {
      for (const auto& e : t->args) {
        TypePtr et = typecheck(e, ctx, sig);
        if (!type_equal(et, t->type))
          throw TypeError("sequence element of type " + show_type(et) + " in a " +
                          show_type(t->type) + " sequence");
      }
      return type_seq(t->type);
    }
    case Term::Kind::Len: {
      TypePtr s = typecheck(t->args[0], ctx, sig);
      if (s->kind != Type::Kind::Seq) throw TypeError("len of non-sequence " + show_type(s));
      return type_base();
    }
    case Term::Kind::Idx: {
      TypePtr s = typecheck(t->args[0], ctx, sig);
      if (s->kind != Type::Kind::Seq) throw TypeError("idx of non-sequence " + show_type(s));
      TypePtr i = typecheck(t->args[1], ctx, sig);
      if (i->kind != Type::Kind::Base) throw TypeError("sequence index must have type 0");
      return s->a;
    }
    case Term::Kind::Max0: {
      TypePtr s = typecheck(t->args[0], ctx, sig);
      if (s->kind != Type::Kind::Seq || s->a->kind != Type::Kind::Base)
        throw TypeError("max0 needs a 0^* sequence, got " + show_type(s));
      return type_base();
    }
    case Term::Kind::FunSym: {
      if (!sig.has(t->name)) throw TypeError("undeclared symbol " + t->name);
      const SymbolDecl& d = sig.get(t->name);
      if (d.params.size() != t->args.size())
        throw TypeError("symbol " + t->name + " expects " + std::to_string(d.params.size()) +
                        " arguments, got " + std::to_string(t->args.size()));
      for (size_t i = 0; i < t->args.size(); i++) {
        TypePtr a = typecheck(t->args[i], ctx, sig);
        if (!type_equal(a, d.params[i]))
          throw TypeError("argument " + std::to_string(i + 1) + " of " + t->name + " has type " +
                          show_type(a) + ", expected " + show_type(d.params[i]));
      }
      return d.result;
    }
  }
  throw TypeError("malformed term");
}

void typecheck(const FormulaPtr& f, const TypeContext& ctx, const Signature& sig) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Le: {
      TypePtr a = typecheck(f->t1, ctx, sig);
      TypePtr b = typecheck(f->t2, ctx, sig);
      if (a->kind != Type::Kind::Base || b->kind != Type::Kind::Base)
        throw TypeError("atomic comparison requires type 0 on both sides");
      return;
    }
    case Formula::Kind::Pred: {
      if (!sig.has(f->name)) throw TypeError("undeclared relation " + f->name);
      const SymbolDecl& d = sig.get(f->name);
      if (d.result->kind != Type::Kind::Base)
        throw TypeError("relation " + f->name + " must be 0-valued");
      if (d.params.size() != f->args.size())
        throw TypeError("relation " + f->name + " expects " + std::to_string(d.params.size()) +
                        " arguments, got " + std::to_string(f->args.size()));
      for (size_t i = 0; i < f->args.size(); i++) {
        TypePtr a = typecheck(f->args[i], ctx, sig);
        if (!type_equal(a, d.params[i]))
          throw TypeError("argument " + std::to_string(i + 1) + " of " + f->name + " has type " +
                          show_type(a) + ", expected " + show_type(d.params[i]));
      }
      return;
    }
    case Formula::Kind::St:
      typecheck(f->t1, ctx, sig);
      return;
    case Formula::Kind::Not:
      typecheck(f->f1, ctx, sig);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      typecheck(f->f1, ctx, sig);
      typecheck(f->f2, ctx, sig);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
    case Formula::Kind::ForallSt:
    case Formula::Kind::ExistsSt: {
      TypeContext inner = ctx;
      inner[f->name] = f->var_type;
      typecheck(f->f1, inner, sig);
      return;
    }
    case Formula::Kind::BoundedForallLe:
    case Formula::Kind::BoundedExistsLe: {
      TypePtr b = typecheck(f->t1, ctx, sig);
      if (b->kind != Type::Kind::Base) throw TypeError("numeric bound must have type 0");
      if (f->var_type->kind != Type::Kind::Base)
        throw TypeError("<=-bounded variable must have type 0");
      TypeContext inner = ctx;
      inner[f->name] = f->var_type;
      typecheck(f->f1, inner, sig);
      return;
    }
    case Formula::Kind::BoundedForallIn:
    case Formula::Kind::BoundedExistsIn: {
      TypePtr b = typecheck(f->t1, ctx, sig);
      if (b->kind != Type::Kind::Seq) throw TypeError("in-bound must be a sequence");
      if (!type_equal(b->a, f->var_type))
        throw TypeError("in-bounded variable type " + show_type(f->var_type) +
                        " does not match element type " + show_type(b->a));
      TypeContext inner = ctx;
      inner[f->name] = f->var_type;
      typecheck(f->f1, inner, sig);
      return;
    }
  }
  throw TypeError("malformed formula");
}

TermPtr apply_term(TermPtr head, const std::vector<TermPtr>& args, const TypeContext& ctx,
                   const Signature& sig) {
  size_t i = 0;
  TermPtr cur = std::move(head);
  while (i < args.size()) {
    TypePtr ht = typecheck(cur, ctx, sig);
    if (ht->kind != Type::Kind::Arrow)
      throw TypeError("too many arguments: head has type " + show_type(ht));
    size_t ncomp = product_components(ht->a).size();
    if (ncomp > 1 && args.size() - i >= ncomp) {
      std::vector<TermPtr> tuple(args.begin() + i, args.begin() + i + ncomp);
      cur = mk_app(cur, mk_tuple(tuple));
      i += ncomp;
    } else {
      cur = mk_app(cur, args[i]);
      i += 1;
    }
  }
  return cur;
}

Classification classify_internal(const FormulaPtr& f) {
  return is_internal(f) ? Classification::Internal : Classification::External;
}

bool is_internal(const FormulaPtr& f) {
  if (!f) return true;
  switch (f->kind) {
    case Formula::Kind::St:
    case Formula::Kind::ForallSt:
    case Formula::Kind::ExistsSt:
      return false;
    default:
      return is_internal(f->f1) && is_internal(f->f2);
  }
}

TermPtr substitute(const TermPtr& t, const std::string& var, const TermPtr& replacement) {
  if (!t) return t;
  if (t->kind == Term::Kind::Var) return t->name == var ? replacement : t;
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const auto& a : t->args) {
    TermPtr na = substitute(a, var, replacement);
    changed = changed || na.get() != a.get();
    args.push_back(std::move(na));
  }
  if (!changed) return t;
  return std::make_shared<Term>(Term{t->kind, t->name, t->type, std::move(args)});
}

namespace {

// Renames the bound variable of f (a quantifier node) to fresh, returning the
// new body; used to avoid capture.
FormulaPtr rename_bound(const FormulaPtr& f, const std::string& fresh) {
  return substitute(f->f1, f->name, mk_var(fresh, f->var_type));
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& replacement) {
  if (!f) return f;
  if (is_quantifier(f->kind)) {
    TermPtr bound = f->t1 ? substitute(f->t1, var, replacement) : nullptr;
    if (f->name == var) {
      if (bound.get() == f->t1.get()) return f;
      return std::make_shared<Formula>(
          Formula{f->kind, f->name, f->var_type, bound, nullptr, {}, f->f1, nullptr});
    }
    FormulaPtr body = f->f1;
    std::string name = f->name;
    std::set<std::string> repl_free = free_vars(replacement);
    if (repl_free.count(name) > 0 && free_vars(body).count(var) > 0) {
      std::set<std::string> used = all_names(body);
      used.insert(repl_free.begin(), repl_free.end());
      used.insert(var);
      name = fresh_name(f->name, used);
      body = rename_bound(f, name);
    }
    body = substitute(body, var, replacement);
    return std::make_shared<Formula>(
        Formula{f->kind, name, f->var_type, bound, nullptr, {}, body, nullptr});
  }
  TermPtr t1 = f->t1 ? substitute(f->t1, var, replacement) : nullptr;
  TermPtr t2 = f->t2 ? substitute(f->t2, var, replacement) : nullptr;
  std::vector<TermPtr> args;
  args.reserve(f->args.size());
  for (const auto& a : f->args) args.push_back(substitute(a, var, replacement));
  FormulaPtr f1 = substitute(f->f1, var, replacement);
  FormulaPtr f2 = substitute(f->f2, var, replacement);
  return std::make_shared<Formula>(
      Formula{f->kind, f->name, f->var_type, t1, t2, std::move(args), f1, f2});
}

FormulaPtr relativize_st(const FormulaPtr& f) {
  if (!is_internal(f)) throw EngineError("relativize_st: input formula is not internal");
  struct Rec {
    static FormulaPtr go(const FormulaPtr& f) {
      if (!f) return f;
      switch (f->kind) {
        case Formula::Kind::Forall:
          return mk_quant(Formula::Kind::ForallSt, f->name, f->var_type, go(f->f1));
        case Formula::Kind::Exists:
          return mk_quant(Formula::Kind::ExistsSt, f->name, f->var_type, go(f->f1));
        case Formula::Kind::BoundedForallLe:
        case Formula::Kind::BoundedExistsLe:
        case Formula::Kind::BoundedForallIn:
        case Formula::Kind::BoundedExistsIn:
          // bounded quantifiers are exempt from relativization
          return mk_bounded(f->kind, f->name, f->var_type, f->t1, go(f->f1));
        case Formula::Kind::Not:
          return mk_not(go(f->f1));
        case Formula::Kind::And:
          return mk_and(go(f->f1), go(f->f2));
        case Formula::Kind::Or:
          return mk_or(go(f->f1), go(f->f2));
        case Formula::Kind::Implies:
          return mk_implies(go(f->f1), go(f->f2));
        default:
          return f;
      }
    }
  };
  return Rec::go(f);
}

FormulaPtr erase_st(const FormulaPtr& f) {
  if (!f) return f;
  switch (f->kind) {
    case Formula::Kind::St:
      throw EngineError("erase_st: formula contains an st atom");
    case Formula::Kind::ForallSt:
      return mk_quant(Formula::Kind::Forall, f->name, f->var_type, erase_st(f->f1));
    case Formula::Kind::ExistsSt:
      return mk_quant(Formula::Kind::Exists, f->name, f->var_type, erase_st(f->f1));
    default: {
      if (is_quantifier(f->kind))
        return mk_bounded(f->kind, f->name, f->var_type, f->t1, erase_st(f->f1));
      FormulaPtr f1 = erase_st(f->f1);
      FormulaPtr f2 = erase_st(f->f2);
      if (f1.get() == f->f1.get() && f2.get() == f->f2.get()) return f;
      return std::make_shared<Formula>(
          Formula{f->kind, f->name, f->var_type, f->t1, f->t2, f->args, f1, f2});
    }
  }
}

FormulaPtr expand_equality(const TermPtr& lhs, const TermPtr& rhs, const TypePtr& tau,
                           EqMode mode, const TypeContext& ctx, const Signature& sig) {
  if (tau->kind == Type::Kind::Prod) {
    auto comps = product_components(tau);
    std::vector<FormulaPtr> parts;
    for (size_t c = 0; c < comps.size(); c++) {
      TermPtr l = mk_component(lhs, static_cast<int>(c), static_cast<int>(comps.size()));
      TermPtr r = mk_component(rhs, static_cast<int>(c), static_cast<int>(comps.size()));
      parts.push_back(expand_equality(l, r, comps[c], mode, ctx, sig));
    }
    return mk_and_all(parts);
  }
  // uncurry tau, flattening product domains into argument lists
  std::vector<TypePtr> arg_types;
  TypePtr cur = tau;
  while (cur->kind == Type::Kind::Arrow) {
    for (const auto& c : product_components(cur->a)) arg_types.push_back(c);
    cur = cur->b;
  }
  if (cur->kind != Type::Kind::Base)
    throw EngineError("expand_equality: type " + show_type(tau) +
                      " is not ground-returning after uncurrying");
  if (arg_types.empty()) return mk_eq(lhs, rhs);
  std::set<std::string> used = free_vars(lhs);
  for (const auto& v : free_vars(rhs)) used.insert(v);
  std::vector<TermPtr> zs;
  std::vector<std::pair<std::string, TypePtr>> binders;
  for (size_t i = 0; i < arg_types.size(); i++) {
    std::string z = fresh_name("z" + std::to_string(i + 1), used);
    used.insert(z);
    binders.emplace_back(z, arg_types[i]);
    zs.push_back(mk_var(z, arg_types[i]));
  }
  TypeContext inner = ctx;
  for (const auto& [n, ty] : binders) inner[n] = ty;
  FormulaPtr body = mk_eq(apply_term(lhs, zs, inner, sig), apply_term(rhs, zs, inner, sig));
  Formula::Kind q = mode == EqMode::Exact ? Formula::Kind::Forall : Formula::Kind::ForallSt;
  for (int i = static_cast<int>(binders.size()) - 1; i >= 0; i--)
    body = mk_quant(q, binders[i].first, binders[i].second, body);
  return body;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (used.count(base) == 0) return base;
  for (int primes = 1; primes <= 2; primes++) {
    std::string cand = base + std::string(primes, '\'');
    if (used.count(cand) == 0) return cand;
  }
  for (int i = 1;; i++) {
    std::string cand = base + "_" + std::to_string(i);
    if (used.count(cand) == 0) return cand;
  }
}

}  // namespace nszoo
