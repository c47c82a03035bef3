#include "nszoo/print.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace nszoo {

namespace {

// precedence: -> 1, | 2, & 3, ~ 4, atoms 5; quantifiers 0 (body runs right)

std::optional<int> numeral_value(const TermPtr& t) {
  int n = 0;
  TermPtr cur = t;
  while (cur->kind == Term::Kind::Succ) {
    n++;
    cur = cur->args[0];
  }
  if (cur->kind == Term::Kind::Zero) return n;
  return std::nullopt;
}

struct Printer {
  const Signature& sig;
  TypeContext ctx;

  std::string term(const TermPtr& t) {
    switch (t->kind) {
      case Term::Kind::Var:
        return t->name;
      case Term::Kind::Zero:
        return "0";
      case Term::Kind::Succ: {
        if (auto n = numeral_value(t)) return std::to_string(*n);
        return "S(" + term(t->args[0]) + ")";
      }
      case Term::Kind::App:
        return app(t);
      case Term::Kind::Pair: {
        std::string out = "(";
        TermPtr cur = t;
        while (cur->kind == Term::Kind::Pair) {
          out += term(cur->args[0]) + ",";
          cur = cur->args[1];
        }
        out += term(cur) + ")";
        return out;
      }
      case Term::Kind::Proj1:
        return "proj1(" + term(t->args[0]) + ")";
      case Term::Kind::Proj2:
        return "proj2(" + term(t->args[0]) + ")";
      case Term::Kind::SeqLit: {
        if (t->args.empty()) return "[]:" + show_type(t->type);
        std::string out = "[";
        for (size_t i = 0; i < t->args.size(); i++) {
          if (i) out += ",";
          out += term(t->args[i]);
        }
        return out + "]";
      }
      case Term::Kind::Len:
        return "len(" + term(t->args[0]) + ")";
      case Term::Kind::Idx:
        return "idx(" + term(t->args[0]) + "," + term(t->args[1]) + ")";
      case Term::Kind::Max0:
        return "max0(" + term(t->args[0]) + ")";
      case Term::Kind::FunSym: {
        if (t->args.empty()) return t->name;
        std::string out = t->name + "(";
        for (size_t i = 0; i < t->args.size(); i++) {
          if (i) out += ",";
          out += term(t->args[i]);
        }
        return out + ")";
      }
    }
    return "?";
  }

  // Prints an application spine as app(head, a1, ..., an), re-flattening
  // tuple arguments that match a product domain (the inverse of apply_term).
  std::string app(const TermPtr& t) {
    std::vector<TermPtr> spine;
    TermPtr head = t;
    while (head->kind == Term::Kind::App) {
      spine.push_back(head->args[1]);
      head = head->args[0];
    }
    std::reverse(spine.begin(), spine.end());
    std::string out = "app(" + term(head);
    TermPtr cur = head;
    for (const auto& arg : spine) {
      TypePtr ht = typecheck(cur, ctx, sig);
      size_t n = ht->kind == Type::Kind::Arrow ? product_components(ht->a).size() : 1;
      bool flattened = false;
      if (n > 1 && arg->kind == Term::Kind::Pair) {
        std::vector<TermPtr> leaves;
        TermPtr e = arg;
        while (leaves.size() < n - 1 && e->kind == Term::Kind::Pair) {
          leaves.push_back(e->args[0]);
          e = e->args[1];
        }
        leaves.push_back(e);
        if (leaves.size() == n) {
          for (const auto& l : leaves) out += "," + term(l);
          flattened = true;
        }
      }
      if (!flattened) out += "," + term(arg);
      cur = mk_app(cur, arg);
    }
    return out + ")";
  }

  std::string formula(const FormulaPtr& f, int min_prec) {
    auto wrap = [&](int prec, const std::string& s) {
      return prec < min_prec ? "(" + s + ")" : s;
    };
    switch (f->kind) {
      case Formula::Kind::Eq:
        return wrap(5, term(f->t1) + " = " + term(f->t2));
      case Formula::Kind::Le:
        return wrap(5, term(f->t1) + " <= " + term(f->t2));
      case Formula::Kind::Pred: {
        std::string out = f->name + "(";
        for (size_t i = 0; i < f->args.size(); i++) {
          if (i) out += ",";
          out += term(f->args[i]);
        }
        return wrap(5, out + ")");
      }
      case Formula::Kind::St:
        return wrap(5, "st(" + term(f->t1) + ")");
      case Formula::Kind::Not:
        if (f->f1->kind == Formula::Kind::Eq)
          return wrap(5, term(f->f1->t1) + " != " + term(f->f1->t2));
        return wrap(4, "~" + formula(f->f1, 5));
      case Formula::Kind::And:
        return wrap(3, formula(f->f1, 3) + " & " + formula(f->f2, 4));
      case Formula::Kind::Or:
        return wrap(2, formula(f->f1, 2) + " | " + formula(f->f2, 3));
      case Formula::Kind::Implies:
        return wrap(1, formula(f->f1, 2) + " -> " + formula(f->f2, 1));
      case Formula::Kind::Forall:
      case Formula::Kind::Exists:
      case Formula::Kind::ForallSt:
      case Formula::Kind::ExistsSt: {
        std::string head;
        switch (f->kind) {
          case Formula::Kind::Forall: head = "!"; break;
          case Formula::Kind::Exists: head = "?"; break;
          case Formula::Kind::ForallSt: head = "!st "; break;
          default: head = "?st "; break;
        }
        std::string s = head + f->name + ":" + show_type(f->var_type) + ". ";
        auto saved = bind(f->name, f->var_type);
        s += formula(f->f1, 0);
        unbind(f->name, saved);
        return wrap(1, s);
      }
      case Formula::Kind::BoundedForallLe:
      case Formula::Kind::BoundedExistsLe:
      case Formula::Kind::BoundedForallIn:
      case Formula::Kind::BoundedExistsIn: {
        bool uni = f->kind == Formula::Kind::BoundedForallLe ||
                   f->kind == Formula::Kind::BoundedForallIn;
        bool le = f->kind == Formula::Kind::BoundedForallLe ||
                  f->kind == Formula::Kind::BoundedExistsLe;
        std::string s = std::string(uni ? "!" : "?") + f->name + (le ? " <= " : " in ") +
                        term(f->t1) + ". ";
        auto saved = bind(f->name, f->var_type);
        s += formula(f->f1, 0);
        unbind(f->name, saved);
        return wrap(1, s);
      }
    }
    return "?";
  }

  std::optional<TypePtr> bind(const std::string& name, const TypePtr& ty) {
    std::optional<TypePtr> old;
    auto it = ctx.find(name);
    if (it != ctx.end()) old = it->second;
    ctx[name] = ty;
    return old;
  }
  void unbind(const std::string& name, const std::optional<TypePtr>& old) {
    if (old)
      ctx[name] = *old;
    else
      ctx.erase(name);
  }
};

}  // namespace

std::string print_term(const TermPtr& t, const TypeContext& ctx, const Signature& sig) {
  Printer p{sig, ctx};
  return p.term(t);
}

std::string print_formula(const FormulaPtr& f, const TypeContext& ctx, const Signature& sig) {
  Printer p{sig, ctx};
  return p.formula(f, 0);
}

std::string print_formula(const FormulaPtr& f, const Signature& sig) {
  TypeContext ctx;
  for (const auto& [name, vd] : sig.vars()) ctx[name] = vd.type;
  return print_formula(f, ctx, sig);
}

std::string print_signature(const Signature& sig) {
  std::ostringstream out;
  for (const auto& [name, d] : sig.symbols()) {
    out << "sym " << name << " : ";
    for (size_t i = 0; i < d.params.size(); i++) {
      if (i) out << " x ";
      out << show_type(d.params[i]);
    }
    if (!d.params.empty()) out << " -> ";
    out << show_type(d.result) << "\n";
  }
  for (const auto& [name, vd] : sig.vars())
    out << "var " << name << " : " << show_type(vd.type) << "\n";
  return out.str();
}

}  // namespace nszoo
