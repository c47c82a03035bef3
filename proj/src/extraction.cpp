#include "nszoo/extraction.hpp"

#include <algorithm>

#include "nszoo/print.hpp"

namespace nszoo {

namespace {

TermPtr replace_term(const TermPtr& t, const TermPtr& from, const TermPtr& to) {
  if (term_equal(t, from)) return to;
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  bool changed = false;
  for (const auto& a : t->args) {
    TermPtr na = replace_term(a, from, to);
    changed = changed || na.get() != a.get();
    args.push_back(std::move(na));
  }
  if (!changed) return t;
  return std::make_shared<Term>(Term{t->kind, t->name, t->type, std::move(args)});
}

FormulaPtr replace_term_f(const FormulaPtr& f, const TermPtr& from, const TermPtr& to) {
  if (!f) return f;
  TermPtr t1 = f->t1 ? replace_term(f->t1, from, to) : nullptr;
  TermPtr t2 = f->t2 ? replace_term(f->t2, from, to) : nullptr;
  std::vector<TermPtr> args;
  for (const auto& a : f->args) args.push_back(replace_term(a, from, to));
  FormulaPtr f1 = replace_term_f(f->f1, from, to);
  FormulaPtr f2 = replace_term_f(f->f2, from, to);
  return std::make_shared<Formula>(
      Formula{f->kind, f->name, f->var_type, t1, t2, std::move(args), f1, f2});
}

bool rule_is_witness_recipe(RewriteRule r) {
  switch (r) {
    case RewriteRule::HACint:
    case RewriteRule::HGMPst:
    case RewriteRule::HIPforallst:
    case RewriteRule::BoundSearchClosure:
    case RewriteRule::PrenexImpliesSt:
    case RewriteRule::PrenexAndSt:
    case RewriteRule::PrenexOrSt:
    case RewriteRule::SwapStPrefix:
    case RewriteRule::MarkovSt:
      return true;
    default:
      return false;
  }
}

}  // namespace

ExtractionResult extract(const NormalForm& nf, const RuleTrace& trace) {
  FormulaPtr final_formula =
      trace.steps.empty() ? trace.initial : trace.steps.back().after;
  if (!formula_equal(final_formula, nf.to_formula()))
    throw EngineError("extract: trace does not replay to the given normal form");
  replay(trace, Logic::Classical);  // validates every recorded step

  // provenance: each st-existential must come from the input or from a step
  // with a witness recipe
  std::set<std::string> initial_names = all_names(trace.initial);
  for (const auto& [n, ty] : nf.st_existentials) {
    if (initial_names.count(n)) continue;
    bool found = false;
    for (size_t si = 0; si < trace.steps.size() && !found; si++) {
      const RuleStep& s = trace.steps[si];
      if (std::find(s.fresh.begin(), s.fresh.end(), n) != s.fresh.end()) {
        if (!rule_is_witness_recipe(s.rule))
          throw EngineError("extract: existential " + n + " was introduced by step " +
                            std::to_string(si + 1) + " (" + rule_name(s.rule) +
                            ") which carries no witness recipe");
        found = true;
      }
    }
    if (!found)
      throw EngineError("extract: existential " + n + " has no introducing step in the trace");
  }

  ExtractionResult out;
  out.sig = trace.sig;
  out.universals = nf.st_universals;
  out.vacuous = nf.vacuous;

  std::set<std::string> used = all_names(nf.to_formula());
  for (const auto& [n, d] : out.sig.symbols()) used.insert(n);

  std::vector<TermPtr> args;
  std::vector<TypePtr> params;
  for (const auto& [n, ty] : nf.st_universals) {
    args.push_back(mk_var(n, ty));
    params.push_back(ty);
  }

  size_t k = nf.st_existentials.size();
  FormulaPtr body = nf.matrix;
  std::vector<std::pair<std::string, TermPtr>> witnesses;
  std::vector<FormulaPtr> wrappers;
  for (size_t idx = 0; idx < k; idx++) {
    const auto& [yname, ytype] = nf.st_existentials[idx];
    std::string base = k == 1 ? "t" : "t" + std::to_string(idx + 1);
    std::string fn = fresh_name(base, used);
    used.insert(fn);
    out.functionals.push_back(fn);
    out.sig.declare({fn, params, type_seq(ytype)});
    TermPtr candidates = mk_funsym(fn, args);
    witnesses.emplace_back(yname, candidates);
  }
  for (size_t idx = k; idx-- > 0;) {
    const auto& [yname, ytype] = nf.st_existentials[idx];
    body = mk_bounded(Formula::Kind::BoundedExistsIn, yname, ytype, witnesses[idx].second, body);
  }
  for (auto it = nf.st_universals.rbegin(); it != nf.st_universals.rend(); ++it)
    body = mk_quant(Formula::Kind::Forall, it->first, it->second, body);

  out.witnesses = std::move(witnesses);
  out.internal_sentence = body;
  if (!is_internal(out.internal_sentence))
    throw EngineError("extract: internal sentence still mentions st");
  return out;
}

namespace {

// Checks that every occurrence of `name` in f is a <=-search bound or the
// right side of <=.
bool monotone_occurrences(const FormulaPtr& f, const std::string& name) {
  if (!f) return true;
  auto clean = [&](const TermPtr& t) { return !t || free_vars(t).count(name) == 0; };
  auto is_var = [&](const TermPtr& t) {
    return t && t->kind == Term::Kind::Var && t->name == name;
  };
  switch (f->kind) {
    case Formula::Kind::Le:
      return clean(f->t1) && (is_var(f->t2) || clean(f->t2));
    case Formula::Kind::BoundedExistsLe:
      if (f->name == name) return true;  // shadowed below
      return (is_var(f->t1) || clean(f->t1)) && monotone_occurrences(f->f1, name);
    default: {
      if (is_quantifier(f->kind)) {
        if (!clean(f->t1)) return false;
        if (f->name == name) return true;
        return monotone_occurrences(f->f1, name);
      }
      if (!clean(f->t1) || !clean(f->t2)) return false;
      for (const auto& a : f->args)
        if (!clean(a)) return false;
      return monotone_occurrences(f->f1, name) && monotone_occurrences(f->f2, name);
    }
  }
}

FormulaPtr collapse_one(const FormulaPtr& f, const std::string& name) {
  // walks the forall/bounded-exists prefix looking for the binder of `name`
  if (f->kind == Formula::Kind::Forall)
    return mk_quant(f->kind, f->name, f->var_type, collapse_one(f->f1, name));
  if (f->kind == Formula::Kind::BoundedExistsIn) {
    if (f->name == name) {
      if (f->var_type->kind != Type::Kind::Base)
        throw EngineError("collapse_monotone: " + name + " is not of type 0");
      if (!monotone_occurrences(f->f1, name))
        throw EngineError("collapse_monotone: matrix is not syntactically monotone in " + name);
      return substitute(f->f1, name, mk_max0(f->t1));
    }
    return mk_bounded(f->kind, f->name, f->var_type, f->t1, collapse_one(f->f1, name));
  }
  throw EngineError("collapse_monotone: no bounded witness for " + name);
}

}  // namespace

FormulaPtr collapse_monotone(ExtractionResult& result,
                             const std::vector<std::string>& monotone_vars) {
  FormulaPtr cur = result.internal_sentence;
  for (const auto& name : monotone_vars) {
    bool known = false;
    for (const auto& [n, t] : result.witnesses) known = known || n == name;
    if (!known) throw EngineError("collapse_monotone: " + name + " is not an extracted witness");
    cur = collapse_one(cur, name);
  }
  result.collapsed = cur;
  return cur;
}

namespace {

struct FamilyView {
  // families recognised inside the uniform-plus conjunction matrix
  struct BFam {
    std::string z_name;
    TypePtr z_type;
    FormulaPtr core;  // references app(Xi, Z)
    size_t xi_index;
  };
  struct AFam {
    std::vector<std::pair<std::string, TypePtr>> block;
    FormulaPtr core;
  };
  std::vector<BFam> b;
  std::vector<AFam> a;
  std::vector<FormulaPtr> bare;
  std::vector<size_t> order;  // 0..: index into the leaf sequence
};

bool mentions_var(const FormulaPtr& f, const std::string& name) {
  return free_vars(f).count(name) > 0;
}

}  // namespace

NormalForm uniform_plus_exists_nf(const FormulaPtr& plus_statement, Signature& sig) {
  if (plus_statement->kind != Formula::Kind::ExistsSt)
    throw EngineError("uniform-plus shape: missing leading ?st functional");
  std::string phi = plus_statement->name;
  TypePtr phit = plus_statement->var_type;
  auto leaves = conjunction_leaves(plus_statement->f1);

  RuleContext ctx = RuleContext::from(plus_statement, sig, Logic::Classical);
  std::vector<std::pair<std::string, TypePtr>> xis;
  std::vector<FormulaPtr> new_leaves;
  for (const auto& [p, leaf] : leaves) {
    // peel (forall-st)* (bounded-le)* (exists-st)? core
    std::vector<std::pair<std::string, TypePtr>> block;
    std::vector<std::pair<std::string, TermPtr>> bounded;
    FormulaPtr cur = leaf;
    while (cur->kind == Formula::Kind::ForallSt) {
      block.emplace_back(cur->name, cur->var_type);
      cur = cur->f1;
    }
    while (cur->kind == Formula::Kind::BoundedForallLe) {
      bounded.emplace_back(cur->name, cur->t1);
      cur = cur->f1;
    }
    if (cur->kind == Formula::Kind::ExistsSt) {
      auto n = std::make_pair(cur->name, cur->var_type);
      FormulaPtr core = cur->f1;
      if (!is_internal(core))
        throw EngineError("uniform-plus shape: clause core is not internal");
      // code the block into one Z, then apply the extensionality functional
      std::string Z = ctx.fresh("Z");
      TypePtr zt = type_pure(1);
      FormulaPtr m = core;
      std::vector<FormulaPtr> guards;
      for (const auto& [vn, vt] : block) {
        std::string d = ctx.fresh("zc");
        ctx.sig.declare({d, {zt}, vt});
        sig.declare({d, {zt}, vt});
        m = substitute(m, vn, mk_funsym(d, {mk_var(Z, zt)}));
      }
      for (const auto& [vn, bt] : bounded) {
        std::string d = ctx.fresh("zc");
        ctx.sig.declare({d, {zt}, type_base()});
        sig.declare({d, {zt}, type_base()});
        TermPtr dz = mk_funsym(d, {mk_var(Z, zt)});
        guards.push_back(mk_le(dz, bt));
        m = substitute(m, vn, dz);
      }
      std::string xi = ctx.fresh("Xi");
      TypePtr xit = type_arrow(zt, n.second);
      xis.emplace_back(xi, xit);
      m = substitute(m, n.first, mk_app(mk_var(xi, xit), mk_var(Z, zt)));
      FormulaPtr body = guards.empty() ? m : mk_implies(mk_and_all(guards), m);
      new_leaves.push_back(mk_quant(Formula::Kind::Forall, Z, zt, body));
    } else {
      if (!bounded.empty())
        throw EngineError("uniform-plus shape: bounded clause without an inner ?st");
      if (!is_internal(cur))
        throw EngineError("uniform-plus shape: clause core is not internal");
      FormulaPtr body = cur;
      for (auto it = block.rbegin(); it != block.rend(); ++it)
        body = mk_quant(Formula::Kind::Forall, it->first, it->second, body);
      new_leaves.push_back(body);
    }
  }
  NormalForm nf;
  nf.st_existentials.emplace_back(phi, phit);
  for (auto& x : xis) nf.st_existentials.push_back(x);
  nf.matrix = mk_and_all(new_leaves);
  auto fv = free_vars(nf.matrix);
  for (const auto& [n, ty] : nf.st_existentials)
    if (fv.count(n) == 0) nf.vacuous.push_back(n);
  return nf;
}

Herbrandisation herbrandise(const NormalForm& antecedent_nf, const NormalForm& consequent_nf,
                            const Signature& sig) {
  if (!antecedent_nf.st_universals.empty())
    throw EngineError("herbrandise: antecedent normal form must be purely existential");
  if (antecedent_nf.st_existentials.empty())
    throw EngineError("herbrandise: antecedent lacks the uniform functional");
  const auto& [phi, phit] = antecedent_nf.st_existentials[0];
  std::vector<std::pair<std::string, TypePtr>> xis(antecedent_nf.st_existentials.begin() + 1,
                                                   antecedent_nf.st_existentials.end());

  FamilyView fam;
  for (const auto& [p, leaf] : conjunction_leaves(antecedent_nf.matrix)) {
    if (leaf->kind == Formula::Kind::Forall) {
      // one plain universal of type 1 whose core mentions an extensionality
      // functional is an extensionality clause; a block is a zoo clause
      bool is_b = false;
      size_t xi_index = 0;
      if (type_equal(leaf->var_type, type_pure(1))) {
        for (size_t i = 0; i < xis.size(); i++)
          if (mentions_var(leaf->f1, xis[i].first)) {
            is_b = true;
            xi_index = i;
          }
      }
      if (is_b) {
        fam.order.push_back(fam.b.size() * 3 + 0);
        fam.b.push_back({leaf->name, leaf->var_type, leaf->f1, xi_index});
        continue;
      }
      FamilyView::AFam a;
      FormulaPtr cur = leaf;
      while (cur->kind == Formula::Kind::Forall && type_equal(cur->var_type, type_pure(1))) {
        a.block.emplace_back(cur->name, cur->var_type);
        cur = cur->f1;
      }
      a.core = cur;
      fam.order.push_back(fam.a.size() * 3 + 1);
      fam.a.push_back(std::move(a));
      continue;
    }
    fam.order.push_back(fam.bare.size() * 3 + 2);
    fam.bare.push_back(leaf);
  }
  if (!is_internal(antecedent_nf.matrix))
    throw EngineError("herbrandise: antecedent matrix is not internal");

  if (consequent_nf.st_existentials.size() > 1)
    throw EngineError("herbrandise: consequent must have at most one ground existential");
  bool vacuous_o = consequent_nf.st_existentials.empty();
  if (!vacuous_o && consequent_nf.st_existentials[0].second->kind != Type::Kind::Base)
    throw EngineError("herbrandise: consequent existential must have type 0");

  Herbrandisation h;
  h.sig = sig;
  h.vacuous_o = vacuous_o;

  std::set<std::string> used;
  for (const auto& [n, d] : sig.symbols()) used.insert(n);
  for (const auto& v : free_vars(antecedent_nf.matrix)) used.insert(v);
  for (const auto& v : free_vars(consequent_nf.matrix)) used.insert(v);
  h.i_name = fresh_name("i", used);
  used.insert(h.i_name);
  h.o_name = fresh_name("o", used);

  std::vector<TypePtr> params{phit};
  std::vector<TermPtr> args;
  args.push_back(mk_var(phi, phit));
  for (const auto& [n, ty] : xis) {
    params.push_back(ty);
    args.push_back(mk_var(n, ty));
  }
  for (const auto& [n, ty] : consequent_nf.st_universals) {
    params.push_back(ty);
    args.push_back(mk_var(n, ty));
  }

  // component layout of i: extensionality families first, then zoo blocks
  std::vector<TypePtr> comps;
  for (const auto& b : fam.b) comps.push_back(type_seq(b.z_type));
  for (const auto& a : fam.a)
    if (!a.block.empty()) comps.push_back(type_seq(a.block[0].second));
  if (comps.empty())
    throw EngineError("herbrandise: no premise family to bound");
  h.sig.declare({h.i_name, params, product_of(comps)});
  h.sig.declare({h.o_name, params, type_base()});

  TermPtr iterm = mk_funsym(h.i_name, args);
  int ncomp = static_cast<int>(comps.size());
  int comp = 0;
  std::vector<FormulaPtr> premises;
  for (const auto& b : fam.b) {
    TermPtr sel = mk_component(iterm, comp++, ncomp);
    premises.push_back(
        mk_bounded(Formula::Kind::BoundedForallIn, b.z_name, b.z_type, sel, b.core));
  }
  for (const auto& a : fam.a) {
    if (a.block.empty()) continue;
    TermPtr sel = mk_component(iterm, comp++, ncomp);
    FormulaPtr body = a.core;
    for (auto it = a.block.rbegin(); it != a.block.rend(); ++it)
      body = mk_bounded(Formula::Kind::BoundedForallIn, it->first, it->second, sel, body);
    premises.push_back(body);
  }
  for (const auto& bare : fam.bare) premises.push_back(bare);

  FormulaPtr conclusion = consequent_nf.matrix;
  if (!vacuous_o)
    conclusion =
        substitute(conclusion, consequent_nf.st_existentials[0].first, mk_funsym(h.o_name, args));

  FormulaPtr body = mk_implies(mk_and_all(premises), conclusion);
  for (auto it = consequent_nf.st_universals.rbegin(); it != consequent_nf.st_universals.rend();
       ++it)
    body = mk_quant(Formula::Kind::Forall, it->first, it->second, body);
  for (auto it = xis.rbegin(); it != xis.rend(); ++it)
    body = mk_quant(Formula::Kind::Forall, it->first, it->second, body);
  body = mk_quant(Formula::Kind::Forall, phi, phit, body);
  h.body = body;
  if (!is_internal(h.body)) throw EngineError("herbrandise: body is not internal");
  typecheck(h.body, {}, h.sig);
  return h;
}

namespace {

// true when App(Var(fn), Var(arg)) occurs anywhere in f
bool contains_application_of(const FormulaPtr& f, const std::string& fn, const std::string& arg) {
  struct Rec {
    const std::string& fn;
    const std::string& arg;
    bool hit = false;
    void term(const TermPtr& t) {
      if (!t || hit) return;
      if (t->kind == Term::Kind::App && t->args[0]->kind == Term::Kind::Var &&
          t->args[0]->name == fn && t->args[1]->kind == Term::Kind::Var &&
          t->args[1]->name == arg)
        hit = true;
      for (const auto& a : t->args) term(a);
    }
    void formula(const FormulaPtr& f) {
      if (!f || hit) return;
      term(f->t1);
      term(f->t2);
      for (const auto& a : f->args) term(a);
      formula(f->f1);
      formula(f->f2);
    }
  } rec{fn, arg};
  rec.formula(f);
  return rec.hit;
}

int decoder_suffix(const std::string& name) {
  if (name.rfind("zc", 0) != 0) return -1;
  int n = 0;
  for (size_t i = 2; i < name.size(); i++) {
    if (!isdigit(static_cast<unsigned char>(name[i]))) return -1;
    n = n * 10 + (name[i] - '0');
  }
  return name.size() > 2 ? n : -1;
}

void collect_decoders(const FormulaPtr& f, const std::string& zname,
                      std::map<int, std::string>& out) {
  struct Rec {
    const std::string& z;
    std::map<int, std::string>& out;
    void term(const TermPtr& t) {
      if (!t) return;
      int suf = decoder_suffix(t->name);
      if (t->kind == Term::Kind::FunSym && suf >= 0 && t->args.size() == 1 &&
          t->args[0]->kind == Term::Kind::Var && t->args[0]->name == z)
        out[suf] = t->name;
      for (const auto& a : t->args) term(a);
    }
    void formula(const FormulaPtr& f) {
      if (!f) return;
      term(f->t1);
      term(f->t2);
      for (const auto& a : f->args) term(a);
      formula(f->f1);
      formula(f->f2);
    }
  } rec{zname, out};
  rec.formula(f);
}

}  // namespace

FormulaPtr meta_reverse(const Herbrandisation& h) {
  // peel the universal prefix: functional, extensionality functionals, then
  // the consequent block
  FormulaPtr cur = h.body;
  if (cur->kind != Formula::Kind::Forall)
    throw EngineError("meta_reverse: body lacks the universal prefix");
  std::string phi = cur->name;
  TypePtr phit = cur->var_type;
  cur = cur->f1;
  std::vector<std::pair<std::string, TypePtr>> xis;
  std::vector<std::pair<std::string, TypePtr>> fblock;
  std::vector<std::pair<std::string, TypePtr>> prefix;
  while (cur->kind == Formula::Kind::Forall) {
    prefix.emplace_back(cur->name, cur->var_type);
    cur = cur->f1;
  }
  if (cur->kind != Formula::Kind::Implies)
    throw EngineError("meta_reverse: body is not an implication under its prefix");
  FormulaPtr premise_conj = cur->f1;
  FormulaPtr conclusion = cur->f2;

  // extensionality functionals are those prefix variables applied to the
  // bound variable of a bounded premise; the rest form the consequent block
  std::set<std::string> xi_names;
  for (const auto& [p, leaf] : conjunction_leaves(premise_conj)) {
    if (leaf->kind != Formula::Kind::BoundedForallIn) continue;
    for (const auto& [n, ty] : prefix)
      if (ty->kind == Type::Kind::Arrow && contains_application_of(leaf->f1, n, leaf->name))
        xi_names.insert(n);
  }
  for (const auto& [n, ty] : prefix) {
    if (xi_names.count(n))
      xis.emplace_back(n, ty);
    else
      fblock.emplace_back(n, ty);
  }

  // rebuild the antecedent clauses
  std::vector<FormulaPtr> a_clauses, b_clauses;
  std::set<std::string> used = all_names(h.body);
  for (const auto& [p, leaf] : conjunction_leaves(premise_conj)) {
    if (leaf->kind == Formula::Kind::BoundedForallIn) {
      // bound must be a component of i(...)
      bool is_b = false;
      std::string bxi;
      TypePtr bxit;
      for (const auto& [n, ty] : xis)
        if (contains_application_of(leaf->f1, n, leaf->name)) {
          is_b = true;
          bxi = n;
          bxit = ty;
        }
      if (is_b) {
        // invert skolemization and coding
        std::string z = leaf->name;
        TypePtr zt = leaf->var_type;
        FormulaPtr core = leaf->f1;
        std::string N = fresh_name("N", used);
        used.insert(N);
        TypePtr nt = bxit->b;
        core = replace_term_f(core, mk_app(mk_var(bxi, bxit), mk_var(z, zt)), mk_var(N, nt));
        // guards identify the <=-bounded coded variables
        std::vector<std::pair<std::string, TermPtr>> bounded;
        FormulaPtr matrix = core;
        if (core->kind == Formula::Kind::Implies) {
          bool all_guards = !conjunction_leaves(core->f1).empty();
          std::vector<std::pair<std::string, TermPtr>> gvars;
          for (const auto& [gp, g] : conjunction_leaves(core->f1)) {
            if (g->kind == Formula::Kind::Le && g->t1->kind == Term::Kind::FunSym &&
                decoder_suffix(g->t1->name) >= 0) {
              gvars.emplace_back(g->t1->name, g->t2);
            } else {
              all_guards = false;
            }
          }
          if (all_guards && !gvars.empty()) {
            bounded = gvars;
            matrix = core->f2;
          }
        }
        std::map<int, std::string> decoders;
        collect_decoders(core, z, decoders);
        std::vector<std::pair<std::string, TypePtr>> stvars;
        std::vector<std::tuple<std::string, TermPtr>> boundvars;
        for (const auto& [suf, dname] : decoders) {
          const SymbolDecl& d = h.sig.get(dname);
          std::string v = fresh_name("x" + std::to_string(suf), used);
          used.insert(v);
          bool is_bounded = false;
          TermPtr bound_term;
          for (const auto& [gn, gt] : bounded)
            if (gn == dname) {
              is_bounded = true;
              bound_term = gt;
            }
          matrix = replace_term_f(matrix, mk_funsym(dname, {mk_var(z, zt)}),
                                  mk_var(v, d.result));
          if (is_bounded)
            boundvars.emplace_back(v, bound_term);
          else
            stvars.emplace_back(v, d.result);
        }
        FormulaPtr clause = mk_quant(Formula::Kind::ExistsSt, N, nt, matrix);
        for (auto it = boundvars.rbegin(); it != boundvars.rend(); ++it)
          clause = mk_bounded(Formula::Kind::BoundedForallLe, std::get<0>(*it), type_base(),
                              std::get<1>(*it), clause);
        for (auto it = stvars.rbegin(); it != stvars.rend(); ++it)
          clause = mk_quant(Formula::Kind::ForallSt, it->first, it->second, clause);
        b_clauses.push_back(clause);
      } else {
        // zoo premise: strip the membership bounds, re-relativize
        std::vector<std::pair<std::string, TypePtr>> block;
        FormulaPtr core = leaf;
        while (core->kind == Formula::Kind::BoundedForallIn) {
          block.emplace_back(core->name, core->var_type);
          core = core->f1;
        }
        FormulaPtr clause = core;
        for (auto it = block.rbegin(); it != block.rend(); ++it)
          clause = mk_quant(Formula::Kind::ForallSt, it->first, it->second, clause);
        a_clauses.push_back(clause);
      }
      continue;
    }
    a_clauses.push_back(leaf);
  }
  if (a_clauses.empty() || b_clauses.empty())
    throw EngineError("meta_reverse: malformed premise families");
  std::vector<FormulaPtr> ante_leaves = a_clauses;
  ante_leaves.push_back(mk_and_all(b_clauses));
  FormulaPtr antecedent =
      mk_quant(Formula::Kind::ExistsSt, phi, phit, mk_and_all(ante_leaves));

  // rebuild the consequent: un-abstract o, undo the search closure, restore
  // the displayed transfer polarity
  FormulaPtr consequent;
  if (h.vacuous_o) {
    consequent = conclusion;
    for (auto it = fblock.rbegin(); it != fblock.rend(); ++it)
      consequent = mk_quant(Formula::Kind::ForallSt, it->first, it->second, consequent);
  } else {
    if (conclusion->kind != Formula::Kind::Implies)
      throw EngineError("meta_reverse: conclusion is not a search implication");
    FormulaPtr search = conclusion->f2;
    if (search->kind != Formula::Kind::BoundedExistsLe ||
        search->t1->kind != Term::Kind::FunSym || search->t1->name != h.o_name)
      throw EngineError("meta_reverse: malformed component selectors in the conclusion");
    std::string m = fresh_name("m", used);
    used.insert(m);
    FormulaPtr inner = substitute(search->f1, search->name, mk_var(m, type_base()));
    FormulaPtr ex = mk_quant(Formula::Kind::ExistsSt, m, type_base(), inner);
    consequent = mk_implies(conclusion->f1, ex);
    for (auto it = fblock.rbegin(); it != fblock.rend(); ++it)
      consequent = mk_quant(Formula::Kind::ForallSt, it->first, it->second, consequent);
    // invert the complement convention when the shape matches
    if (auto flipped = [&]() -> FormulaPtr {
          if (consequent->kind != Formula::Kind::ForallSt) return nullptr;
          FormulaPtr imp = consequent->f1;
          if (!imp || imp->kind != Formula::Kind::Implies) return nullptr;
          FormulaPtr a = imp->f1, c = imp->f2;
          auto unflip = [](const FormulaPtr& q) -> FormulaPtr {
            if (!is_quantifier(q->kind) || !q->f1 || q->f1->kind != Formula::Kind::Not)
              return nullptr;
            FormulaPtr eq = q->f1->f1;
            if (eq->kind != Formula::Kind::Eq) return nullptr;
            return mk_quant(q->kind, q->name, q->var_type, eq);
          };
          FormulaPtr a2 = unflip(a), c2 = unflip(c);
          if (!a2 || !c2) return nullptr;
          return mk_quant(consequent->kind, consequent->name, consequent->var_type,
                          mk_implies(a2, c2));
        }()) {
      consequent = flipped;
    }
  }
  return mk_implies(antecedent, consequent);
}

}  // namespace nszoo
