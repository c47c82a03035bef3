#include "nszoo/normalform.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace nszoo {

std::string logic_name(Logic l) {
  return l == Logic::Classical ? "classical" : "intuitionistic";
}

const std::vector<RewriteRule>& all_rules() {
  static const std::vector<RewriteRule> rules = {
      RewriteRule::PrenexAndSt,       RewriteRule::PrenexOrSt,
      RewriteRule::PrenexImpliesSt,   RewriteRule::DoubleNegSt,
      RewriteRule::Idealisation,      RewriteRule::HACint,
      RewriteRule::HGMPst,            RewriteRule::HIPforallst,
      RewriteRule::ExpandApprox,      RewriteRule::ExpandExactEq,
      RewriteRule::ExpandStdExt,      RewriteRule::DropStAntecedent,
      RewriteRule::MarkovSt,          RewriteRule::TransferComplement,
      RewriteRule::TupleCode,         RewriteRule::SkolemizeAntecedent,
      RewriteRule::BoundSearchClosure, RewriteRule::SwapStPrefix,
  };
  return rules;
}

std::string rule_name(RewriteRule r) {
  switch (r) {
    case RewriteRule::PrenexAndSt: return "PrenexAndSt";
    case RewriteRule::PrenexOrSt: return "PrenexOrSt";
    case RewriteRule::PrenexImpliesSt: return "PrenexImpliesSt";
    case RewriteRule::DoubleNegSt: return "DoubleNegSt";
    case RewriteRule::Idealisation: return "Idealisation";
    case RewriteRule::HACint: return "HACint";
    case RewriteRule::HGMPst: return "HGMPst";
    case RewriteRule::HIPforallst: return "HIPforallst";
    case RewriteRule::ExpandApprox: return "ExpandApprox";
    case RewriteRule::ExpandExactEq: return "ExpandExactEq";
    case RewriteRule::ExpandStdExt: return "ExpandStdExt";
    case RewriteRule::DropStAntecedent: return "DropStAntecedent";
    case RewriteRule::MarkovSt: return "MarkovSt";
    case RewriteRule::TransferComplement: return "TransferComplement";
    case RewriteRule::TupleCode: return "TupleCode";
    case RewriteRule::SkolemizeAntecedent: return "SkolemizeAntecedent";
    case RewriteRule::BoundSearchClosure: return "BoundSearchClosure";
    case RewriteRule::SwapStPrefix: return "SwapStPrefix";
  }
  return "?";
}

std::optional<RewriteRule> rule_by_name(const std::string& name) {
  for (RewriteRule r : all_rules())
    if (rule_name(r) == name) return r;
  return std::nullopt;
}

bool rule_intuitionistic(RewriteRule r) {
  switch (r) {
    case RewriteRule::PrenexOrSt:
    case RewriteRule::DoubleNegSt:
    case RewriteRule::MarkovSt:
    case RewriteRule::Idealisation:
      return false;
    default:
      return true;  // PrenexImpliesSt restricts its variants separately
  }
}

RuleDirection rule_direction(RewriteRule r) {
  switch (r) {
    case RewriteRule::PrenexAndSt:
    case RewriteRule::PrenexOrSt:
    case RewriteRule::PrenexImpliesSt:
    case RewriteRule::DoubleNegSt:
    case RewriteRule::MarkovSt:
    case RewriteRule::SwapStPrefix:
      return r == RewriteRule::SwapStPrefix ? RuleDirection::AxiomForward
                                            : RuleDirection::Equivalence;
    case RewriteRule::Idealisation:
    case RewriteRule::HACint:
    case RewriteRule::HGMPst:
    case RewriteRule::HIPforallst:
    case RewriteRule::DropStAntecedent:
    case RewriteRule::SkolemizeAntecedent:
    case RewriteRule::BoundSearchClosure:
      return RuleDirection::AxiomForward;
    default:
      return RuleDirection::Convention;
  }
}

namespace {
void conj_leaves(const FormulaPtr& f, const Path& prefix,
                 std::vector<std::pair<Path, FormulaPtr>>& out);
}  // namespace

std::vector<std::pair<Path, FormulaPtr>> conjunction_leaves(const FormulaPtr& f) {
  std::vector<std::pair<Path, FormulaPtr>> out;
  conj_leaves(f, {}, out);
  return out;
}

FormulaPtr formula_at(const FormulaPtr& f, const Path& p) {
  FormulaPtr cur = f;
  for (int step : p) {
    if (!cur) throw EngineError("path leaves the formula");
    cur = step == 0 ? cur->f1 : cur->f2;
  }
  if (!cur) throw EngineError("path leaves the formula");
  return cur;
}

FormulaPtr replace_at(const FormulaPtr& f, const Path& p, const FormulaPtr& g) {
  if (p.empty()) return g;
  Path rest(p.begin() + 1, p.end());
  FormulaPtr f1 = f->f1, f2 = f->f2;
  if (p[0] == 0)
    f1 = replace_at(f->f1, rest, g);
  else
    f2 = replace_at(f->f2, rest, g);
  return std::make_shared<Formula>(
      Formula{f->kind, f->name, f->var_type, f->t1, f->t2, f->args, f1, f2});
}

bool positive_at(const FormulaPtr& f, const Path& p) {
  bool pos = true;
  FormulaPtr cur = f;
  for (int step : p) {
    if (cur->kind == Formula::Kind::Not || (cur->kind == Formula::Kind::Implies && step == 0))
      pos = !pos;
    cur = step == 0 ? cur->f1 : cur->f2;
  }
  return pos;
}

FormulaPtr NormalForm::to_formula() const {
  FormulaPtr f = matrix;
  for (auto it = st_existentials.rbegin(); it != st_existentials.rend(); ++it)
    f = mk_quant(Formula::Kind::ExistsSt, it->first, it->second, f);
  for (auto it = st_universals.rbegin(); it != st_universals.rend(); ++it)
    f = mk_quant(Formula::Kind::ForallSt, it->first, it->second, f);
  return f;
}

std::optional<NormalForm> is_normal_form(const FormulaPtr& f) {
  NormalForm nf;
  FormulaPtr cur = f;
  std::set<std::string> seen;
  while (cur->kind == Formula::Kind::ForallSt) {
    if (!seen.insert(cur->name).second) return std::nullopt;
    nf.st_universals.emplace_back(cur->name, cur->var_type);
    cur = cur->f1;
  }
  while (cur->kind == Formula::Kind::ExistsSt) {
    if (!seen.insert(cur->name).second) return std::nullopt;
    nf.st_existentials.emplace_back(cur->name, cur->var_type);
    cur = cur->f1;
  }
  if (!is_internal(cur)) return std::nullopt;
  nf.matrix = cur;
  auto fv = free_vars(cur);
  for (const auto& [n, ty] : nf.st_universals)
    if (fv.count(n) == 0) nf.vacuous.push_back(n);
  for (const auto& [n, ty] : nf.st_existentials)
    if (fv.count(n) == 0) nf.vacuous.push_back(n);
  return nf;
}

RuleContext RuleContext::from(const FormulaPtr& f, const Signature& sig, Logic logic) {
  RuleContext ctx;
  ctx.sig = sig;
  ctx.used = all_names(f);
  for (const auto& [n, _] : sig.symbols()) ctx.used.insert(n);
  for (const auto& [n, _] : sig.vars()) ctx.used.insert(n);
  ctx.logic = logic;
  return ctx;
}

std::string RuleContext::fresh(const std::string& base) {
  std::string out;
  if (base == "Xi") {
    do {
      out = "Xi" + std::to_string(++skolem_counter);
    } while (used.count(out));
  } else if (base == "zc") {
    do {
      out = "zc" + std::to_string(++decoder_counter);
    } while (used.count(out));
  } else {
    out = fresh_name(base, used);
  }
  used.insert(out);
  return out;
}

namespace {

bool is_st_quant(Formula::Kind k) {
  return k == Formula::Kind::ForallSt || k == Formula::Kind::ExistsSt;
}

// The exact relativized-transfer pattern:
//   !st f:1. (?n:0. app(f,n) = 0) -> ?st m:0. app(f,m) = 0
// (or the same with both atoms negated).  Returns the polarity: true when the
// atoms are equalities (coalescible by TransferComplement).
struct TransferShape {
  bool eq_polarity;
};

bool eq_atom_of(const FormulaPtr& g, const std::string& fvar, const std::string& nvar,
                bool* negated) {
  FormulaPtr a = g;
  *negated = false;
  if (a->kind == Formula::Kind::Not) {
    *negated = true;
    a = a->f1;
  }
  if (a->kind != Formula::Kind::Eq) return false;
  const TermPtr& l = a->t1;
  const TermPtr& r = a->t2;
  if (r->kind != Term::Kind::Zero) return false;
  if (l->kind != Term::Kind::App) return false;
  return l->args[0]->kind == Term::Kind::Var && l->args[0]->name == fvar &&
         l->args[1]->kind == Term::Kind::Var && l->args[1]->name == nvar;
}

std::optional<TransferShape> match_transfer(const FormulaPtr& f) {
  if (f->kind != Formula::Kind::ForallSt) return std::nullopt;
  if (!type_equal(f->var_type, type_pure(1))) return std::nullopt;
  FormulaPtr imp = f->f1;
  if (imp->kind != Formula::Kind::Implies) return std::nullopt;
  FormulaPtr a = imp->f1, c = imp->f2;
  if (a->kind != Formula::Kind::Exists || a->var_type->kind != Type::Kind::Base)
    return std::nullopt;
  if (c->kind != Formula::Kind::ExistsSt || c->var_type->kind != Type::Kind::Base)
    return std::nullopt;
  bool neg_a = false, neg_c = false;
  if (!eq_atom_of(a->f1, f->name, a->name, &neg_a)) return std::nullopt;
  if (!eq_atom_of(c->f1, f->name, c->name, &neg_c)) return std::nullopt;
  if (neg_a != neg_c) return std::nullopt;
  return TransferShape{!neg_a};
}

void conj_leaves(const FormulaPtr& f, const Path& prefix,
                 std::vector<std::pair<Path, FormulaPtr>>& out) {
  if (f->kind == Formula::Kind::And) {
    Path l = prefix, r = prefix;
    l.push_back(0);
    r.push_back(1);
    conj_leaves(f->f1, l, out);
    conj_leaves(f->f2, r, out);
    return;
  }
  out.emplace_back(prefix, f);
}

struct ClauseShape {
  std::vector<std::pair<std::string, TypePtr>> st_block;
  std::vector<std::tuple<std::string, TermPtr>> bounded;  // <=-bounded vars
  std::optional<std::pair<std::string, TypePtr>> inner_exists;  // exists-st
  FormulaPtr core;
};

// Peels (forall-st)* (bounded-le)* (exists-st)? core.
ClauseShape peel_clause(const FormulaPtr& f) {
  ClauseShape s;
  FormulaPtr cur = f;
  while (cur->kind == Formula::Kind::ForallSt) {
    s.st_block.emplace_back(cur->name, cur->var_type);
    cur = cur->f1;
  }
  while (cur->kind == Formula::Kind::BoundedForallLe) {
    s.bounded.emplace_back(cur->name, cur->t1);
    cur = cur->f1;
  }
  if (cur->kind == Formula::Kind::ExistsSt) {
    s.inner_exists = std::make_pair(cur->name, cur->var_type);
    cur = cur->f1;
  }
  s.core = cur;
  return s;
}

FormulaPtr quantify_block(Formula::Kind k,
                          const std::vector<std::pair<std::string, TypePtr>>& block,
                          FormulaPtr body) {
  for (auto it = block.rbegin(); it != block.rend(); ++it)
    body = mk_quant(k, it->first, it->second, body);
  return body;
}

// Renames the bound variable of quantifier node q when `avoid` contains it.
FormulaPtr avoid_capture(const FormulaPtr& q, const std::set<std::string>& avoid,
                         RuleContext& ctx, std::vector<std::string>* fresh_out,
                         std::string* name_out) {
  std::string name = q->name;
  FormulaPtr body = q->f1;
  if (avoid.count(name)) {
    name = ctx.fresh(name);
    if (fresh_out) fresh_out->push_back(name);
    body = substitute(q->f1, q->name, mk_var(name, q->var_type));
  }
  *name_out = name;
  return body;
}

FormulaPtr rw_prenex_and_or(const FormulaPtr& g, bool is_and, RuleContext& ctx,
                            std::vector<std::string>* fresh) {
  Formula::Kind want = is_and ? Formula::Kind::And : Formula::Kind::Or;
  if (g->kind != want) throw EngineError("prenex: node is not the right connective");
  auto build = [&](const FormulaPtr& q, const FormulaPtr& other, bool q_left) {
    std::string name;
    FormulaPtr body = avoid_capture(q, free_vars(other), ctx, fresh, &name);
    FormulaPtr inner = q_left ? (is_and ? mk_and(body, other) : mk_or(body, other))
                              : (is_and ? mk_and(other, body) : mk_or(other, body));
    return mk_quant(q->kind, name, q->var_type, inner);
  };
  if (is_st_quant(g->f1->kind)) return build(g->f1, g->f2, true);
  if (is_st_quant(g->f2->kind)) return build(g->f2, g->f1, false);
  throw EngineError("prenex: no st-quantified operand");
}

FormulaPtr rw_prenex_implies(const FormulaPtr& g, RuleContext& ctx,
                             std::vector<std::string>* fresh) {
  if (g->kind != Formula::Kind::Implies) throw EngineError("prenex: node is not an implication");
  FormulaPtr a = g->f1, c = g->f2;
  // (a) antecedent exists-st  -> forall-st outside (both logics)
  if (a->kind == Formula::Kind::ExistsSt) {
    std::string name;
    FormulaPtr body = avoid_capture(a, free_vars(c), ctx, fresh, &name);
    return mk_quant(Formula::Kind::ForallSt, name, a->var_type, mk_implies(body, c));
  }
  // (b) consequent forall-st  -> forall-st outside (both logics)
  if (c->kind == Formula::Kind::ForallSt) {
    std::string name;
    FormulaPtr body = avoid_capture(c, free_vars(a), ctx, fresh, &name);
    return mk_quant(Formula::Kind::ForallSt, name, c->var_type, mk_implies(a, body));
  }
  if (ctx.logic == Logic::Intuitionistic)
    throw EngineError("prenex over an implication: remaining variants are classical");
  // (c) consequent exists-st  -> exists-st outside (classical)
  if (c->kind == Formula::Kind::ExistsSt) {
    std::string name;
    FormulaPtr body = avoid_capture(c, free_vars(a), ctx, fresh, &name);
    return mk_quant(Formula::Kind::ExistsSt, name, c->var_type, mk_implies(a, body));
  }
  // (d) antecedent forall-st  -> exists-st outside (classical)
  if (a->kind == Formula::Kind::ForallSt) {
    std::string name;
    FormulaPtr body = avoid_capture(a, free_vars(c), ctx, fresh, &name);
    return mk_quant(Formula::Kind::ExistsSt, name, a->var_type, mk_implies(body, c));
  }
  throw EngineError("prenex over an implication: no st-quantified side");
}

FormulaPtr rw_idealisation(const FormulaPtr& g) {
  // !st x:sigma^*. ?y:tau. !z in x. phi  ==>  ?y:tau. !st x:sigma. phi[z:=x]
  if (g->kind != Formula::Kind::ForallSt || g->var_type->kind != Type::Kind::Seq)
    throw EngineError("idealisation: expected a standard universal over a sequence type");
  FormulaPtr ex = g->f1;
  if (ex->kind != Formula::Kind::Exists) throw EngineError("idealisation: expected ?y under the prefix");
  FormulaPtr bf = ex->f1;
  if (bf->kind != Formula::Kind::BoundedForallIn || bf->t1->kind != Term::Kind::Var ||
      bf->t1->name != g->name)
    throw EngineError("idealisation: expected !z in x under ?y");
  FormulaPtr phi = bf->f1;
  if (!is_internal(phi)) throw EngineError("idealisation: matrix must be internal");
  if (free_vars(phi).count(g->name))
    throw EngineError("idealisation: sequence variable occurs in the matrix");
  TypePtr elem = g->var_type->a;
  FormulaPtr body = substitute(phi, bf->name, mk_var(g->name, elem));
  return mk_quant(Formula::Kind::Exists, ex->name, ex->var_type,
                  mk_quant(Formula::Kind::ForallSt, g->name, elem, body));
}

FormulaPtr rw_hacint(const FormulaPtr& g, RuleContext& ctx, std::vector<std::string>* fresh) {
  if (g->kind != Formula::Kind::ForallSt || g->f1->kind != Formula::Kind::ExistsSt)
    throw EngineError("HACint: expected !st x. ?st y. phi");
  FormulaPtr ex = g->f1;
  if (!is_internal(ex->f1)) throw EngineError("HACint: matrix must be internal");
  std::string F = ctx.fresh("F");
  if (fresh) fresh->push_back(F);
  TypePtr ftype = type_arrow(g->var_type, type_seq(ex->var_type));
  TermPtr fx = mk_app(mk_var(F, ftype), mk_var(g->name, g->var_type));
  FormulaPtr inner =
      mk_bounded(Formula::Kind::BoundedExistsIn, ex->name, ex->var_type, fx, ex->f1);
  return mk_quant(Formula::Kind::ExistsSt, F, ftype,
                  mk_quant(Formula::Kind::ForallSt, g->name, g->var_type, inner));
}

// Shared shape for HGMP/HIP antecedents: a conjunction whose leaves are
// st-universal blocks over internal cores (blocks may be empty).
struct AntecedentBlocks {
  struct Leaf {
    std::vector<std::pair<std::string, TypePtr>> block;
    FormulaPtr core;
  };
  std::vector<Leaf> leaves;
};

std::optional<AntecedentBlocks> match_antecedent_blocks(const FormulaPtr& a) {
  AntecedentBlocks out;
  std::vector<std::pair<Path, FormulaPtr>> leaves;
  conj_leaves(a, {}, leaves);
  for (auto& [p, leaf] : leaves) {
    AntecedentBlocks::Leaf l;
    FormulaPtr cur = leaf;
    while (cur->kind == Formula::Kind::ForallSt) {
      l.block.emplace_back(cur->name, cur->var_type);
      cur = cur->f1;
    }
    if (!is_internal(cur)) return std::nullopt;
    l.core = cur;
    out.leaves.push_back(std::move(l));
  }
  return out;
}

FormulaPtr rw_hgmp(const FormulaPtr& g, RuleContext& ctx, std::vector<std::string>* fresh) {
  if (g->kind != Formula::Kind::Implies) throw EngineError("HGMPst: expected an implication");
  if (!is_internal(g->f2)) throw EngineError("HGMPst: consequent must be internal");
  auto blocks = match_antecedent_blocks(g->f1);
  if (!blocks) throw EngineError("HGMPst: antecedent is not a standard-universal conjunction");
  int blocked = 0;
  for (const auto& l : blocks->leaves)
    if (!l.block.empty()) blocked++;
  if (blocked == 0) throw EngineError("HGMPst: no standard universal to herbrandize");
  for (const auto& l : blocks->leaves) {
    if (l.block.empty()) continue;
    for (const auto& [n, ty] : l.block)
      if (!type_equal(ty, l.block[0].second))
        throw EngineError("HGMPst: mixed variable types in one block");
  }
  std::vector<std::pair<std::string, TypePtr>> seqs;  // name, seq type
  std::vector<FormulaPtr> new_leaves;
  int bi = 0;
  for (const auto& l : blocks->leaves) {
    if (l.block.empty()) {
      new_leaves.push_back(l.core);
      continue;
    }
    std::string base;
    if (blocked == 1 && l.block.size() == 1)
      base = l.block[0].first + "'";
    else
      base = bi == 0 ? "W" : "V";
    std::string w = ctx.fresh(base);
    if (fresh) fresh->push_back(w);
    TypePtr wt = type_seq(l.block[0].second);
    seqs.emplace_back(w, wt);
    FormulaPtr leaf = l.core;
    for (auto it = l.block.rbegin(); it != l.block.rend(); ++it)
      leaf = mk_bounded(Formula::Kind::BoundedForallIn, it->first, it->second,
                        mk_var(w, wt), leaf);
    new_leaves.push_back(leaf);
    bi++;
  }
  FormulaPtr body = mk_implies(mk_and_all(new_leaves), g->f2);
  for (auto it = seqs.rbegin(); it != seqs.rend(); ++it)
    body = mk_quant(Formula::Kind::ExistsSt, it->first, it->second, body);
  return body;
}

FormulaPtr rw_hip(const FormulaPtr& g, RuleContext& ctx, std::vector<std::string>* fresh) {
  if (g->kind != Formula::Kind::Implies || g->f2->kind != Formula::Kind::ExistsSt)
    throw EngineError("HIPforallst: expected phi -> ?st y. psi");
  auto blocks = match_antecedent_blocks(g->f1);
  if (!blocks) throw EngineError("HIPforallst: antecedent is not a standard-universal conjunction");
  FormulaPtr ex = g->f2;
  std::string y2 = ctx.fresh(ex->name + "'");
  if (fresh) fresh->push_back(y2);
  TypePtr st = type_seq(ex->var_type);
  FormulaPtr inner = mk_bounded(Formula::Kind::BoundedExistsIn, ex->name, ex->var_type,
                                mk_var(y2, st), ex->f1);
  return mk_quant(Formula::Kind::ExistsSt, y2, st, mk_implies(g->f1, inner));
}

FormulaPtr rw_markov(const FormulaPtr& g) {
  if (g->kind != Formula::Kind::Not || g->f1->kind != Formula::Kind::ForallSt)
    throw EngineError("MarkovSt: expected ~ !st n. phi");
  FormulaPtr q = g->f1;
  if (q->var_type->kind != Type::Kind::Base)
    throw EngineError("MarkovSt: the standard universal must range over type 0");
  if (!is_internal(q->f1)) throw EngineError("MarkovSt: matrix must be internal");
  return mk_quant(Formula::Kind::ExistsSt, q->name, q->var_type, mk_not(q->f1));
}

FormulaPtr rw_transfer_complement(const FormulaPtr& g) {
  auto shape = match_transfer(g);
  if (!shape || !shape->eq_polarity)
    throw EngineError("TransferComplement: node is not the transfer principle in = 0 form");
  FormulaPtr imp = g->f1;
  FormulaPtr a = imp->f1, c = imp->f2;
  FormulaPtr a2 = mk_quant(a->kind, a->name, a->var_type, mk_not(a->f1));
  FormulaPtr c2 = mk_quant(c->kind, c->name, c->var_type, mk_not(c->f1));
  return mk_quant(g->kind, g->name, g->var_type, mk_implies(a2, c2));
}

FormulaPtr rw_tuple_code(const FormulaPtr& g, RuleContext& ctx, std::vector<std::string>* fresh) {
  ClauseShape s = peel_clause(g);
  if (!s.inner_exists || s.inner_exists->second->kind != Type::Kind::Base)
    throw EngineError("TupleCode: clause lacks an inner ?st of type 0");
  if (!is_internal(s.core)) throw EngineError("TupleCode: core must be internal");
  size_t coded = s.st_block.size() + s.bounded.size();
  if (s.st_block.empty() || coded < 2)
    throw EngineError("TupleCode: nothing to code");
  std::string Z = ctx.fresh("Z");
  if (fresh) fresh->push_back(Z);
  TypePtr zt = type_pure(1);
  FormulaPtr m = s.core;
  std::vector<FormulaPtr> guards;
  for (const auto& [n, ty] : s.st_block) {
    std::string d = ctx.fresh("zc");
    if (fresh) fresh->push_back(d);
    ctx.sig.declare({d, {zt}, ty});
    m = substitute(m, n, mk_funsym(d, {mk_var(Z, zt)}));
  }
  for (const auto& [n, bound] : s.bounded) {
    std::string d = ctx.fresh("zc");
    if (fresh) fresh->push_back(d);
    ctx.sig.declare({d, {zt}, type_base()});
    TermPtr dz = mk_funsym(d, {mk_var(Z, zt)});
    guards.push_back(mk_le(dz, bound));
    m = substitute(m, n, dz);
  }
  FormulaPtr body = guards.empty() ? m : mk_implies(mk_and_all(guards), m);
  return mk_quant(Formula::Kind::ForallSt, Z, zt,
                  mk_quant(Formula::Kind::ExistsSt, s.inner_exists->first,
                           s.inner_exists->second, body));
}

FormulaPtr rw_skolemize_antecedent(const FormulaPtr& g, RuleContext& ctx,
                                   std::vector<std::string>* fresh) {
  if (g->kind != Formula::Kind::Implies)
    throw EngineError("SkolemizeAntecedent: expected an implication");
  std::vector<std::pair<Path, FormulaPtr>> leaves;
  conj_leaves(g->f1, {}, leaves);
  for (const auto& [p, leaf] : leaves) {
    ClauseShape s = peel_clause(leaf);
    if (!s.inner_exists || s.st_block.empty() || !s.bounded.empty()) continue;
    if (!is_internal(s.core)) continue;
    std::vector<TypePtr> dom;
    for (const auto& [n, ty] : s.st_block) dom.push_back(ty);
    TypePtr xt = type_arrow(product_of(dom), s.inner_exists->second);
    std::string xi = ctx.fresh("Xi");
    if (fresh) fresh->push_back(xi);
    std::vector<TermPtr> args;
    for (const auto& [n, ty] : s.st_block) args.push_back(mk_var(n, ty));
    TypeContext tc;
    tc[xi] = xt;
    for (const auto& [n, ty] : s.st_block) tc[n] = ty;
    TermPtr applied = apply_term(mk_var(xi, xt), args, tc, ctx.sig);
    FormulaPtr core = substitute(s.core, s.inner_exists->first, applied);
    FormulaPtr clause = quantify_block(Formula::Kind::ForallSt, s.st_block, core);
    FormulaPtr ante = replace_at(g->f1, p, clause);
    return mk_quant(Formula::Kind::ForallSt, xi, xt, mk_implies(ante, g->f2));
  }
  throw EngineError("SkolemizeAntecedent: no forall-st/exists-st clause in the antecedent");
}

FormulaPtr rw_bound_search_closure(const FormulaPtr& g, RuleContext& ctx,
                                   std::vector<std::string>* fresh) {
  if (g->kind != Formula::Kind::ExistsSt)
    throw EngineError("BoundSearchClosure: expected ?st node");
  FormulaPtr body = g->f1;
  if (body->kind != Formula::Kind::Implies)
    throw EngineError("BoundSearchClosure: body must be an implication");
  FormulaPtr chi = body->f1, psi = body->f2;
  // membership form: ?st s:0^*. chi -> ?y in s. psi
  if (g->var_type->kind == Type::Kind::Seq && g->var_type->a->kind == Type::Kind::Base &&
      psi->kind == Formula::Kind::BoundedExistsIn && psi->t1->kind == Term::Kind::Var &&
      psi->t1->name == g->name) {
    if (free_vars(chi).count(g->name) || free_vars(psi->f1).count(g->name))
      throw EngineError("BoundSearchClosure: sequence variable occurs outside its bound");
    std::string m = ctx.fresh("m");
    if (fresh) fresh->push_back(m);
    std::string i = ctx.fresh("i");
    if (fresh) fresh->push_back(i);
    FormulaPtr inner = substitute(psi->f1, psi->name, mk_var(i, type_base()));
    FormulaPtr search =
        mk_bounded(Formula::Kind::BoundedExistsLe, i, type_base(), mk_var(m, type_base()), inner);
    return mk_quant(Formula::Kind::ExistsSt, m, type_base(), mk_implies(chi, search));
  }
  // plain form: ?st m:0. chi -> psi(m)
  if (g->var_type->kind == Type::Kind::Base) {
    if (psi->kind == Formula::Kind::BoundedExistsLe && psi->t1->kind == Term::Kind::Var &&
        psi->t1->name == g->name)
      throw EngineError("BoundSearchClosure: already in search form");
    if (free_vars(chi).count(g->name))
      throw EngineError("BoundSearchClosure: witness variable occurs in the premise");
    if (!is_internal(psi)) throw EngineError("BoundSearchClosure: conclusion must be internal");
    std::string i = ctx.fresh("i");
    if (fresh) fresh->push_back(i);
    FormulaPtr inner = substitute(psi, g->name, mk_var(i, type_base()));
    FormulaPtr search = mk_bounded(Formula::Kind::BoundedExistsLe, i, type_base(),
                                   mk_var(g->name, type_base()), inner);
    return mk_quant(Formula::Kind::ExistsSt, g->name, type_base(), mk_implies(chi, search));
  }
  throw EngineError("BoundSearchClosure: unsupported witness type");
}

FormulaPtr rw_swap_st_prefix(const FormulaPtr& g, RuleContext& ctx,
                             std::vector<std::string>* fresh) {
  if (g->kind != Formula::Kind::ExistsSt || g->f1->kind != Formula::Kind::ForallSt)
    throw EngineError("SwapStPrefix: expected ?st a. !st b. phi");
  FormulaPtr inner = g->f1;
  std::string a = g->name, b = inner->name;
  FormulaPtr body = inner->f1;
  if (a == b) {
    std::string nb = ctx.fresh(b);
    if (fresh) fresh->push_back(nb);
    body = substitute(body, b, mk_var(nb, inner->var_type));
    b = nb;
  }
  return mk_quant(Formula::Kind::ForallSt, b, inner->var_type,
                  mk_quant(Formula::Kind::ExistsSt, a, g->var_type, body));
}

}  // namespace

FormulaPtr apply_rule(RewriteRule rule, const FormulaPtr& f, const Path& path, RuleContext& ctx,
                      std::vector<std::string>* fresh_out) {
  FormulaPtr g = formula_at(f, path);
  FormulaPtr out;
  switch (rule) {
    case RewriteRule::PrenexAndSt:
      out = rw_prenex_and_or(g, true, ctx, fresh_out);
      break;
    case RewriteRule::PrenexOrSt:
      if (ctx.logic == Logic::Intuitionistic)
        throw EngineError("PrenexOrSt is classical-only");
      out = rw_prenex_and_or(g, false, ctx, fresh_out);
      break;
    case RewriteRule::PrenexImpliesSt:
      out = rw_prenex_implies(g, ctx, fresh_out);
      break;
    case RewriteRule::DoubleNegSt:
      if (ctx.logic == Logic::Intuitionistic)
        throw EngineError("DoubleNegSt is classical-only");
      if (g->kind != Formula::Kind::Not || g->f1->kind != Formula::Kind::Not)
        throw EngineError("DoubleNegSt: expected a double negation");
      out = g->f1->f1;
      break;
    case RewriteRule::Idealisation:
      if (ctx.logic == Logic::Intuitionistic)
        throw EngineError("Idealisation is used in the classical system only");
      out = rw_idealisation(g);
      break;
    case RewriteRule::HACint:
      out = rw_hacint(g, ctx, fresh_out);
      break;
    case RewriteRule::HGMPst:
      out = rw_hgmp(g, ctx, fresh_out);
      break;
    case RewriteRule::HIPforallst:
      out = rw_hip(g, ctx, fresh_out);
      break;
    case RewriteRule::ExpandApprox:
    case RewriteRule::ExpandExactEq:
    case RewriteRule::ExpandStdExt:
      throw EngineError(rule_name(rule) +
                        ": definitional expansions are applied at construction time "
                        "(expand_equality / expand_standard_extensionality)");
    case RewriteRule::DropStAntecedent:
      if (positive_at(f, path))
        throw EngineError("DropStAntecedent: position is not negative");
      if (g->kind != Formula::Kind::ForallSt)
        throw EngineError("DropStAntecedent: expected a standard universal");
      out = mk_quant(Formula::Kind::Forall, g->name, g->var_type, g->f1);
      break;
    case RewriteRule::MarkovSt:
      if (ctx.logic == Logic::Intuitionistic)
        throw EngineError("MarkovSt is classical-only");
      out = rw_markov(g);
      break;
    case RewriteRule::TransferComplement:
      out = rw_transfer_complement(g);
      break;
    case RewriteRule::TupleCode:
      out = rw_tuple_code(g, ctx, fresh_out);
      break;
    case RewriteRule::SkolemizeAntecedent:
      out = rw_skolemize_antecedent(g, ctx, fresh_out);
      break;
    case RewriteRule::BoundSearchClosure:
      out = rw_bound_search_closure(g, ctx, fresh_out);
      break;
    case RewriteRule::SwapStPrefix:
      out = rw_swap_st_prefix(g, ctx, fresh_out);
      break;
  }
  return replace_at(f, path, out);
}

namespace {

void measure_walk(const FormulaPtr& f, long depth, bool under_forallst, bool under_existsst,
                  std::array<long, 5>& m) {
  if (!f) return;
  bool connective = f->kind == Formula::Kind::Not || f->kind == Formula::Kind::And ||
                    f->kind == Formula::Kind::Or || f->kind == Formula::Kind::Implies ||
                    is_bounded_quantifier(f->kind);
  if (f->kind == Formula::Kind::ForallSt || f->kind == Formula::Kind::ExistsSt) {
    m[0] += depth;
    if (f->kind == Formula::Kind::ForallSt && under_existsst) m[1]++;
    if (f->kind == Formula::Kind::ExistsSt && under_forallst) m[2]++;
  }
  if (auto ts = match_transfer(f); ts && ts->eq_polarity) m[3]++;
  if (f->kind == Formula::Kind::ExistsSt && f->f1 && f->f1->kind == Formula::Kind::Implies) {
    FormulaPtr psi = f->f1->f2;
    bool closed = psi->kind == Formula::Kind::BoundedExistsLe && psi->t1 &&
                  psi->t1->kind == Term::Kind::Var && psi->t1->name == f->name;
    bool scalar = f->var_type->kind == Type::Kind::Base;
    bool member = f->var_type->kind == Type::Kind::Seq &&
                  f->var_type->a->kind == Type::Kind::Base &&
                  psi->kind == Formula::Kind::BoundedExistsIn;
    if ((scalar && !closed) || member) m[4]++;
  }
  long d = depth + (connective ? 1 : 0);
  measure_walk(f->f1, d,
               under_forallst || f->kind == Formula::Kind::ForallSt,
               under_existsst || f->kind == Formula::Kind::ExistsSt, m);
  measure_walk(f->f2, d, under_forallst, under_existsst, m);
}

}  // namespace

std::array<long, 5> nf_measure(const FormulaPtr& f) {
  std::array<long, 5> m{0, 0, 0, 0, 0};
  measure_walk(f, 0, false, false, m);
  return m;
}

namespace {

// Driver shared by normalize/normalize_implication: applies one rule,
// records the step, and asserts the termination measure decreases.
struct Driver {
  RuleContext ctx;
  RuleTrace trace;
  FormulaPtr cur;

  Driver(const FormulaPtr& f, const Signature& sig, Logic logic)
      : ctx(RuleContext::from(f, sig, logic)) {
    trace.initial = f;
    trace.sig0 = sig;
    cur = f;
  }

  void step(RewriteRule rule, const Path& path) {
    auto before = nf_measure(cur);
    std::vector<std::string> fresh;
    FormulaPtr next = apply_rule(rule, cur, path, ctx, &fresh);
    auto after = nf_measure(next);
    if (!(after < before))
      throw EngineError("termination measure did not decrease at " + rule_name(rule));
    trace.steps.push_back({rule, path, std::move(fresh), next});
    cur = next;
  }

  NormalizeResult finish() {
    auto nf = is_normal_form(cur);
    if (!nf) throw EngineError("normalization did not reach a normal form");
    trace.sig = ctx.sig;
    return {std::move(*nf), std::move(trace)};
  }
};

// Applies the transfer script at `at` (the forall-st node of the principle):
// polarity flip if needed, one prenex/HIP move, then the search closure.
void transfer_script(Driver& d, const Path& at) {
  FormulaPtr g = formula_at(d.cur, at);
  auto shape = match_transfer(g);
  if (!shape) throw EngineError("not the relativized transfer shape");
  if (shape->eq_polarity) d.step(RewriteRule::TransferComplement, at);
  Path body = at;
  body.push_back(0);
  if (d.ctx.logic == Logic::Classical)
    d.step(RewriteRule::PrenexImpliesSt, body);
  else
    d.step(RewriteRule::HIPforallst, body);
  d.step(RewriteRule::BoundSearchClosure, body);
}

bool generic_rule_allowed(RewriteRule r) {
  switch (r) {
    case RewriteRule::PrenexAndSt:
    case RewriteRule::PrenexOrSt:
    case RewriteRule::PrenexImpliesSt:
    case RewriteRule::DoubleNegSt:
    case RewriteRule::HGMPst:
    case RewriteRule::HIPforallst:
    case RewriteRule::MarkovSt:
    case RewriteRule::SwapStPrefix:
      return true;
    default:
      return false;
  }
}

void collect_paths_postorder(const FormulaPtr& f, Path& p, std::vector<Path>& out) {
  if (!f) return;
  if (f->f1) {
    p.push_back(0);
    collect_paths_postorder(f->f1, p, out);
    p.pop_back();
  }
  if (f->f2) {
    p.push_back(1);
    collect_paths_postorder(f->f2, p, out);
    p.pop_back();
  }
  out.push_back(p);
}

bool looks_like_uniform_plus(const FormulaPtr& f) {
  if (f->kind != Formula::Kind::ExistsSt) return false;
  auto blocks = match_antecedent_blocks(f->f1);
  if (blocks) return true;
  // clauses with an inner exists-st (the extensionality family) also qualify
  std::vector<std::pair<Path, FormulaPtr>> leaves;
  conj_leaves(f->f1, {}, leaves);
  for (const auto& [p, leaf] : leaves) {
    ClauseShape s = peel_clause(leaf);
    if (!is_internal(s.core)) return false;
  }
  return true;
}

NormalizeResult normalize_implication_driver(const FormulaPtr& whole, Logic logic,
                                             const Signature& sig);

}  // namespace

NormalizeResult normalize(const FormulaPtr& f, Logic logic, const Signature& sig) {
  typecheck(f, {}, sig);
  Driver d(f, sig, logic);
  if (is_normal_form(d.cur)) return d.finish();
  if (match_transfer(d.cur)) {
    transfer_script(d, {});
    return d.finish();
  }
  if (d.cur->kind == Formula::Kind::Implies && looks_like_uniform_plus(d.cur->f1))
    return normalize_implication_driver(d.cur, logic, sig);
  // generic loop over the prenex fragment
  int guard = 0;
  while (!is_normal_form(d.cur)) {
    if (++guard > 10000) throw EngineError("normalization did not terminate");
    std::vector<Path> paths;
    Path p;
    collect_paths_postorder(d.cur, p, paths);
    bool moved = false;
    for (const auto& path : paths) {
      if (match_transfer(formula_at(d.cur, path))) {
        transfer_script(d, path);
        moved = true;
        break;
      }
      for (RewriteRule r : all_rules()) {
        if (!generic_rule_allowed(r)) continue;
        if (logic == Logic::Intuitionistic && !rule_intuitionistic(r)) continue;
        try {
          d.step(r, path);
          moved = true;
          break;
        } catch (const EngineError&) {
        }
      }
      if (moved) break;
    }
    if (!moved) {
      FormulaPtr block = d.cur;
      while (is_st_quant(block->kind)) block = block->f1;
      throw EngineError("input outside the supported fragment; first blocking node: " +
                        print_formula(block, TypeContext{}, sig));
    }
  }
  return d.finish();
}

namespace {

NormalizeResult normalize_implication_driver(const FormulaPtr& whole, Logic logic,
                                             const Signature& sig) {
  Driver d(whole, sig, logic);
  // 1. consequent: bring the transfer principle (or accept a normal form)
  {
    FormulaPtr cons = d.cur->f2;
    if (match_transfer(cons)) {
      transfer_script(d, {1});
    } else if (!is_normal_form(cons)) {
      throw EngineError("normalize_implication: unsupported consequent shape");
    }
  }
  // 2. antecedent: exists-st over a conjunction of clause families
  FormulaPtr ante = d.cur->f1;
  if (ante->kind != Formula::Kind::ExistsSt)
    throw EngineError("normalize_implication: antecedent lacks the leading ?st functional");
  std::vector<std::pair<Path, FormulaPtr>> leaves;
  conj_leaves(ante->f1, {}, leaves);
  int b_clauses = 0;
  for (const auto& [p, leaf] : leaves) {
    ClauseShape s = peel_clause(leaf);
    if (!is_internal(s.core))
      throw EngineError("normalize_implication: clause core is not internal: " +
                        print_formula(s.core, TypeContext{}, d.ctx.sig));
    if (s.inner_exists) {
      // extensionality-style clause: code its variable block into one Z
      Path full{0, 0};  // antecedent, under ?st
      full.insert(full.end(), p.begin(), p.end());
      if (s.st_block.size() + s.bounded.size() >= 2) d.step(RewriteRule::TupleCode, full);
      b_clauses++;
    } else if (!s.bounded.empty()) {
      throw EngineError("normalize_implication: unsupported bounded clause without ?st");
    }
  }
  // 3. pull the leading functional out of the antecedent
  d.step(RewriteRule::PrenexImpliesSt, {});
  // 4. one extensionality functional per coded clause
  Path impl{0};
  for (int i = 0; i < b_clauses; i++) {
    d.step(RewriteRule::SkolemizeAntecedent, impl);
    impl.push_back(0);
  }
  if (logic == Logic::Classical) {
    // 5a. drop st inside the (negative) antecedent
    bool dropped = true;
    while (dropped) {
      dropped = false;
      std::vector<std::pair<Path, FormulaPtr>> cls;
      conj_leaves(formula_at(d.cur, impl)->f1, {}, cls);
      for (const auto& [p, leaf] : cls) {
        FormulaPtr cur = leaf;
        Path rel;
        while (cur->kind == Formula::Kind::ForallSt || cur->kind == Formula::Kind::Forall) {
          if (cur->kind == Formula::Kind::ForallSt) {
            Path full = impl;
            full.push_back(0);
            full.insert(full.end(), p.begin(), p.end());
            full.insert(full.end(), rel.begin(), rel.end());
            d.step(RewriteRule::DropStAntecedent, full);
            dropped = true;
            break;
          }
          rel.push_back(0);
          cur = cur->f1;
        }
        if (dropped) break;
      }
    }
    // 6a. prenex the consequent blocks through the implication
    while (formula_at(d.cur, impl)->f2->kind == Formula::Kind::ForallSt ||
           formula_at(d.cur, impl)->f2->kind == Formula::Kind::ExistsSt) {
      d.step(RewriteRule::PrenexImpliesSt, impl);
      impl.push_back(0);
    }
  } else {
    // 5b. pull the consequent's standard universals, then herbrandize
    while (formula_at(d.cur, impl)->f2->kind == Formula::Kind::ForallSt) {
      d.step(RewriteRule::PrenexImpliesSt, impl);
      impl.push_back(0);
    }
    while (formula_at(d.cur, impl)->f2->kind == Formula::Kind::ExistsSt) {
      d.step(RewriteRule::HIPforallst, impl);
      impl.push_back(0);
    }
    d.step(RewriteRule::HGMPst, impl);
  }
  return d.finish();
}

}  // namespace

NormalizeResult normalize_implication(const FormulaPtr& antecedent, const FormulaPtr& consequent,
                                      Logic logic, const Signature& sig) {
  static const FormulaPtr truth = mk_eq(mk_zero(), mk_zero());
  if (formula_equal(antecedent, truth)) return normalize(consequent, logic, sig);
  typecheck(antecedent, {}, sig);
  typecheck(consequent, {}, sig);
  return normalize_implication_driver(mk_implies(antecedent, consequent), logic, sig);
}

FormulaPtr replay(const RuleTrace& trace, Logic logic) {
  // replaying regenerates the same fresh names from the same starting state
  RuleContext ctx = RuleContext::from(trace.initial, trace.sig0, logic);
  FormulaPtr cur = trace.initial;
  for (const auto& step : trace.steps) {
    std::vector<std::string> fresh;
    cur = apply_rule(step.rule, cur, step.path, ctx, &fresh);
    if (!formula_equal(cur, step.after))
      throw EngineError("trace replay diverged at " + rule_name(step.rule));
  }
  return cur;
}

FormulaPtr expand_standard_extensionality(const std::string& fn_name, const TypePtr& domain,
                                          const TypePtr& codomain, Signature& sig) {
  auto ds = product_components(domain);
  for (const auto& t : ds)
    if (!type_equal(t, type_pure(1)))
      throw EngineError("standard extensionality: only type-1 domain components are supported");
  auto cs = product_components(codomain);
  sig.declare({"bar", {type_pure(1), type_base()}, type_base()});

  TypePtr fn_type = type_arrow(domain, codomain);
  std::set<std::string> used{fn_name};
  auto pick = [&](const std::string& base) {
    std::string n = fresh_name(base, used);
    used.insert(n);
    return n;
  };
  std::vector<std::string> xs, ys;
  if (ds.size() == 1) {
    xs = {pick("f")};
    ys = {pick("g")};
  } else if (ds.size() == 2) {
    xs = {pick("f"), pick("g")};
    ys = {pick("u"), pick("v")};
  } else {
    for (size_t i = 0; i < ds.size(); i++) xs.push_back(pick("f" + std::to_string(i + 1)));
    for (size_t i = 0; i < ds.size(); i++) ys.push_back(pick("g" + std::to_string(i + 1)));
  }

  TypeContext ctx;
  ctx[fn_name] = fn_type;
  for (size_t i = 0; i < ds.size(); i++) {
    ctx[xs[i]] = ds[i];
    ctx[ys[i]] = ds[i];
  }

  auto agree_premise = [&](const std::string& nvar) {
    std::vector<FormulaPtr> eqs;
    for (size_t i = 0; i < ds.size(); i++)
      eqs.push_back(mk_eq(mk_funsym("bar", {mk_var(xs[i], ds[i]), mk_var(nvar, type_base())}),
                          mk_funsym("bar", {mk_var(ys[i], ds[i]), mk_var(nvar, type_base())})));
    return mk_and_all(eqs);
  };

  std::vector<TermPtr> xargs, yargs;
  for (size_t i = 0; i < ds.size(); i++) {
    xargs.push_back(mk_var(xs[i], ds[i]));
    yargs.push_back(mk_var(ys[i], ds[i]));
  }
  TermPtr fx = apply_term(mk_var(fn_name, fn_type), xargs, ctx, sig);
  TermPtr fy = apply_term(mk_var(fn_name, fn_type), yargs, ctx, sig);

  // group codomain components by type; same-typed groups share a <=-bounded
  // component selector, mirroring the two-component display
  struct Group {
    TypePtr type;
    std::vector<int> comps;
  };
  std::vector<Group> groups;
  for (size_t c = 0; c < cs.size(); c++) {
    bool found = false;
    for (auto& g : groups)
      if (type_equal(g.type, cs[c])) {
        g.comps.push_back(static_cast<int>(c));
        found = true;
      }
    if (!found) groups.push_back({cs[c], {static_cast<int>(c)}});
  }

  std::vector<FormulaPtr> clauses;
  for (const auto& g : groups) {
    std::string N = fresh_name("N", used);
    used.insert(N);
    auto sel = [&](const TermPtr& base, const TermPtr& ivar) -> TermPtr {
      if (g.comps.size() == 1) return mk_component(base, g.comps[0], static_cast<int>(cs.size()));
      std::vector<TermPtr> elems;
      for (int c : g.comps) elems.push_back(mk_component(base, c, static_cast<int>(cs.size())));
      return mk_idx(mk_seqlit(g.type, elems), ivar);
    };
    std::string ivar;
    TermPtr iv;
    if (g.comps.size() > 1) {
      ivar = fresh_name("i", used);
      used.insert(ivar);
      iv = mk_var(ivar, type_base());
    }
    FormulaPtr concl;
    std::vector<std::pair<std::string, TypePtr>> precisions;
    if (type_equal(g.type, type_pure(1))) {
      std::string k = fresh_name("k", used);
      used.insert(k);
      precisions.emplace_back(k, type_base());
      concl = mk_eq(mk_funsym("bar", {sel(fx, iv), mk_var(k, type_base())}),
                    mk_funsym("bar", {sel(fy, iv), mk_var(k, type_base())}));
    } else if (type_equal(g.type, type_pure(2))) {
      std::string w = fresh_name("w", used);
      used.insert(w);
      precisions.emplace_back(w, type_pure(1));
      concl = mk_eq(mk_app(sel(fx, iv), mk_var(w, type_pure(1))),
                    mk_app(sel(fy, iv), mk_var(w, type_pure(1))));
    } else if (g.type->kind == Type::Kind::Base) {
      concl = mk_eq(sel(fx, iv), sel(fy, iv));
    } else {
      throw EngineError("standard extensionality: unsupported codomain component " +
                        show_type(g.type));
    }
    FormulaPtr body = mk_implies(agree_premise(N), concl);
    body = mk_quant(Formula::Kind::ExistsSt, N, type_base(), body);
    if (g.comps.size() > 1)
      body = mk_bounded(Formula::Kind::BoundedForallLe, ivar, type_base(),
                        mk_numeral(static_cast<int>(g.comps.size()) - 1), body);
    for (auto it = precisions.rbegin(); it != precisions.rend(); ++it)
      body = mk_quant(Formula::Kind::ForallSt, it->first, it->second, body);
    for (int i = static_cast<int>(ds.size()) - 1; i >= 0; i--)
      body = mk_quant(Formula::Kind::ForallSt, ys[i], ds[i], body);
    for (int i = static_cast<int>(ds.size()) - 1; i >= 0; i--)
      body = mk_quant(Formula::Kind::ForallSt, xs[i], ds[i], body);
    clauses.push_back(body);
  }
  return mk_and_all(clauses);
}

std::string trace_to_text(const RuleTrace& trace) {
  std::ostringstream out;
  int n = 0;
  for (const auto& step : trace.steps) {
    out << "STEP " << ++n << " " << rule_name(step.rule) << " AT ";
    if (step.path.empty()) {
      out << "/";
    } else {
      for (int s : step.path) out << "/" << s;
    }
    out << " FRESH ";
    if (step.fresh.empty()) {
      out << "-";
    } else {
      for (size_t i = 0; i < step.fresh.size(); i++) {
        if (i) out << ",";
        out << step.fresh[i];
      }
    }
    out << " => " << print_formula(step.after, TypeContext{}, trace.sig) << "\n";
  }
  return out.str();
}

}  // namespace nszoo
