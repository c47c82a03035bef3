#include "nszoo/catalog.hpp"

#include "nszoo/parse.hpp"
#include "nszoo/print.hpp"

namespace nszoo {

std::string kind_name(PrincipleKind k) {
  switch (k) {
    case PrincipleKind::Zoo: return "zoo";
    case PrincipleKind::Uniform: return "uniform";
    case PrincipleKind::UniformPlus: return "uniform-plus";
    case PrincipleKind::Comprehension: return "comprehension";
    case PrincipleKind::Transfer: return "transfer";
  }
  return "?";
}

namespace {

const char* kKleeneSig = "sym T : 0 x 0 x 1 x 0 x 0 -> 0\n";

struct Entry {
  const char* name;
  PrincipleKind kind;
  const char* sig;
  const char* text;
  const char* note;
};

// The Kleene application relation phi^f_{e,s}(n) = m is the uninterpreted
// decidable atom T(e,s,f,n,m); halting is an unbounded ?s search over it.
// Sequence coding plumbing (initial segments, prefix relations) is likewise
// declared, never interpreted.
const Entry kEntries[] = {
    {"DNR", PrincipleKind::Zoo, kKleeneSig,
     "!A:1. ?f:1. !e:0. !s:0. !m:0. T(e,s,A,e,m) -> app(f,e) != m",
     "diagonally non-recursive functions"},
    {"UDNR", PrincipleKind::Uniform, kKleeneSig,
     "?Psi:(1 -> 1). !A:1. !e:0. !s:0. !m:0. T(e,s,A,e,m) -> app(app(Psi,A),e) != m",
     "uniform DNR"},
    {"Pi01G", PrincipleKind::Zoo,
     "sym app3 : 1 x 0 x 0 x 0 -> 0\n"
     "sym app2 : 1 x 0 x 0 -> 0\n"
     "sym bin : 0 -> 0\n"
     "sym ext : 0 x 0 -> 0\n"
     "sym prec : 0 x 1 -> 0\n",
     "!f:1. !g:1. ?G:1. ?sel:1. "
     "(!i:0. !tau:0. bin(tau) -> ext(app2(g,i,tau),tau) & "
     "(!k:0. app3(f,k,i,app2(g,i,tau)) != 0)) -> "
     "(!i:0. prec(app(sel,i),G) & (!k:0. app3(f,k,i,app(sel,i)) != 0))",
     "uniformly Pi01 generics; D_i^f(sigma) is !k:0. app3(f,k,i,sigma) != 0"},
    {"UPi01G", PrincipleKind::Uniform,
     "sym app3 : 1 x 0 x 0 x 0 -> 0\n"
     "sym app2 : 1 x 0 x 0 -> 0\n"
     "sym bin : 0 -> 0\n"
     "sym ext : 0 x 0 -> 0\n"
     "sym prec : 0 x 1 -> 0\n",
     "?Phi:((1 * 1) -> (1 * 1)). !f:1. !g:1. "
     "(!i:0. !tau:0. bin(tau) -> ext(app2(g,i,tau),tau) & "
     "(!k:0. app3(f,k,i,app2(g,i,tau)) != 0)) -> "
     "(!i:0. prec(app(proj2(app(Phi,f,g)),i),proj1(app(Phi,f,g))) & "
     "(!k:0. app3(f,k,i,app(proj2(app(Phi,f,g)),i)) != 0))",
     "fully uniform Pi01G"},
    {"1GEN", PrincipleKind::Zoo,
     "sym app3 : 1 x 0 x 0 x 0 -> 0\n"
     "sym bar : 1 x 0 -> 0\n"
     "sym slen : 0 -> 0\n"
     "sym ext : 0 x 0 -> 0\n",
     "!X:1. ?Y:1. ?n2:2. ?m2:2. !f:1. "
     "(?tau:0. app3(f,bar(Y,app(n2,f)),tau,bar(X,slen(tau))) = 0) | "
     "(!sigma:0. ext(sigma,bar(Y,app(m2,f))) -> "
     "~(?tau:0. app3(f,sigma,tau,bar(X,slen(tau))) = 0))",
     "1-generics; sigma in S_f^X is ?tau:0. app3(f,sigma,tau,bar(X,slen(tau))) = 0"},
    {"U1G", PrincipleKind::Uniform,
     "sym app3 : 1 x 0 x 0 x 0 -> 0\n"
     "sym bar : 1 x 0 -> 0\n"
     "sym slen : 0 -> 0\n"
     "sym ext : 0 x 0 -> 0\n",
     "?Phi:(1 -> (1 * (2 * 2))). !X:1. !f:1. "
     "(?tau:0. app3(f,bar(proj1(app(Phi,X)),app(proj1(proj2(app(Phi,X))),f)),tau,"
     "bar(X,slen(tau))) = 0) | "
     "(!sigma:0. ext(sigma,bar(proj1(app(Phi,X)),app(proj2(proj2(app(Phi,X))),f))) -> "
     "~(?tau:0. app3(f,sigma,tau,bar(X,slen(tau))) = 0))",
     "uniform 1-GEN with triple-component codomain"},
    {"HYP", PrincipleKind::Zoo,
     "sym T : 0 x 0 x 1 x 0 x 0 -> 0\nsym app2 : 1 x 0 x 0 -> 0\n",
     "!f:1. ?g:1. ?c:1. !e:0. !k:0. k <= app2(c,e,k) & "
     "(!m:0. !s:0. T(e,s,f,app2(c,e,k),m) -> S(m) <= app(g,app2(c,e,k)))",
     "hyperimmune / escaping functions; uniform OPT and HYP coincide"},
    {"UHYP", PrincipleKind::Uniform,
     "sym T : 0 x 0 x 1 x 0 x 0 -> 0\nsym app2 : 1 x 0 x 0 -> 0\n",
     "?Phi:(1 -> (1 * 1)). !f:1. !e:0. !k:0. k <= app2(proj2(app(Phi,f)),e,k) & "
     "(!m:0. !s:0. T(e,s,f,app2(proj2(app(Phi,f)),e,k),m) -> "
     "S(m) <= app(proj1(app(Phi,f)),app2(proj2(app(Phi,f)),e,k)))",
     "uniform HYP"},
    {"NCS", PrincipleKind::Zoo, kKleeneSig,
     "!f:1. ?g:1. ?c:1. !e:0. !s:0. !m:0. "
     "T(e,s,f,app(c,e),m) -> app(g,app(c,e)) != m",
     "non-computable sets"},
    {"UNCS", PrincipleKind::Uniform, kKleeneSig,
     "?Phi:(1 -> (1 * 1)). !f:1. !e:0. !s:0. !m:0. "
     "T(e,s,f,app(proj2(app(Phi,f)),e),m) -> "
     "app(proj1(app(Phi,f)),app(proj2(app(Phi,f)),e)) != m",
     "uniform NCS"},
    {"KPT", PrincipleKind::Zoo,
     "sym redT : 1 x 1 x 1 -> 0\nsym leT : 1 x 1 -> 0\n",
     "!f:1. ?g:1. ?h:1. redT(f,g,h) & ~leT(g,h) & ~leT(h,g)",
     "Turing incomparable sets; reducibility atoms are uninterpreted"},
    {"UKPT", PrincipleKind::Uniform,
     "sym redT : 1 x 1 x 1 -> 0\nsym leT : 1 x 1 -> 0\n",
     "?Phi:(1 -> (1 * 1)). !f:1. redT(f,proj1(app(Phi,f)),proj2(app(Phi,f))) & "
     "~leT(proj1(app(Phi,f)),proj2(app(Phi,f))) & "
     "~leT(proj2(app(Phi,f)),proj1(app(Phi,f)))",
     "fully uniform KPT"},
    {"PI01-TRANS", PrincipleKind::Transfer, "",
     "!st f:1. (?n:0. app(f,n) = 0) -> ?st m:0. app(f,m) = 0",
     "transfer for Pi01 formulas"},
    {"MU2", PrincipleKind::Comprehension, "",
     "?mu:2. !f:1. (?n:0. app(f,n) = 0) -> app(f,app(mu,f)) = 0",
     "Feferman search operator"},
    {"E2", PrincipleKind::Comprehension, "",
     "?phi:2. !f:1. (app(phi,f) = 0 -> ?n:0. app(f,n) != 0) & "
     "((?n:0. app(f,n) != 0) -> app(phi,f) = 0)",
     "arithmetical comprehension, functional form"},
};

struct AliasEntry {
  const char* name;
  const char* target;
  const char* note;
};

const AliasEntry kAliases[] = {
    {"OPT", "HYP", "omitting partial types: its uniform version coincides with UHYP"},
    {"AMT", "HYP", "atomic model theorem: uniformly reducible to UHYP"},
    {"SADS", "HYP", "stable ascending/descending sequences: uniformly reducible via AMT"},
    {"AST", "NCS", "atomic models with subenumerable types: uniformly equivalent to UNCS"},
};

std::map<std::string, Principle> build_catalog() {
  std::map<std::string, Principle> out;
  for (const Entry& e : kEntries) {
    Principle p;
    p.name = e.name;
    p.kind = e.kind;
    p.signature = parse_signature(e.sig);
    p.statement = parse_formula(e.text, p.signature);
    p.note = e.note;
    out.emplace(p.name, std::move(p));
  }
  return out;
}

const std::map<std::string, Principle>& catalog() {
  static const std::map<std::string, Principle> c = build_catalog();
  return c;
}

}  // namespace

const Principle& get_principle(const std::string& name) {
  if (name == "FIP")
    throw NotEncodedError(
        "FIP is catalogued as a note only: its uniform version is equivalent to the "
        "search operator through the strengthened form with an index set, which has "
        "no displayed encoding here; use Pi01G or 1GEN for the worked pipelines");
  for (const AliasEntry& a : kAliases)
    if (name == a.name) return catalog().at(a.target);
  auto it = catalog().find(name);
  if (it == catalog().end()) throw EngineError("unknown principle " + name);
  return it->second;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& [n, _] : catalog()) out.push_back(n);
  for (const AliasEntry& a : kAliases) out.push_back(a.name);
  return out;
}

std::optional<std::pair<std::string, std::string>> alias_info(const std::string& name) {
  for (const AliasEntry& a : kAliases)
    if (name == a.name) return std::make_pair(std::string(a.target), std::string(a.note));
  return std::nullopt;
}

FormulaPtr transfer_search_form() {
  static const FormulaPtr f = parse_formula(
      "!st f:1. (?n:0. app(f,n) != 0) -> ?st m:0. app(f,m) != 0", Signature{});
  return f;
}

const std::vector<std::string>& nine_principles() {
  static const std::vector<std::string> nine = {"DNR", "Pi01G", "1GEN", "OPT", "AMT",
                                                "SADS", "AST",   "NCS",  "KPT"};
  return nine;
}

namespace {

// Replaces every occurrence of a closed-over term by another term.
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

FormulaPtr replace_term(const FormulaPtr& f, const TermPtr& from, const TermPtr& to) {
  if (!f) return f;
  TermPtr t1 = f->t1 ? replace_term(f->t1, from, to) : nullptr;
  TermPtr t2 = f->t2 ? replace_term(f->t2, from, to) : nullptr;
  std::vector<TermPtr> args;
  for (const auto& a : f->args) args.push_back(replace_term(a, from, to));
  FormulaPtr f1 = replace_term(f->f1, from, to);
  FormulaPtr f2 = replace_term(f->f2, from, to);
  return std::make_shared<Formula>(
      Formula{f->kind, f->name, f->var_type, t1, t2, std::move(args), f1, f2});
}

}  // namespace

Principle uniformize(const Principle& zoo) {
  if (zoo.kind != PrincipleKind::Zoo)
    throw EngineError("uniformize: " + zoo.name + " is not a zoo principle");
  std::vector<std::pair<std::string, TypePtr>> xs, ys;
  FormulaPtr cur = zoo.statement;
  while (cur->kind == Formula::Kind::Forall && type_equal(cur->var_type, type_pure(1))) {
    xs.emplace_back(cur->name, cur->var_type);
    cur = cur->f1;
  }
  while (cur->kind == Formula::Kind::Exists) {
    ys.emplace_back(cur->name, cur->var_type);
    cur = cur->f1;
  }
  if (xs.empty() || ys.empty())
    throw EngineError("uniformize: " + zoo.name + " lacks the (forall X)(exists Y) shape");
  std::vector<TypePtr> xts, yts;
  for (auto& [n, t] : xs) xts.push_back(t);
  for (auto& [n, t] : ys) yts.push_back(t);
  TypePtr phit = type_arrow(product_of(xts), product_of(yts));
  std::string phi = fresh_name("Phi", all_names(zoo.statement));

  TypeContext ctx;
  ctx[phi] = phit;
  for (auto& [n, t] : xs) ctx[n] = t;
  std::vector<TermPtr> xargs;
  for (auto& [n, t] : xs) xargs.push_back(mk_var(n, t));
  TermPtr applied = apply_term(mk_var(phi, phit), xargs, ctx, zoo.signature);

  FormulaPtr matrix = cur;
  for (size_t i = 0; i < ys.size(); i++) {
    TermPtr sel = mk_component(applied, static_cast<int>(i), static_cast<int>(ys.size()));
    matrix = substitute(matrix, ys[i].first, sel);
  }
  for (auto it = xs.rbegin(); it != xs.rend(); ++it)
    matrix = mk_quant(Formula::Kind::Forall, it->first, it->second, matrix);
  FormulaPtr stmt = mk_quant(Formula::Kind::Exists, phi, phit, matrix);

  Principle out;
  out.name = zoo.name == "1GEN" ? "U1G" : "U" + zoo.name;
  out.kind = PrincipleKind::Uniform;
  out.signature = zoo.signature;
  out.statement = stmt;
  out.note = "uniform version of " + zoo.name;
  return out;
}

Principle de_uniformize(const Principle& uniform) {
  if (uniform.kind != PrincipleKind::Uniform)
    throw EngineError("de_uniformize: " + uniform.name + " is not a uniform principle");
  FormulaPtr cur = uniform.statement;
  if (cur->kind != Formula::Kind::Exists)
    throw EngineError("de_uniformize: missing leading existential");
  std::string phi = cur->name;
  TypePtr phit = cur->var_type;
  cur = cur->f1;
  if (phit->kind != Type::Kind::Arrow)
    throw EngineError("de_uniformize: the functional is not arrow-typed");
  size_t arity = product_components(phit->a).size();
  std::vector<std::pair<std::string, TypePtr>> xs;
  while (xs.size() < arity && cur->kind == Formula::Kind::Forall &&
         type_equal(cur->var_type, type_pure(1))) {
    xs.emplace_back(cur->name, cur->var_type);
    cur = cur->f1;
  }
  if (xs.size() != arity)
    throw EngineError("de_uniformize: universal block does not match the functional domain");
  auto yts = product_components(phit->b);

  TypeContext ctx;
  ctx[phi] = phit;
  for (auto& [n, t] : xs) ctx[n] = t;
  std::vector<TermPtr> xargs;
  for (auto& [n, t] : xs) xargs.push_back(mk_var(n, t));
  TermPtr applied = apply_term(mk_var(phi, phit), xargs, ctx, uniform.signature);

  std::set<std::string> used = all_names(uniform.statement);
  FormulaPtr matrix = cur;
  std::vector<std::pair<std::string, TypePtr>> ys;
  for (size_t i = 0; i < yts.size(); i++) {
    TermPtr sel = mk_component(applied, static_cast<int>(i), static_cast<int>(yts.size()));
    std::string y = fresh_name("Y" + std::to_string(i + 1), used);
    used.insert(y);
    ys.emplace_back(y, yts[i]);
    matrix = replace_term(matrix, sel, mk_var(y, yts[i]));
  }
  if (free_vars(matrix).count(phi))
    throw EngineError("de_uniformize: residual occurrences of the functional remain");
  for (auto it = ys.rbegin(); it != ys.rend(); ++it)
    matrix = mk_quant(Formula::Kind::Exists, it->first, it->second, matrix);
  for (auto it = xs.rbegin(); it != xs.rend(); ++it)
    matrix = mk_quant(Formula::Kind::Forall, it->first, it->second, matrix);

  Principle out;
  out.name = uniform.name + "-deuniformized";
  out.kind = PrincipleKind::Zoo;
  out.signature = uniform.signature;
  out.statement = matrix;
  out.note = "selector erasure of " + uniform.name;
  return out;
}

Principle plus_version(const Principle& uniform) {
  if (uniform.kind != PrincipleKind::Uniform)
    throw EngineError("plus_version: " + uniform.name + " is not a uniform principle" +
                      (uniform.kind == PrincipleKind::UniformPlus ? " (already a plus version)"
                                                                  : ""));
  FormulaPtr cur = uniform.statement;
  if (cur->kind != Formula::Kind::Exists)
    throw EngineError("plus_version: missing leading existential");
  std::string phi = cur->name;
  TypePtr phit = cur->var_type;
  cur = cur->f1;
  std::vector<std::pair<std::string, TypePtr>> xs;
  while (cur->kind == Formula::Kind::Forall && type_equal(cur->var_type, type_pure(1))) {
    xs.emplace_back(cur->name, cur->var_type);
    cur = cur->f1;
  }
  FormulaPtr core = cur;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it)
    core = mk_quant(Formula::Kind::ForallSt, it->first, it->second, core);

  Principle out;
  out.name = uniform.name + "+";
  out.kind = PrincipleKind::UniformPlus;
  out.signature = uniform.signature;
  FormulaPtr stdext =
      expand_standard_extensionality(phi, phit->a, phit->b, out.signature);
  out.statement = mk_quant(Formula::Kind::ExistsSt, phi, phit, mk_and(core, stdext));
  out.note = "standard uniform version of " + uniform.name + " with standard extensionality";
  return out;
}

}  // namespace nszoo
