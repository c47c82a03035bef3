#include "nszoo/report.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nszoo/parse.hpp"
#include "nszoo/print.hpp"

namespace nszoo {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

const Stage* Report::stage(const std::string& name) const {
  for (const auto& st : stages)
    if (st.name == name) return &st;
  return nullptr;
}

namespace {

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

// C(f, m) with both slots filled
FormulaPtr search_matrix(const NormalForm& transfer_nf, const TermPtr& fvar,
                         const TermPtr& bound) {
  FormulaPtr c = transfer_nf.matrix;
  c = substitute(c, transfer_nf.st_existentials[0].first, bound);
  return substitute(c, transfer_nf.st_universals[0].first, fvar);
}

struct GoldenPlan {
  const char* file;
  const char* stage;
};

std::vector<GoldenPlan> golden_plan(const std::string& principle, Logic logic) {
  std::vector<GoldenPlan> plan{{"curk", "consequent_normal_form"}};
  if (principle == "Pi01G") {
    if (logic == Logic::Classical) {
      plan.push_back({"frok", "uniform_matrix"});
      plan.push_back({"finkal", "stdext_clause"});
      plan.push_back({"tokamak", "stdext_matrix"});
      plan.push_back({"structure", "normal_form"});
      plan.push_back({"frood2", "explicit_equivalence"});
      plan.push_back({"hio", "herbrandisation"});
    } else {
      plan.push_back({"bling", "normal_form"});
      plan.push_back({"froodke", "explicit_pointwise"});
    }
  }
  if (principle == "DNR" && logic == Logic::Classical)
    plan.push_back({"frood", "explicit_equivalence"});
  if (principle == "1GEN") plan.push_back({"fras", "uniform_matrix"});
  return plan;
}

}  // namespace

Report pipeline(const std::string& name, Logic logic, const PipelineOptions& opts) {
  Report r;
  r.principle = name;
  r.logic = logic;
  r.seed = opts.seed;
  auto t_total = Clock::now();

  const Principle& p = get_principle(name);
  if (auto alias = alias_info(name))
    r.notes["alias"] = name + " resolves to " + alias->first + ": " + alias->second;
  auto add_stage = [&](const std::string& sname, const FormulaPtr& f, Signature vars = {}) {
    r.stages.push_back({sname, f, std::move(vars)});
  };
  Principle uniform;
  if (p.kind == PrincipleKind::Zoo) {
    add_stage("zoo", p.statement);
    uniform = uniformize(p);
  } else if (p.kind == PrincipleKind::Uniform) {
    uniform = p;
  } else {
    throw EngineError("pipeline: " + name + " is not a zoo or uniform principle");
  }
  add_stage("uniform", uniform.statement);

  auto t0 = Clock::now();
  Principle up = plus_version(uniform);
  r.timings_ms["plus_version"] = ms_since(t0);
  add_stage("uniform_plus", up.statement);

  // open views of the uniform statement for the display-level golden files
  {
    FormulaPtr cur = uniform.statement->f1;
    Signature vars;
    vars.declare_var({uniform.statement->name, uniform.statement->var_type});
    while (cur->kind == Formula::Kind::Forall && type_equal(cur->var_type, type_pure(1))) {
      vars.declare_var({cur->name, cur->var_type});
      cur = cur->f1;
    }
    add_stage("uniform_matrix", cur, vars);
  }
  {
    auto leaves = conjunction_leaves(up.statement->f1);
    std::vector<FormulaPtr> ext(leaves.size() > 1 ? leaves.size() - 1 : 0);
    for (size_t i = 1; i < leaves.size(); i++) ext[i - 1] = leaves[i].second;
    if (!ext.empty()) {
      Signature cvars;
      cvars.declare_var({up.statement->name, up.statement->var_type});
      FormulaPtr clause = mk_and_all(ext);
      add_stage("stdext_clause", clause, cvars);
      // innermost matrix of the first clause, with every quantifier peeled
      FormulaPtr m = ext[0];
      Signature vars = cvars;
      while (is_quantifier(m->kind)) {
        vars.declare_var({m->name, m->var_type});
        m = m->f1;
      }
      add_stage("stdext_matrix", m, vars);
    }
  }

  const Principle& trans = get_principle("PI01-TRANS");
  add_stage("transfer", trans.statement);
  add_stage("transfer_search", transfer_search_form());

  Signature sig = up.signature;
  sig.merge(trans.signature);

  t0 = Clock::now();
  NormalizeResult impl = normalize_implication(up.statement, trans.statement, logic, sig);
  r.timings_ms["normalize"] = ms_since(t0);
  r.trace = impl.trace;
  add_stage("normal_form", impl.nf.to_formula());

  NormalizeResult cons = normalize(trans.statement, logic, trans.signature);
  add_stage("consequent_normal_form", cons.nf.to_formula());

  t0 = Clock::now();
  ExtractionResult ex = extract(impl.nf, impl.trace);
  r.timings_ms["extract"] = ms_since(t0);
  add_stage("internal_sentence", ex.internal_sentence);
  if (logic == Logic::Classical) {
    FormulaPtr collapsed = collapse_monotone(ex, {impl.nf.st_existentials[0].first});
    add_stage("collapsed", collapsed);
  } else {
    r.notes["collapse"] =
        "skipped: the herbrand existentials are sequence-typed; the pointwise "
        "emission carries the explicit term instead";
  }

  // herbrandisation over the exists-style antecedent normal form
  Signature hsig = sig;
  NormalForm a_nf = uniform_plus_exists_nf(up.statement, hsig);
  t0 = Clock::now();
  Herbrandisation herb = herbrandise(a_nf, cons.nf, hsig);
  r.timings_ms["herbrandise"] = ms_since(t0);
  r.sig.merge(herb.sig);
  add_stage("herbrandisation", herb.body);

  FormulaPtr reversed = meta_reverse(herb);
  add_stage("meta_reversal", reversed);
  bool round_trip = alpha_equal(reversed, mk_implies(up.statement, trans.statement));
  r.verdicts["round_trip"] = round_trip ? Verdict::Pass : Verdict::Fail;

  // explicit-equivalence emissions (shape level; the reverse direction is a
  // template, the forward one is backed by the extraction)
  {
    TypePtr phit = up.statement->var_type;
    std::vector<TypePtr> xits;
    for (size_t i = 1; i < a_nf.st_existentials.size(); i++)
      xits.push_back(a_nf.st_existentials[i].second);
    std::set<std::string> used;
    for (const auto& [n, d] : herb.sig.symbols()) used.insert(n);
    auto mu_matrix = [&](const TermPtr& mu_term) {
      std::string f = fresh_name("f", free_vars(mu_term));
      TermPtr fv = mk_var(f, type_pure(1));
      TermPtr bound = mk_app(mu_term, fv);
      FormulaPtr c = search_matrix(cons.nf, fv, bound);
      return mk_quant(Formula::Kind::Forall, f, type_pure(1), c);
    };
    Signature esig = hsig;
    if (logic == Logic::Classical) {
      std::string s_name = fresh_name("s", used);
      used.insert(s_name);
      std::string u_name = fresh_name("u", used);
      used.insert(u_name);
      esig.declare({s_name, {type_pure(2)}, phit});
      std::vector<TypePtr> uparams{phit};
      for (const auto& t : xits) uparams.push_back(t);
      esig.declare({u_name, uparams, type_pure(2)});
      // (forall mu)[MU(mu) -> UT(s(mu))]
      std::string mu = fresh_name("mu", used);
      FormulaPtr ut_of_s = substitute(uniform.statement->f1, uniform.statement->name,
                                      mk_funsym(s_name, {mk_var(mu, type_pure(2))}));
      FormulaPtr first = mk_quant(Formula::Kind::Forall, mu, type_pure(2),
                                  mk_implies(mu_matrix(mk_var(mu, type_pure(2))), ut_of_s));
      // (forall Phi, Xi)[premises -> MU(u(Phi, Xi))]
      std::vector<TermPtr> uargs;
      uargs.push_back(mk_var(a_nf.st_existentials[0].first, phit));
      for (size_t i = 1; i < a_nf.st_existentials.size(); i++)
        uargs.push_back(mk_var(a_nf.st_existentials[i].first, a_nf.st_existentials[i].second));
      FormulaPtr second = mk_implies(a_nf.matrix, mu_matrix(mk_funsym(u_name, uargs)));
      for (size_t i = a_nf.st_existentials.size(); i-- > 0;)
        second = mk_quant(Formula::Kind::Forall, a_nf.st_existentials[i].first,
                          a_nf.st_existentials[i].second, second);
      add_stage("explicit_equivalence", mk_and(first, second));
      r.notes["explicit_terms"] =
          s_name + " is the template realizer; " + u_name +
          " abbreviates the max-collapsed extraction term of the forward direction";
    } else {
      std::string t_name = fresh_name("t", used);
      std::vector<TypePtr> tparams{phit};
      for (const auto& t : xits) tparams.push_back(t);
      tparams.push_back(type_pure(1));
      esig.declare({t_name, tparams, type_base()});
      std::string f = fresh_name("f", used);
      TermPtr fv = mk_var(f, type_pure(1));
      std::vector<TermPtr> targs;
      targs.push_back(mk_var(a_nf.st_existentials[0].first, phit));
      for (size_t i = 1; i < a_nf.st_existentials.size(); i++)
        targs.push_back(mk_var(a_nf.st_existentials[i].first, a_nf.st_existentials[i].second));
      targs.push_back(fv);
      FormulaPtr c = search_matrix(cons.nf, fv, mk_funsym(t_name, targs));
      FormulaPtr body = mk_implies(a_nf.matrix, c);
      body = mk_quant(Formula::Kind::Forall, f, type_pure(1), body);
      for (size_t i = a_nf.st_existentials.size(); i-- > 0;)
        body = mk_quant(Formula::Kind::Forall, a_nf.st_existentials[i].first,
                        a_nf.st_existentials[i].second, body);
      add_stage("explicit_pointwise", body);
    }
    r.sig.merge(esig);
  }

  r.sig.merge(hsig);
  r.sig.merge(ex.sig);
  r.extraction = std::move(ex);
  r.herbrandisation = std::move(herb);

  // golden comparisons
  if (opts.golden_dir) {
    bool all = true;
    for (const auto& g : golden_plan(r.principle, logic)) {
      std::string path = *opts.golden_dir + "/" + g.file + ".nsz";
      std::ifstream in(path);
      if (!in) {
        r.golden_files.emplace_back(g.file, Verdict::Fail);
        r.notes["golden:" + std::string(g.file)] = "missing file " + path;
        all = false;
        continue;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        ParsedFile pf = parse_file(buf.str());
        const Stage* stage = r.stage(g.stage);
        if (!stage) throw EngineError("stage " + std::string(g.stage) + " missing");
        bool ok = alpha_equal(pf.formula, stage->formula);
        r.golden_files.emplace_back(g.file, ok ? Verdict::Pass : Verdict::Fail);
        if (!ok) {
          all = false;
          r.notes["golden:" + std::string(g.file)] =
              "stage " + std::string(g.stage) + " differs from the transcription";
        }
      } catch (const EngineError& e) {
        r.golden_files.emplace_back(g.file, Verdict::Fail);
        r.notes["golden:" + std::string(g.file)] = e.what();
        all = false;
      }
    }
    r.verdicts["golden"] = all ? Verdict::Pass : Verdict::Fail;
  } else {
    r.verdicts["golden"] = Verdict::Skipped;
    r.notes["golden"] = "no golden directory given";
  }

  if (opts.with_soundness) {
    SoundnessBudget budget;
    budget.seed = opts.seed ? opts.seed : budget.seed;
    budget.pairs = 200;
    bool ok = true;
    for (RewriteRule rule :
         {RewriteRule::HGMPst, RewriteRule::HIPforallst, RewriteRule::HACint,
          RewriteRule::PrenexAndSt, RewriteRule::PrenexOrSt, RewriteRule::PrenexImpliesSt,
          RewriteRule::MarkovSt, RewriteRule::DropStAntecedent}) {
      SoundnessVerdict v = check_rule_soundness(rule, budget);
      ok = ok && v.status == SoundnessStatus::Pass;
    }
    r.verdicts["soundness"] = ok ? Verdict::Pass : Verdict::Fail;
  } else {
    r.verdicts["soundness"] = Verdict::Skipped;
    r.notes["soundness"] = "run model-check or pass --with-soundness";
  }

  r.sig.merge(r.trace.sig);
  r.timings_ms["total"] = ms_since(t_total);
  validate_report(r);
  return r;
}

void validate_report(const Report& r) {
  for (const char* key : {"golden", "round_trip", "soundness"})
    if (r.verdicts.find(key) == r.verdicts.end())
      throw EngineError(std::string("report is missing the ") + key + " verdict");
  for (const auto& st : r.stages) {
    Signature sig = r.sig;
    sig.merge(st.vars);
    std::string printed = print_formula(st.formula, sig);
    try {
      FormulaPtr back = parse_formula(printed, sig);
      if (!formula_equal(back, st.formula))
        throw EngineError("re-parse differs from the recorded AST");
    } catch (const EngineError& e) {
      throw EngineError("stage " + st.name + " failed validation: " + e.what() +
                        "\n  " + printed);
    }
  }
}

namespace {

nlohmann::ordered_json trace_json(const RuleTrace& trace) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  int n = 0;
  for (const auto& s : trace.steps) {
    nlohmann::ordered_json step;
    step["n"] = ++n;
    step["rule"] = rule_name(s.rule);
    std::string path = "/";
    for (size_t i = 0; i < s.path.size(); i++)
      path += (i ? "/" : "") + std::to_string(s.path[i]);
    step["at"] = path;
    step["fresh"] = s.fresh;
    step["after"] = print_formula(s.after, trace.sig);
    steps.push_back(std::move(step));
  }
  nlohmann::ordered_json out;
  out["initial"] = print_formula(trace.initial, trace.sig);
  out["steps"] = std::move(steps);
  return out;
}

}  // namespace

std::string report_to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["principle"] = r.principle;
  j["logic"] = logic_name(r.logic);
  j["seed"] = r.seed;
  nlohmann::ordered_json stages = nlohmann::ordered_json::array();
  for (const auto& st : r.stages) {
    Signature sig = r.sig;
    sig.merge(st.vars);
    nlohmann::ordered_json s;
    s["name"] = st.name;
    s["vars"] = print_signature(st.vars);
    s["formula"] = print_formula(st.formula, sig);
    stages.push_back(std::move(s));
  }
  j["stages"] = std::move(stages);
  j["signature"] = print_signature(r.sig);
  j["trace"] = trace_json(r.trace);
  if (r.extraction) {
    nlohmann::ordered_json e;
    TypeContext ctx;
    for (const auto& [n, ty] : r.extraction->universals) ctx[n] = ty;
    nlohmann::ordered_json witnesses = nlohmann::ordered_json::object();
    for (const auto& [n, t] : r.extraction->witnesses)
      witnesses[n] = print_term(t, ctx, r.extraction->sig);
    e["witnesses"] = std::move(witnesses);
    e["internal_sentence"] = print_formula(r.extraction->internal_sentence, r.extraction->sig);
    if (r.extraction->collapsed)
      e["collapsed"] = print_formula(*r.extraction->collapsed, r.extraction->sig);
    else
      e["collapsed"] = nullptr;
    e["functionals"] = r.extraction->functionals;
    j["extraction"] = std::move(e);
  } else {
    j["extraction"] = nullptr;
  }
  if (r.herbrandisation) {
    nlohmann::ordered_json h;
    h["i"] = r.herbrandisation->i_name;
    h["o"] = r.herbrandisation->o_name;
    h["body"] = print_formula(r.herbrandisation->body, r.herbrandisation->sig);
    h["vacuous_o"] = r.herbrandisation->vacuous_o;
    j["herbrandisation"] = std::move(h);
  } else {
    j["herbrandisation"] = nullptr;
  }
  nlohmann::ordered_json verdicts;
  for (const auto& [k, v] : r.verdicts) verdicts[k] = verdict_name(v);
  nlohmann::ordered_json golden = nlohmann::ordered_json::array();
  for (const auto& [file, v] : r.golden_files) {
    nlohmann::ordered_json g;
    g["file"] = file;
    g["verdict"] = verdict_name(v);
    golden.push_back(std::move(g));
  }
  verdicts["golden_files"] = std::move(golden);
  j["verdicts"] = std::move(verdicts);
  j["notes"] = r.notes;
  // wall-clock excluded from the canonical serialization
  nlohmann::ordered_json timings;
  for (const auto& [k, v] : r.timings_ms) timings[k] = 0;
  j["timings"] = std::move(timings);
  return j.dump(2) + "\n";
}

std::string report_to_text(const Report& r) {
  std::ostringstream out;
  out << "principle: " << r.principle << "\n";
  out << "logic: " << logic_name(r.logic) << "\n";
  out << "seed: " << r.seed << "\n";
  for (const auto& st : r.stages) {
    Signature sig = r.sig;
    sig.merge(st.vars);
    out << "\n[" << st.name << "]\n" << print_formula(st.formula, sig) << "\n";
  }
  out << "\n[trace]\n" << trace_to_text(r.trace);
  if (r.extraction) {
    out << "\n[witnesses]\n";
    TypeContext ctx;
    for (const auto& [n, ty] : r.extraction->universals) ctx[n] = ty;
    for (const auto& [n, t] : r.extraction->witnesses)
      out << n << " in " << print_term(t, ctx, r.extraction->sig) << "\n";
  }
  out << "\n[verdicts]\n";
  for (const auto& [k, v] : r.verdicts) out << k << ": " << verdict_name(v) << "\n";
  for (const auto& [file, v] : r.golden_files)
    out << "golden " << file << ": " << verdict_name(v) << "\n";
  for (const auto& [k, n] : r.notes) out << "note " << k << ": " << n << "\n";
  out << "\n[timings]\n";
  for (const auto& [k, v] : r.timings_ms) out << k << ": " << v << " ms\n";
  return out.str();
}

std::string extraction_to_json(const ExtractionResult& ex) {
  nlohmann::ordered_json j;
  j["signature"] = print_signature(ex.sig);
  nlohmann::ordered_json universals = nlohmann::ordered_json::array();
  for (const auto& [n, ty] : ex.universals) {
    nlohmann::ordered_json u;
    u["name"] = n;
    u["type"] = show_type(ty);
    universals.push_back(std::move(u));
  }
  j["universals"] = std::move(universals);
  TypeContext ctx;
  for (const auto& [n, ty] : ex.universals) ctx[n] = ty;
  nlohmann::ordered_json witnesses = nlohmann::ordered_json::object();
  for (const auto& [n, t] : ex.witnesses) witnesses[n] = print_term(t, ctx, ex.sig);
  j["witnesses"] = std::move(witnesses);
  j["internal_sentence"] = print_formula(ex.internal_sentence, ex.sig);
  if (ex.collapsed)
    j["collapsed"] = print_formula(*ex.collapsed, ex.sig);
  else
    j["collapsed"] = nullptr;
  j["functionals"] = ex.functionals;
  j["vacuous"] = ex.vacuous;
  return j.dump(2) + "\n";
}

ExtractionResult extraction_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ExtractionResult ex;
  ex.sig = parse_signature(j.at("signature").get<std::string>());
  for (const auto& u : j.at("universals"))
    ex.universals.emplace_back(u.at("name").get<std::string>(),
                               parse_type(u.at("type").get<std::string>()));
  TypeContext ctx;
  for (const auto& [n, ty] : ex.universals) ctx[n] = ty;
  for (const auto& [key, val] : j.at("witnesses").items())
    ex.witnesses.emplace_back(key, parse_term(val.get<std::string>(), ex.sig, ctx));
  ex.internal_sentence = parse_formula(j.at("internal_sentence").get<std::string>(), ex.sig);
  if (!j.at("collapsed").is_null())
    ex.collapsed = parse_formula(j.at("collapsed").get<std::string>(), ex.sig);
  for (const auto& f : j.at("functionals")) ex.functionals.push_back(f.get<std::string>());
  return ex;
}

}  // namespace nszoo
