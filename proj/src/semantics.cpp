#include "nszoo/semantics.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "nszoo/parse.hpp"
#include "nszoo/print.hpp"

namespace nszoo {

namespace {

long checked_pow(long base, long exp, long cap) {
  long out = 1;
  for (long i = 0; i < exp; i++) {
    if (base != 0 && out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

}  // namespace

long TwoLevelModel::dom_size(const TypePtr& t) const {
  switch (t->kind) {
    case Type::Kind::Base:
      return n;
    case Type::Kind::Prod: {
      long a = dom_size(t->a), b = dom_size(t->b);
      if (a > max_dom / b) throw EngineError("type beyond bound: " + show_type(t));
      return a * b;
    }
    case Type::Kind::Seq: {
      long e = dom_size(t->a);
      long total = 0, p = 1;
      for (int l = 0; l <= seq_cap; l++) {
        total += p;
        if (total > max_dom) throw EngineError("type beyond bound: " + show_type(t));
        if (e != 0 && p > max_dom / e)
          p = max_dom + 1;
        else
          p *= e;
      }
      return total;
    }
    case Type::Kind::Arrow: {
      long a = dom_size(t->a), b = dom_size(t->b);
      long out = checked_pow(b, a, max_dom);
      if (out > max_dom) throw EngineError("type beyond bound: " + show_type(t));
      return out;
    }
  }
  throw EngineError("malformed type");
}

std::vector<long> TwoLevelModel::seq_entries(const TypePtr& elem, long idx) const {
  long e = dom_size(elem);
  long offset = 0, p = 1;
  for (int l = 0; l <= seq_cap; l++) {
    if (idx < offset + p) {
      long r = idx - offset;
      std::vector<long> out(l);
      for (int j = l - 1; j >= 0; j--) {
        out[j] = r % e;
        r /= e;
      }
      return out;
    }
    offset += p;
    p *= e;
  }
  throw EngineError("sequence index out of range");
}

long TwoLevelModel::seq_index(const TypePtr& elem, const std::vector<long>& entries) const {
  if (static_cast<int>(entries.size()) > seq_cap)
    throw EngineError("sequence literal longer than the model cap");
  long e = dom_size(elem);
  long offset = 0, p = 1;
  for (size_t l = 0; l < entries.size(); l++) {
    offset += p;
    p *= e;
  }
  long r = 0;
  for (long v : entries) r = r * e + v;
  return offset + r;
}

long TwoLevelModel::apply(const TypePtr& fn_type, long fn, long arg) const {
  long b = dom_size(fn_type->b);
  long a = dom_size(fn_type->a);
  // function index encodes the table big-endian over the argument domain
  long pos = a - 1 - arg;
  long div = 1;
  for (long i = 0; i < pos; i++) div *= b;
  return (fn / div) % b;
}

bool TwoLevelModel::standard(const TypePtr& t, long idx) const {
  switch (t->kind) {
    case Type::Kind::Base:
      return idx < cutoff;
    case Type::Kind::Prod: {
      long b = dom_size(t->b);
      return standard(t->a, idx / b) && standard(t->b, idx % b);
    }
    case Type::Kind::Seq: {
      for (long e : seq_entries(t->a, idx))
        if (!standard(t->a, e)) return false;
      return true;
    }
    case Type::Kind::Arrow: {
      long a = dom_size(t->a);
      for (long x = 0; x < a; x++)
        if (standard(t->a, x) && !standard(t->b, apply(t, idx, x))) return false;
      return true;
    }
  }
  return false;
}

std::string TwoLevelModel::describe() const {
  std::ostringstream out;
  out << "domain size " << n << ", cutoff " << cutoff << ", sequence cap " << seq_cap << "\n";
  out << "standard numbers: {";
  for (int i = 0; i < cutoff; i++) out << (i ? "," : "") << i;
  out << "}\n";
  for (const auto& [name, table] : interps) {
    out << "sym " << name << " table:";
    for (long v : table) out << " " << v;
    out << "\n";
  }
  return out.str();
}

namespace {

struct Evaluator {
  const TwoLevelModel& m;
  EvalBudget& budget;

  void tick() {
    if (--budget.steps < 0) throw EngineError("evaluation budget exhausted");
  }

  TypePtr type_of(const TermPtr& t, const Env& env) {
    // types are cheap to recompute structurally at this scale
    switch (t->kind) {
      case Term::Kind::Var: {
        auto it = env.find(t->name);
        if (it == env.end()) throw EngineError("unbound variable " + t->name);
        return it->second.first;
      }
      case Term::Kind::Zero:
      case Term::Kind::Succ:
      case Term::Kind::Len:
      case Term::Kind::Max0:
        return type_base();
      case Term::Kind::App:
        return type_of(t->args[0], env)->b;
      case Term::Kind::Pair:
        return type_prod(type_of(t->args[0], env), type_of(t->args[1], env));
      case Term::Kind::Proj1:
        return type_of(t->args[0], env)->a;
      case Term::Kind::Proj2:
        return type_of(t->args[0], env)->b;
      case Term::Kind::SeqLit:
        return type_seq(t->type);
      case Term::Kind::Idx:
        return type_of(t->args[0], env)->a;
      case Term::Kind::FunSym:
        return m.sig.get(t->name).result;
    }
    throw EngineError("malformed term");
  }

  long term(const TermPtr& t, const Env& env) {
    tick();
    switch (t->kind) {
      case Term::Kind::Var: {
        auto it = env.find(t->name);
        if (it == env.end()) throw EngineError("unbound variable " + t->name);
        return it->second.second;
      }
      case Term::Kind::Zero:
        return 0;
      case Term::Kind::Succ: {
        long v = term(t->args[0], env);
        return std::min<long>(v + 1, m.n - 1);  // saturating successor
      }
      case Term::Kind::App: {
        TypePtr ft = type_of(t->args[0], env);
        return m.apply(ft, term(t->args[0], env), term(t->args[1], env));
      }
      case Term::Kind::Pair: {
        TypePtr bt = type_of(t->args[1], env);
        return term(t->args[0], env) * m.dom_size(bt) + term(t->args[1], env);
      }
      case Term::Kind::Proj1: {
        TypePtr pt = type_of(t->args[0], env);
        return term(t->args[0], env) / m.dom_size(pt->b);
      }
      case Term::Kind::Proj2: {
        TypePtr pt = type_of(t->args[0], env);
        return term(t->args[0], env) % m.dom_size(pt->b);
      }
      case Term::Kind::SeqLit: {
        std::vector<long> entries;
        for (const auto& e : t->args) entries.push_back(term(e, env));
        return m.seq_index(t->type, entries);
      }
      case Term::Kind::Len: {
        TypePtr st = type_of(t->args[0], env);
        return std::min<long>(
            static_cast<long>(m.seq_entries(st->a, term(t->args[0], env)).size()), m.n - 1);
      }
      case Term::Kind::Idx: {
        TypePtr st = type_of(t->args[0], env);
        auto entries = m.seq_entries(st->a, term(t->args[0], env));
        long i = term(t->args[1], env);
        if (entries.empty()) return 0;  // default element
        if (i >= static_cast<long>(entries.size())) i = static_cast<long>(entries.size()) - 1;
        return entries[i];
      }
      case Term::Kind::Max0: {
        auto entries = m.seq_entries(type_base(), term(t->args[0], env));
        long best = 0;
        for (long e : entries) best = std::max(best, e);
        return best;
      }
      case Term::Kind::FunSym: {
        auto it = m.interps.find(t->name);
        if (it == m.interps.end())
          throw EngineError("symbol " + t->name + " has no interpretation");
        const SymbolDecl& d = m.sig.get(t->name);
        long row = 0;
        for (size_t i = 0; i < t->args.size(); i++)
          row = row * m.dom_size(d.params[i]) + term(t->args[i], env);
        return it->second.at(row);
      }
    }
    throw EngineError("malformed term");
  }

  bool formula(const FormulaPtr& f, Env& env) {
    tick();
    switch (f->kind) {
      case Formula::Kind::Eq:
        return term(f->t1, env) == term(f->t2, env);
      case Formula::Kind::Le:
        return term(f->t1, env) <= term(f->t2, env);
      case Formula::Kind::Pred: {
        auto it = m.interps.find(f->name);
        if (it == m.interps.end())
          throw EngineError("relation " + f->name + " has no interpretation");
        const SymbolDecl& d = m.sig.get(f->name);
        long row = 0;
        for (size_t i = 0; i < f->args.size(); i++)
          row = row * m.dom_size(d.params[i]) + term(f->args[i], env);
        // relations hold where their characteristic function is zero
        return it->second.at(row) == 0;
      }
      case Formula::Kind::St: {
        TypePtr ty = type_of(f->t1, env);
        return m.standard(ty, term(f->t1, env));
      }
      case Formula::Kind::Not:
        return !formula(f->f1, env);
      case Formula::Kind::And:
        return formula(f->f1, env) && formula(f->f2, env);
      case Formula::Kind::Or:
        return formula(f->f1, env) || formula(f->f2, env);
      case Formula::Kind::Implies:
        return !formula(f->f1, env) || formula(f->f2, env);
      case Formula::Kind::Forall:
      case Formula::Kind::Exists:
      case Formula::Kind::ForallSt:
      case Formula::Kind::ExistsSt: {
        bool st_only =
            f->kind == Formula::Kind::ForallSt || f->kind == Formula::Kind::ExistsSt;
        bool universal =
            f->kind == Formula::Kind::Forall || f->kind == Formula::Kind::ForallSt;
        long size = m.dom_size(f->var_type);
        for (long v = 0; v < size; v++) {
          if (st_only && !m.standard(f->var_type, v)) continue;
          env[f->name] = {f->var_type, v};
          bool inner = formula(f->f1, env);
          env.erase(f->name);
          if (universal && !inner) return false;
          if (!universal && inner) return true;
        }
        return universal;
      }
      case Formula::Kind::BoundedForallLe:
      case Formula::Kind::BoundedExistsLe: {
        bool universal = f->kind == Formula::Kind::BoundedForallLe;
        long bound = std::min<long>(term(f->t1, env), m.n - 1);
        for (long v = 0; v <= bound; v++) {
          env[f->name] = {type_base(), v};
          bool inner = formula(f->f1, env);
          env.erase(f->name);
          if (universal && !inner) return false;
          if (!universal && inner) return true;
        }
        return universal;
      }
      case Formula::Kind::BoundedForallIn:
      case Formula::Kind::BoundedExistsIn: {
        bool universal = f->kind == Formula::Kind::BoundedForallIn;
        auto entries = m.seq_entries(f->var_type, term(f->t1, env));
        for (long v : entries) {
          env[f->name] = {f->var_type, v};
          bool inner = formula(f->f1, env);
          env.erase(f->name);
          if (universal && !inner) return false;
          if (!universal && inner) return true;
        }
        return universal;
      }
    }
    throw EngineError("malformed formula");
  }
};

}  // namespace

long eval_term(const TermPtr& t, const TwoLevelModel& m, const Env& env, EvalBudget& budget) {
  Evaluator ev{m, budget};
  return ev.term(t, env);
}

bool eval(const FormulaPtr& f, const TwoLevelModel& m, const Env& env, EvalBudget& budget) {
  Evaluator ev{m, budget};
  Env e = env;
  return ev.formula(f, e);
}

bool eval(const FormulaPtr& f, const TwoLevelModel& m) {
  EvalBudget budget;
  return eval(f, m, {}, budget);
}

namespace {

// enumerates or samples standard-preserving tables for one symbol
std::vector<std::vector<long>> symbol_tables(const TwoLevelModel& shell, const SymbolDecl& d,
                                             int want, std::mt19937_64& rng) {
  long rows = 1;
  for (const auto& p : d.params) rows *= shell.dom_size(p);
  long vals = shell.dom_size(d.result);
  // decode a row index into argument indices to test standardness
  auto row_args = [&](long row) {
    std::vector<long> args(d.params.size());
    for (int i = static_cast<int>(d.params.size()) - 1; i >= 0; i--) {
      long sz = shell.dom_size(d.params[i]);
      args[i] = row % sz;
      row /= sz;
    }
    return args;
  };
  auto std_row = [&](long row) {
    auto args = row_args(row);
    for (size_t i = 0; i < args.size(); i++)
      if (!shell.standard(d.params[i], args[i])) return false;
    return true;
  };
  std::vector<long> std_vals;
  for (long v = 0; v < vals; v++)
    if (shell.standard(d.result, v)) std_vals.push_back(v);
  if (std_vals.empty()) return {};

  std::vector<std::vector<long>> out;
  double total = std::pow(static_cast<double>(vals), static_cast<double>(rows));
  if (total <= 4096) {
    std::vector<long> table(rows, 0);
    while (true) {
      bool ok = true;
      for (long r = 0; r < rows && ok; r++)
        if (std_row(r) && !shell.standard(d.result, table[r])) ok = false;
      if (ok) out.push_back(table);
      long i = rows - 1;
      while (i >= 0 && table[i] == vals - 1) table[i--] = 0;
      if (i < 0) break;
      table[i]++;
    }
  } else {
    for (int k = 0; k < want; k++) {
      std::vector<long> table(rows);
      for (long r = 0; r < rows; r++) {
        if (std_row(r))
          table[r] = std_vals[rng() % std_vals.size()];
        else
          table[r] = static_cast<long>(rng() % vals);
      }
      out.push_back(table);
    }
  }
  return out;
}

}  // namespace

std::vector<TwoLevelModel> enumerate_models(const Signature& sig, int n, int level_bound,
                                            const ModelBudget& budget) {
  if (n > 4) throw EngineError("enumerate_models: domain size bound exceeded (max 4)");
  if (n < 1) throw EngineError("enumerate_models: empty domain");
  if (level_bound > 2) throw EngineError("enumerate_models: type level bound exceeded (max 2)");
  std::mt19937_64 rng(budget.seed);
  std::vector<TwoLevelModel> out;
  int cells = n * n;
  int quota = std::max(1, budget.max_models / cells);
  for (int cutoff = 1; cutoff <= n; cutoff++) {
    for (int cap = 1; cap <= n; cap++) {
      TwoLevelModel shell;
      shell.n = n;
      shell.cutoff = cutoff;
      shell.seq_cap = cap;
      shell.level_bound = level_bound;
      shell.sig = sig;
      std::vector<std::map<std::string, std::vector<long>>> interp_sets{{}};
      for (const auto& [name, d] : sig.symbols()) {
        auto tables = symbol_tables(shell, d, quota, rng);
        std::vector<std::map<std::string, std::vector<long>>> next;
        for (const auto& base : interp_sets)
          for (const auto& t : tables) {
            auto m = base;
            m[name] = t;
            next.push_back(std::move(m));
          }
        interp_sets = std::move(next);
        if (interp_sets.size() > 1024) interp_sets.resize(1024);
      }
      std::shuffle(interp_sets.begin(), interp_sets.end(), rng);
      int taken = 0;
      for (auto& interp : interp_sets) {
        if (taken++ >= quota) break;
        TwoLevelModel m = shell;
        m.interps = std::move(interp);
        out.push_back(std::move(m));
      }
    }
  }
  if (static_cast<int>(out.size()) > budget.max_models) out.resize(budget.max_models);
  return out;
}

namespace {

// schematic signature for rule instances
const char* kSchemaSig = "sym p : 0 -> 0\nsym q : 0 x 0 -> 0\n";

struct InstanceGen {
  std::mt19937_64 rng;
  Signature sig;

  explicit InstanceGen(std::uint64_t seed) : rng(seed), sig(parse_signature(kSchemaSig)) {}

  TermPtr rand_term(const std::vector<std::string>& vars, int depth) {
    switch (rng() % (depth > 0 ? 3 : 2)) {
      case 0:
        if (!vars.empty()) return mk_var(vars[rng() % vars.size()], type_base());
        return mk_numeral(static_cast<int>(rng() % 2));
      case 1:
        return mk_numeral(static_cast<int>(rng() % 2));
      default:
        return mk_succ(rand_term(vars, depth - 1));
    }
  }

  // internal matrix over the given type-0 variables
  FormulaPtr rand_matrix(const std::vector<std::string>& vars, int depth) {
    switch (rng() % (depth > 0 ? 7 : 4)) {
      case 0:
        return mk_pred("p", {rand_term(vars, 1)});
      case 1:
        return mk_pred("q", {rand_term(vars, 1), rand_term(vars, 1)});
      case 2:
        return mk_eq(rand_term(vars, 1), rand_term(vars, 1));
      case 3:
        return mk_le(rand_term(vars, 1), rand_term(vars, 1));
      case 4:
        return mk_not(rand_matrix(vars, depth - 1));
      case 5:
        return mk_and(rand_matrix(vars, depth - 1), rand_matrix(vars, depth - 1));
      default:
        return mk_implies(rand_matrix(vars, depth - 1), rand_matrix(vars, depth - 1));
    }
  }

  // a possibly-external formula (may mention st and st-quantifiers)
  FormulaPtr rand_external(const std::vector<std::string>& vars, int depth) {
    switch (rng() % (depth > 0 ? 5 : 3)) {
      case 0:
      case 1:
        return rand_matrix(vars, depth);
      case 2:
        if (!vars.empty()) return mk_st(mk_var(vars[rng() % vars.size()], type_base()));
        return rand_matrix(vars, depth);
      case 3: {
        auto inner = vars;
        inner.push_back("w0");
        return mk_quant(Formula::Kind::ExistsSt, "w0", type_base(),
                        rand_external(inner, depth - 1));
      }
      default:
        return mk_and(rand_external(vars, depth - 1), rand_external(vars, depth - 1));
    }
  }

  int last_min_cap = 1;  // sequence cap the models need for the last instance
  Path last_path;        // where the rule applies within the instance

  // builds one applicable instance of the rule together with the position the
  // rule is applied at
  FormulaPtr instance(RewriteRule rule) {
    last_min_cap = 1;
    last_path = {};
    switch (rule) {
      case RewriteRule::PrenexAndSt:
      case RewriteRule::PrenexOrSt: {
        bool is_and = rule == RewriteRule::PrenexAndSt;
        FormulaPtr quant =
            mk_quant(rng() % 2 ? Formula::Kind::ForallSt : Formula::Kind::ExistsSt, "x",
                     type_base(), rand_matrix({"x"}, 2));
        FormulaPtr other = rand_matrix({}, 2);
        FormulaPtr l = rng() % 2 ? quant : other;
        FormulaPtr r = l.get() == quant.get() ? other : quant;
        return is_and ? mk_and(l, r) : mk_or(l, r);
      }
      case RewriteRule::PrenexImpliesSt: {
        switch (rng() % 4) {
          case 0:
            return mk_implies(mk_quant(Formula::Kind::ExistsSt, "x", type_base(),
                                       rand_matrix({"x"}, 2)),
                              rand_matrix({}, 2));
          case 1:
            return mk_implies(rand_matrix({}, 2),
                              mk_quant(Formula::Kind::ForallSt, "y", type_base(),
                                       rand_matrix({"y"}, 2)));
          case 2:
            return mk_implies(rand_matrix({}, 2),
                              mk_quant(Formula::Kind::ExistsSt, "y", type_base(),
                                       rand_matrix({"y"}, 2)));
          default:
            return mk_implies(mk_quant(Formula::Kind::ForallSt, "x", type_base(),
                                       rand_matrix({"x"}, 2)),
                              rand_matrix({}, 2));
        }
      }
      case RewriteRule::DoubleNegSt:
        return mk_not(mk_not(rand_external({}, 2)));
      case RewriteRule::Idealisation: {
        // (forall-st x:0^*)(exists y:0)(forall z in x) phi(z,y)
        FormulaPtr phi = rand_matrix({"z", "y"}, 2);
        return mk_quant(
            Formula::Kind::ForallSt, "x", type_seq(type_base()),
            mk_quant(Formula::Kind::Exists, "y", type_base(),
                     mk_bounded(Formula::Kind::BoundedForallIn, "z", type_base(),
                                mk_var("x", type_seq(type_base())), phi)));
      }
      case RewriteRule::HACint:
        return mk_quant(Formula::Kind::ForallSt, "x", type_base(),
                        mk_quant(Formula::Kind::ExistsSt, "y", type_base(),
                                 rand_matrix({"x", "y"}, 2)));
      case RewriteRule::HGMPst: {
        FormulaPtr psi = rand_matrix({}, 2);
        if (rng() % 2) {
          // a two-variable block needs sequences long enough to list both
          last_min_cap = 2;
          FormulaPtr c1 = mk_quant(Formula::Kind::ForallSt, "x", type_base(),
                                   mk_quant(Formula::Kind::ForallSt, "y", type_base(),
                                            rand_matrix({"x", "y"}, 1)));
          FormulaPtr c2 = mk_quant(Formula::Kind::ForallSt, "z", type_base(),
                                   rand_matrix({"z"}, 1));
          return mk_implies(mk_and(c1, c2), psi);
        }
        return mk_implies(
            mk_quant(Formula::Kind::ForallSt, "x", type_base(), rand_matrix({"x"}, 2)), psi);
      }
      case RewriteRule::HIPforallst: {
        FormulaPtr ante =
            mk_quant(Formula::Kind::ForallSt, "x", type_base(), rand_matrix({"x"}, 2));
        FormulaPtr cons = mk_quant(Formula::Kind::ExistsSt, "y", type_base(),
                                   rand_external({"y"}, 2));
        return mk_implies(ante, cons);
      }
      case RewriteRule::DropStAntecedent:
        last_path = {0};
        return mk_implies(
            mk_quant(Formula::Kind::ForallSt, "x", type_base(), rand_matrix({"x"}, 2)),
            rand_matrix({}, 2));
      case RewriteRule::MarkovSt:
        return mk_not(
            mk_quant(Formula::Kind::ForallSt, "x", type_base(), rand_matrix({"x"}, 2)));
      case RewriteRule::SkolemizeAntecedent: {
        FormulaPtr clause = mk_quant(
            Formula::Kind::ForallSt, "z", type_base(),
            mk_quant(Formula::Kind::ExistsSt, "N", type_base(), rand_matrix({"z", "N"}, 1)));
        FormulaPtr other = rand_matrix({}, 1);
        return mk_implies(mk_and(other, clause), rand_matrix({}, 2));
      }
      case RewriteRule::BoundSearchClosure: {
        FormulaPtr chi = rand_matrix({}, 1);
        if (rng() % 2) {
          FormulaPtr psi = rand_matrix({"y"}, 1);
          return mk_quant(Formula::Kind::ExistsSt, "s", type_seq(type_base()),
                          mk_implies(chi, mk_bounded(Formula::Kind::BoundedExistsIn, "y",
                                                     type_base(),
                                                     mk_var("s", type_seq(type_base())), psi)));
        }
        FormulaPtr psi = rand_matrix({"m"}, 1);
        return mk_quant(Formula::Kind::ExistsSt, "m", type_base(), mk_implies(chi, psi));
      }
      case RewriteRule::SwapStPrefix:
        return mk_quant(Formula::Kind::ExistsSt, "a", type_base(),
                        mk_quant(Formula::Kind::ForallSt, "b", type_base(),
                                 rand_matrix({"a", "b"}, 2)));
      default:
        throw EngineError("no instance generator for " + rule_name(rule));
    }
  }
};

struct DirectionCheck {
  bool forward;  // check lhs -> rhs
  bool backward;
};

DirectionCheck direction_of(RewriteRule r, const FormulaPtr&) {
  switch (rule_direction(r)) {
    case RuleDirection::Equivalence:
      return {true, true};
    default:
      return {true, false};
  }
}

}  // namespace

SoundnessVerdict check_rule_soundness(RewriteRule rule, const SoundnessBudget& budget) {
  SoundnessVerdict v;
  v.seed = budget.seed;
  switch (rule) {
    case RewriteRule::ExpandApprox:
    case RewriteRule::ExpandExactEq:
    case RewriteRule::ExpandStdExt:
      v.status = SoundnessStatus::Skipped;
      v.note = "definitional expansion; validated by construction and the erasure law";
      return v;
    case RewriteRule::TupleCode:
      v.status = SoundnessStatus::Skipped;
      v.note = "coding convention: decoders are fresh symbols naming tuple components";
      return v;
    case RewriteRule::TransferComplement:
      v.status = SoundnessStatus::Skipped;
      v.note = "polarity convention: instance substitution f -> 1-f, a closed-term "
               "closure property not guaranteed by sampled finite standardness sets";
      return v;
    default:
      break;
  }

  InstanceGen gen(budget.seed);
  bool idealisation = rule == RewriteRule::Idealisation;
  std::string cex;
  long pairs = 0;
  // per-rule model slate: HACint quantifies over function spaces, so its
  // instances run at small sequence caps
  std::vector<TwoLevelModel> models;
  {
    ModelBudget mb;
    mb.seed = budget.seed;
    for (int n = 2; n <= budget.max_n; n++) {
      for (auto& m : enumerate_models(gen.sig, n, 1, mb)) models.push_back(std::move(m));
    }
  }
  if (rule == RewriteRule::HACint) {
    for (auto& m : models) m.seq_cap = 1;
  }

  long target = idealisation ? budget.pairs * 4 : budget.pairs;
  while (pairs < target) {
    FormulaPtr lhs = gen.instance(rule);
    int min_cap = gen.last_min_cap;
    Path at = gen.last_path;
    RuleContext ctx = RuleContext::from(lhs, gen.sig, Logic::Classical);
    FormulaPtr rhs;
    try {
      rhs = apply_rule(rule, lhs, at, ctx);
    } catch (const EngineError&) {
      continue;  // random instance missed a side condition; draw again
    }
    DirectionCheck dir = direction_of(rule, lhs);
    for (const auto& m : models) {
      if (pairs >= target) break;
      if (m.seq_cap < min_cap) continue;
      EvalBudget eb;
      bool vl, vr;
      try {
        vl = eval(lhs, m, {}, eb);
        vr = eval(rhs, m, {}, eb);
      } catch (const EngineError&) {
        continue;  // beyond this model's bounds
      }
      pairs++;
      bool bad = (dir.forward && vl && !vr) || (dir.backward && vr && !vl);
      if (bad) {
        std::ostringstream dump;
        dump << "rule " << rule_name(rule) << "\n"
             << m.describe() << "before: " << print_formula(lhs, m.sig) << " = " << vl << "\n"
             << "after:  " << print_formula(rhs, m.sig) << " = " << vr << "\n";
        cex = dump.str();
        if (idealisation) {
          v.status = SoundnessStatus::ExpectedCounterexample;
          v.pairs_checked = pairs;
          v.counterexample = cex;
          v.note = "the idealisation axiom needs genuinely infinite structures; a finite "
                   "refutation is the documented expected outcome";
          return v;
        }
        v.status = SoundnessStatus::Violated;
        v.pairs_checked = pairs;
        v.counterexample = cex;
        return v;
      }
    }
  }
  if (idealisation) {
    v.status = SoundnessStatus::Violated;
    v.pairs_checked = pairs;
    v.note = "no finite counterexample found, which contradicts the documented expectation";
    return v;
  }
  v.status = SoundnessStatus::Pass;
  v.pairs_checked = pairs;
  return v;
}

ExtractionVerdict check_extraction(const ExtractionResult& result, int n,
                                   bool corrupt_witness) {
  ExtractionVerdict v;
  v.seed = 0;
  TwoLevelModel m;
  m.n = n;
  m.cutoff = n;  // the toy check runs at full standardness
  m.seq_cap = n;
  m.sig = result.sig;
  // canonical interpretation: each extraction functional returns the full
  // candidate list of its element domain, independent of its arguments
  for (const auto& fname : result.functionals) {
    const SymbolDecl& d = m.sig.get(fname);
    TypePtr elem = d.result->a;
    long edom = m.dom_size(elem);
    std::vector<long> all;
    for (long i = 0; i < edom; i++) all.push_back(i);
    if (corrupt_witness && !all.empty()) all.pop_back();
    long rows = 1;
    for (const auto& p : d.params) rows *= m.dom_size(p);
    long idx = m.seq_index(elem, all);
    m.interps[fname] = std::vector<long>(rows, idx);
  }
  // remaining symbols (if any) get all-zero tables
  for (const auto& [name, d] : m.sig.symbols()) {
    if (m.interps.count(name)) continue;
    long rows = 1;
    for (const auto& p : d.params) rows *= m.dom_size(p);
    m.interps[name] = std::vector<long>(rows, 0);
  }
  EvalBudget eb;
  bool ok = eval(result.internal_sentence, m, {}, eb);
  if (ok && result.collapsed) ok = eval(*result.collapsed, m, {}, eb);
  v.models_checked = 1;
  v.pass = ok;
  if (!ok)
    v.counterexample = m.describe() + "sentence: " +
                       print_formula(result.internal_sentence, m.sig) + "\n";
  return v;
}

}  // namespace nszoo
