// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Time limits are part of the criteria and asserted here.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "nszoo/catalog.hpp"
#include "nszoo/parse.hpp"
#include "nszoo/print.hpp"
#include "nszoo/report.hpp"
#include "nszoo/semantics.hpp"

using namespace nszoo;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void line(const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS " : "FAIL ") << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  if (!ok) failures++;
}

long run_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

FormulaPtr load_golden(const std::string& file) {
  std::ifstream in("golden/" + file + ".nsz");
  if (!in) throw EngineError("missing golden/" + file + ".nsz");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_file(buf.str()).formula;
}

void criterion_transfer_normal_form() {
  auto t0 = Clock::now();
  const Principle& trans = get_principle("PI01-TRANS");
  NormalizeResult r = normalize(trans.statement, Logic::Classical, trans.signature);
  bool ok = alpha_equal(r.nf.to_formula(), load_golden("curk"));
  long ms = run_ms(t0);
  line("transfer normal form matches the frozen search form",
       ok && ms < 1000, std::to_string(ms) + " ms, limit 1000");
}

void criterion_classical_pipeline() {
  auto t0 = Clock::now();
  PipelineOptions opts;
  opts.golden_dir = "golden";
  Report r = pipeline("Pi01G", Logic::Classical, opts);
  bool structure_ok = false;
  for (const auto& [file, v] : r.golden_files)
    if (file == "structure") structure_ok = v == Verdict::Pass;
  auto nf = is_normal_form(r.stage("normal_form")->formula);
  bool internal_ok = nf && is_internal(nf->matrix);
  // collapsed sentence ends in the search bounded by max0 of the candidates
  bool collapse_ok = false;
  if (const Stage* st = r.stage("collapsed")) {
    FormulaPtr cur = st->formula;
    int foralls = 0;
    while (cur->kind == Formula::Kind::Forall) {
      foralls++;
      cur = cur->f1;
    }
    if (foralls == 3 && cur->kind == Formula::Kind::Implies &&
        cur->f2->kind == Formula::Kind::Implies &&
        cur->f2->f2->kind == Formula::Kind::BoundedExistsLe &&
        cur->f2->f2->t1->kind == Term::Kind::Max0)
      collapse_ok = true;
  }
  long ms = run_ms(t0);
  line("classical pipeline reaches the coded normal form",
       structure_ok && internal_ok && ms < 5000, std::to_string(ms) + " ms, limit 5000");
  line("classical extraction collapses to the search-operator shape", collapse_ok);
}

void criterion_intuitionistic_pipeline() {
  auto t0 = Clock::now();
  PipelineOptions opts;
  opts.golden_dir = "golden";
  Report r = pipeline("Pi01G", Logic::Intuitionistic, opts);
  bool bling_ok = false;
  for (const auto& [file, v] : r.golden_files)
    if (file == "bling") bling_ok = v == Verdict::Pass;
  auto nf = is_normal_form(r.stage("normal_form")->formula);
  bool herbrand_ok = false;
  if (nf && nf->st_existentials.size() == 3) {
    herbrand_ok = type_equal(nf->st_existentials[0].second, parse_type("0^*")) &&
                  type_equal(nf->st_existentials[1].second, parse_type("1^*")) &&
                  type_equal(nf->st_existentials[2].second, parse_type("1^*"));
  }
  long ms = run_ms(t0);
  line("intuitionistic pipeline reaches the herbrandized normal form",
       bling_ok && ms < 5000, std::to_string(ms) + " ms, limit 5000");
  line("herbrand existentials are exactly 0^*, 1^*, 1^*", herbrand_ok);
}

void criterion_meta_reversal() {
  auto t0 = Clock::now();
  int passed = 0;
  const Principle& trans = get_principle("PI01-TRANS");
  for (const auto& name : nine_principles()) {
    try {
      Principle up = plus_version(uniformize(get_principle(name)));
      Signature sig = up.signature;
      sig.merge(trans.signature);
      NormalForm a_nf = uniform_plus_exists_nf(up.statement, sig);
      NormalizeResult cons = normalize(trans.statement, Logic::Classical, trans.signature);
      Herbrandisation h = herbrandise(a_nf, cons.nf, sig);
      if (alpha_equal(meta_reverse(h), mk_implies(up.statement, trans.statement))) passed++;
    } catch (const EngineError& e) {
      std::cout << "  " << name << ": " << e.what() << "\n";
    }
  }
  long ms = run_ms(t0);
  line("meta-reversal round trip over the nine catalogued principles",
       passed == 9 && ms < 10000,
       std::to_string(passed) + "/9 in " + std::to_string(ms) + " ms, limit 10000");
}

void criterion_rule_soundness() {
  auto t0 = Clock::now();
  SoundnessBudget budget;
  budget.pairs = 1000;
  budget.max_n = 3;
  bool all = true;
  std::string failed;
  for (RewriteRule rule :
       {RewriteRule::HGMPst, RewriteRule::HIPforallst, RewriteRule::HACint,
        RewriteRule::PrenexAndSt, RewriteRule::PrenexOrSt, RewriteRule::PrenexImpliesSt,
        RewriteRule::MarkovSt, RewriteRule::DropStAntecedent}) {
    SoundnessVerdict v = check_rule_soundness(rule, budget);
    if (v.status != SoundnessStatus::Pass || v.pairs_checked < 1000) {
      all = false;
      failed += rule_name(rule) + " ";
    }
  }
  SoundnessVerdict ideal = check_rule_soundness(RewriteRule::Idealisation, budget);
  bool ideal_ok = ideal.status == SoundnessStatus::ExpectedCounterexample;
  long ms = run_ms(t0);
  line("rule soundness suite: 1000 seeded pairs per rule, zero violations",
       all && ms < 120000,
       failed.empty() ? std::to_string(ms) + " ms, limit 120000" : "failed: " + failed);
  line("idealisation refuted by an explicit finite counterexample", ideal_ok);
}

void criterion_extraction_validity() {
  auto t0 = Clock::now();
  const Principle& trans = get_principle("PI01-TRANS");
  NormalizeResult r = normalize(trans.statement, Logic::Classical, trans.signature);
  ExtractionResult ex = extract(r.nf, r.trace);
  collapse_monotone(ex, {"m"});
  ExtractionVerdict good = check_extraction(ex, 3);
  ExtractionVerdict bad = check_extraction(ex, 3, true);
  long ms = run_ms(t0);
  line("extraction verified over all 27 functions at size 3",
       good.pass && ms < 10000, std::to_string(ms) + " ms, limit 10000");
  line("corrupted witness detected by the model checker", !bad.pass);
}

void criterion_roundtrip_all() {
  int total = 0, ok = 0;
  for (const auto& name : catalog_names()) {
    if (alias_info(name)) continue;
    total++;
    try {
      const Principle& p = get_principle(name);
      typecheck(p.statement, {}, p.signature);
      FormulaPtr back = parse_formula(print_formula(p.statement, p.signature), p.signature);
      if (formula_equal(back, p.statement)) ok++;
    } catch (const EngineError&) {
    }
  }
  for (const char* file : {"curk", "frok", "fras", "finkal", "tokamak", "structure", "bling",
                           "hio", "frood", "frood2", "froodke"}) {
    total++;
    try {
      std::ifstream in(std::string("golden/") + file + ".nsz");
      std::stringstream buf;
      buf << in.rdbuf();
      ParsedFile pf = parse_file(buf.str());
      typecheck(pf.formula, {}, pf.signature);
      FormulaPtr back =
          parse_formula(print_formula(pf.formula, pf.signature), pf.signature);
      if (formula_equal(back, pf.formula)) ok++;
    } catch (const EngineError&) {
    }
  }
  line("parse/print round trip and typecheck across the catalog and golden files",
       ok == total, std::to_string(ok) + "/" + std::to_string(total));
}

void criterion_determinism() {
  PipelineOptions opts;
  opts.seed = 20260809;
  std::string a = report_to_json(pipeline("Pi01G", Logic::Classical, opts));
  std::string b = report_to_json(pipeline("Pi01G", Logic::Classical, opts));
  line("identical seed gives byte-identical pipeline JSON", a == b);
}

}  // namespace

int main() {
  try {
    criterion_transfer_normal_form();
    criterion_classical_pipeline();
    criterion_intuitionistic_pipeline();
    criterion_meta_reversal();
    criterion_rule_soundness();
    criterion_extraction_validity();
    criterion_roundtrip_all();
    criterion_determinism();
  } catch (const std::exception& e) {
    std::cout << "FAIL suite aborted: " << e.what() << "\n";
    return 1;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed\n"
                              : std::to_string(failures) + " criteria failed\n");
  return failures == 0 ? 0 : 1;
}
