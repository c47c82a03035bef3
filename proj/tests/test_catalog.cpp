#include "doctest.h"
#include "nszoo/catalog.hpp"
#include "nszoo/parse.hpp"
#include "nszoo/print.hpp"
#include "nszoo/report.hpp"

using namespace nszoo;

TEST_CASE("catalog: every statement round-trips and typechecks") {
  for (const auto& name : catalog_names()) {
    if (alias_info(name)) continue;
    CAPTURE(name);
    const Principle& p = get_principle(name);
    typecheck(p.statement, {}, p.signature);
    std::string printed = print_formula(p.statement, p.signature);
    FormulaPtr back = parse_formula(printed, p.signature);
    CHECK(formula_equal(back, p.statement));
  }
}

TEST_CASE("catalog: transfer and comprehension displays") {
  CHECK(print_formula(get_principle("PI01-TRANS").statement, Signature{}) ==
        "!st f:1. (?n:0. app(f,n) = 0) -> ?st m:0. app(f,m) = 0");
  CHECK(print_formula(get_principle("MU2").statement, Signature{}) ==
        "?mu:2. !f:1. (?n:0. app(f,n) = 0) -> app(f,app(mu,f)) = 0");
  const Principle& udnr = get_principle("UDNR");
  CHECK(udnr.statement->kind == Formula::Kind::Exists);  // plain, not ?st
}

TEST_CASE("catalog: zoo statements have the forall-exists shape with internal matrix") {
  for (const char* name : {"DNR", "Pi01G", "1GEN", "HYP", "NCS", "KPT"}) {
    CAPTURE(name);
    const Principle& p = get_principle(name);
    CHECK(p.kind == PrincipleKind::Zoo);
    FormulaPtr cur = p.statement;
    int foralls = 0, exists = 0;
    while (cur->kind == Formula::Kind::Forall) {
      foralls++;
      cur = cur->f1;
    }
    while (cur->kind == Formula::Kind::Exists) {
      exists++;
      cur = cur->f1;
    }
    CHECK(foralls >= 1);
    CHECK(exists >= 1);
    CHECK(is_internal(p.statement));
  }
}

TEST_CASE("catalog: aliases resolve and FIP is a documented error") {
  for (const char* name : {"OPT", "AMT", "SADS"}) {
    auto info = alias_info(name);
    REQUIRE(info.has_value());
    CHECK(info->first == "HYP");
    CHECK(get_principle(name).name == "HYP");
  }
  CHECK(alias_info("AST")->first == "NCS");
  CHECK_THROWS_AS(get_principle("FIP"), NotEncodedError);
  CHECK_THROWS_AS(get_principle("NOPE"), EngineError);
  CHECK(nine_principles().size() == 9);
}

TEST_CASE("pipeline: reports validate and verdicts are tri-state") {
  PipelineOptions opts;
  opts.golden_dir = "golden";
  Report r = pipeline("Pi01G", Logic::Classical, opts);
  validate_report(r);
  CHECK(r.verdicts.at("golden") == Verdict::Pass);
  CHECK(r.verdicts.at("round_trip") == Verdict::Pass);
  CHECK(r.verdicts.at("soundness") == Verdict::Skipped);
  CHECK(!r.golden_files.empty());
  // stage formulas re-parse from the JSON strings
  std::string json = report_to_json(r);
  CHECK(json.find("\"principle\": \"Pi01G\"") != std::string::npos);
}

TEST_CASE("pipeline: byte-identical JSON for identical inputs") {
  PipelineOptions opts;
  opts.seed = 42;
  std::string a = report_to_json(pipeline("Pi01G", Logic::Classical, opts));
  std::string b = report_to_json(pipeline("Pi01G", Logic::Classical, opts));
  CHECK(a == b);
}

TEST_CASE("pipeline: rejects non-zoo principles") {
  CHECK_THROWS_AS(pipeline("MU2", Logic::Classical, {}), EngineError);
  CHECK_THROWS_AS(pipeline("PI01-TRANS", Logic::Classical, {}), EngineError);
}

TEST_CASE("extraction json round-trips through the loader") {
  PipelineOptions opts;
  Report r = pipeline("Pi01G", Logic::Classical, opts);
  REQUIRE(r.extraction.has_value());
  std::string json = extraction_to_json(*r.extraction);
  ExtractionResult back = extraction_from_json(json);
  CHECK(formula_equal(back.internal_sentence, r.extraction->internal_sentence));
  REQUIRE(back.collapsed.has_value());
  CHECK(formula_equal(*back.collapsed, *r.extraction->collapsed));
  CHECK(back.functionals == r.extraction->functionals);
}
