// Command-line front end: parse/print, normalization, extraction,
// herbrandisation, catalog pipelines and finite-model checking.
//
// Exit codes: 0 pass, 1 verdict failure, 2 usage or input error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nszoo/catalog.hpp"
#include "nszoo/parse.hpp"
#include "nszoo/print.hpp"
#include "nszoo/report.hpp"
#include "nszoo/semantics.hpp"

using namespace nszoo;

namespace {

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw EngineError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Logic parse_logic(const std::string& s) {
  if (s == "classical") return Logic::Classical;
  if (s == "intuitionistic") return Logic::Intuitionistic;
  throw CLI::ValidationError("--logic must be classical or intuitionistic");
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("NSZOO_SEED")) return std::strtoull(env, nullptr, 10);
  return cli_seed;
}

void write_or_print(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic engine for standardness-relativized arithmetic"};
  app.require_subcommand(1);

  std::string file, logic_s = "classical", golden_dir, out_path, name, json_out;
  bool as_json = false;
  std::uint64_t seed = 0;
  int size = 3;
  long pairs = 1000;

  auto* cmd_parse = app.add_subcommand("parse", "parse a formula file and echo it canonically");
  cmd_parse->add_option("file", file, "input file (- for stdin)");

  auto* cmd_print = app.add_subcommand("print", "alias of parse: canonical printing");
  cmd_print->add_option("file", file, "input file (- for stdin)");

  auto* cmd_norm = app.add_subcommand("normalize", "bring a statement into normal form");
  cmd_norm->add_option("file", file, "input file (- for stdin)");
  cmd_norm->add_option("--logic", logic_s, "classical or intuitionistic");
  cmd_norm->add_flag("--json", as_json, "emit JSON");

  auto* cmd_extract = app.add_subcommand("extract", "witness extraction for a catalog principle");
  cmd_extract->add_option("name", name, "principle name")->required();
  cmd_extract->add_option("--logic", logic_s, "classical or intuitionistic");
  cmd_extract->add_flag("--json", as_json, "emit JSON");
  cmd_extract->add_option("--out", out_path, "write to file");

  auto* cmd_herb = app.add_subcommand("herbrandise", "pointwise-bounded form of a principle");
  cmd_herb->add_option("name", name, "principle name")->required();

  auto* cmd_meta = app.add_subcommand("meta-reverse",
                                      "reconstruct the implication from its herbrandisation");
  cmd_meta->add_option("name", name, "principle name")->required();

  auto* cmd_catalog = app.add_subcommand("catalog", "list or show catalogued principles");
  auto* cat_list = cmd_catalog->add_subcommand("list", "list principles");
  auto* cat_show = cmd_catalog->add_subcommand("show", "print one principle");
  cat_show->add_option("name", name, "principle name")->required();
  cmd_catalog->require_subcommand(1);

  auto* cmd_pipe = app.add_subcommand("pipeline", "run the full pipeline for a principle");
  cmd_pipe->add_option("name", name, "principle name")->required();
  cmd_pipe->add_option("--logic", logic_s, "classical or intuitionistic");
  cmd_pipe->add_option("--golden", golden_dir, "directory of golden files to compare");
  cmd_pipe->add_option("--seed", seed, "seed recorded in the report");
  cmd_pipe->add_flag("--json", as_json, "emit JSON");
  cmd_pipe->add_option("--out", out_path, "write the report to a file");

  auto* cmd_model = app.add_subcommand("model-check", "finite two-level model checks");
  auto* mc_rule = cmd_model->add_subcommand("rule", "check one rewrite rule");
  mc_rule->add_option("name", name, "rule name")->required();
  mc_rule->add_option("--seed", seed, "sampling seed");
  mc_rule->add_option("--size", size, "maximal domain size");
  mc_rule->add_option("--pairs", pairs, "model-instance pairs to check");
  mc_rule->add_option("--dump", json_out, "write counterexample dumps to a file");
  auto* mc_ex = cmd_model->add_subcommand("extraction", "check an extraction JSON file");
  mc_ex->add_option("file", file, "extraction JSON")->required();
  mc_ex->add_option("--seed", seed, "sampling seed");
  mc_ex->add_option("--size", size, "domain size");
  mc_ex->add_flag("--mutate", as_json, "corrupt the witness and expect a violation");
  cmd_model->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_parse || *cmd_print) {
      ParsedFile pf = parse_file(read_input(file));
      std::cout << print_signature(pf.signature) << print_formula(pf.formula, pf.signature)
                << "\n";
      return 0;
    }
    if (*cmd_norm) {
      Logic logic = parse_logic(logic_s);
      ParsedFile pf = parse_file(read_input(file));
      NormalizeResult r = normalize(pf.formula, logic, pf.signature);
      if (as_json) {
        nlohmann::ordered_json j;
        j["normal_form"] = print_formula(r.nf.to_formula(), r.trace.sig);
        nlohmann::ordered_json steps = nlohmann::ordered_json::array();
        std::istringstream lines(trace_to_text(r.trace));
        std::string line;
        while (std::getline(lines, line)) steps.push_back(line);
        j["trace"] = std::move(steps);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << print_formula(r.nf.to_formula(), r.trace.sig) << "\n"
                  << trace_to_text(r.trace);
      }
      return 0;
    }
    if (*cmd_extract) {
      Logic logic = parse_logic(logic_s);
      Principle up = plus_version(uniformize(get_principle(name)));
      const Principle& trans = get_principle("PI01-TRANS");
      Signature sig = up.signature;
      sig.merge(trans.signature);
      NormalizeResult impl = normalize_implication(up.statement, trans.statement, logic, sig);
      ExtractionResult ex = extract(impl.nf, impl.trace);
      if (logic == Logic::Classical)
        collapse_monotone(ex, {impl.nf.st_existentials[0].first});
      if (as_json) {
        write_or_print(extraction_to_json(ex), out_path);
      } else {
        std::ostringstream out;
        out << print_formula(ex.internal_sentence, ex.sig) << "\n";
        if (ex.collapsed) out << print_formula(*ex.collapsed, ex.sig) << "\n";
        write_or_print(out.str(), out_path);
      }
      return 0;
    }
    if (*cmd_herb || *cmd_meta) {
      Principle up = plus_version(uniformize(get_principle(name)));
      const Principle& trans = get_principle("PI01-TRANS");
      Signature sig = up.signature;
      sig.merge(trans.signature);
      NormalForm a_nf = uniform_plus_exists_nf(up.statement, sig);
      NormalizeResult cons = normalize(trans.statement, Logic::Classical, trans.signature);
      Herbrandisation h = herbrandise(a_nf, cons.nf, sig);
      if (*cmd_herb) {
        std::cout << print_formula(h.body, h.sig) << "\n";
        return 0;
      }
      FormulaPtr back = meta_reverse(h);
      std::cout << print_formula(back, h.sig) << "\n";
      bool ok = alpha_equal(back, mk_implies(up.statement, trans.statement));
      std::cout << "round-trip: " << (ok ? "pass" : "fail") << "\n";
      return ok ? 0 : 1;
    }
    if (*cmd_catalog) {
      if (*cat_list) {
        for (const auto& n : catalog_names()) {
          if (auto alias = alias_info(n)) {
            std::cout << n << " -> " << alias->first << " (" << alias->second << ")\n";
          } else {
            const Principle& p = get_principle(n);
            std::cout << n << " [" << kind_name(p.kind) << "] " << p.note << "\n";
          }
        }
        std::cout << "FIP (not encoded: catalogued as a note; see catalog show FIP)\n";
        return 0;
      }
      const Principle& p = get_principle(name);
      std::cout << print_signature(p.signature) << print_formula(p.statement, p.signature)
                << "\n";
      return 0;
    }
    if (*cmd_pipe) {
      PipelineOptions opts;
      if (!golden_dir.empty()) opts.golden_dir = golden_dir;
      opts.seed = effective_seed(seed);
      Report r = pipeline(name, parse_logic(logic_s), opts);
      write_or_print(as_json ? report_to_json(r) : report_to_text(r), out_path);
      bool failed = false;
      for (const auto& [k, v] : r.verdicts) failed = failed || v == Verdict::Fail;
      return failed ? 1 : 0;
    }
    if (*mc_rule) {
      auto rule = rule_by_name(name);
      if (!rule) {
        std::cerr << "unknown rule " << name << "\n";
        return 2;
      }
      SoundnessBudget budget;
      budget.seed = effective_seed(seed ? seed : budget.seed);
      budget.pairs = pairs;
      budget.max_n = size;
      SoundnessVerdict v = check_rule_soundness(*rule, budget);
      std::cout << "rule: " << name << "\nseed: " << v.seed
                << "\npairs: " << v.pairs_checked << "\n";
      switch (v.status) {
        case SoundnessStatus::Pass:
          std::cout << "verdict: pass\n";
          return 0;
        case SoundnessStatus::ExpectedCounterexample:
          std::cout << "verdict: expected-counterexample\n" << v.note << "\n";
          if (!json_out.empty()) write_or_print(v.counterexample, json_out);
          else std::cout << v.counterexample;
          return 0;
        case SoundnessStatus::Skipped:
          std::cout << "verdict: skipped\n" << v.note << "\n";
          return 0;
        case SoundnessStatus::Violated:
          std::cout << "verdict: fail\n" << v.counterexample << v.note << "\n";
          if (!json_out.empty()) write_or_print(v.counterexample, json_out);
          return 1;
      }
    }
    if (*mc_ex) {
      ExtractionResult ex = extraction_from_json(read_input(file));
      ExtractionVerdict v = check_extraction(ex, size, as_json);
      std::cout << "models: " << v.models_checked << "\nverdict: "
                << (v.pass ? "pass" : "fail") << "\n";
      if (!v.pass) std::cout << v.counterexample;
      // under --mutate a detected violation is the expected outcome
      if (as_json) return v.pass ? 1 : 0;
      return v.pass ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const NotEncodedError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const EngineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
