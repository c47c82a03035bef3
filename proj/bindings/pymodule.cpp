// Python bindings: thin wrappers over the core operations, JSON-friendly.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nszoo/catalog.hpp"
#include "nszoo/parse.hpp"
#include "nszoo/print.hpp"
#include "nszoo/report.hpp"
#include "nszoo/semantics.hpp"

namespace py = pybind11;
using namespace nszoo;

namespace {

Logic logic_of(const std::string& s) {
  if (s == "classical") return Logic::Classical;
  if (s == "intuitionistic") return Logic::Intuitionistic;
  throw EngineError("logic must be classical or intuitionistic");
}

py::dict principle_dict(const Principle& p) {
  py::dict d;
  d["name"] = p.name;
  d["kind"] = kind_name(p.kind);
  d["note"] = p.note;
  d["signature"] = print_signature(p.signature);
  d["statement"] = print_formula(p.statement, p.signature);
  return d;
}

}  // namespace

PYBIND11_MODULE(_nszoo, m) {
  m.doc() = "symbolic engine for standardness-relativized arithmetic";

  m.def("catalog_names", [] { return catalog_names(); });

  m.def("principle", [](const std::string& name) { return principle_dict(get_principle(name)); },
        py::arg("name"));

  m.def("parse_print",
        [](const std::string& text) {
          ParsedFile pf = parse_file(text);
          return print_signature(pf.signature) + print_formula(pf.formula, pf.signature);
        },
        py::arg("text"), "parse a headers+formula text and return its canonical form");

  m.def("classify",
        [](const std::string& text) {
          ParsedFile pf = parse_file(text);
          return is_internal(pf.formula) ? "internal" : "external";
        },
        py::arg("text"));

  m.def("normalize",
        [](const std::string& text, const std::string& logic) {
          ParsedFile pf = parse_file(text);
          NormalizeResult r = normalize(pf.formula, logic_of(logic), pf.signature);
          py::dict d;
          d["normal_form"] = print_formula(r.nf.to_formula(), r.trace.sig);
          d["trace"] = trace_to_text(r.trace);
          return d;
        },
        py::arg("text"), py::arg("logic") = "classical");

  m.def("pipeline_json",
        [](const std::string& name, const std::string& logic, const std::string& golden_dir,
           std::uint64_t seed) {
          PipelineOptions opts;
          if (!golden_dir.empty()) opts.golden_dir = golden_dir;
          opts.seed = seed;
          return report_to_json(pipeline(name, logic_of(logic), opts));
        },
        py::arg("name"), py::arg("logic") = "classical", py::arg("golden_dir") = "",
        py::arg("seed") = 0);

  m.def("extraction_json",
        [](const std::string& name, const std::string& logic) {
          Logic l = logic_of(logic);
          Principle up = plus_version(uniformize(get_principle(name)));
          const Principle& trans = get_principle("PI01-TRANS");
          Signature sig = up.signature;
          sig.merge(trans.signature);
          NormalizeResult impl = normalize_implication(up.statement, trans.statement, l, sig);
          ExtractionResult ex = extract(impl.nf, impl.trace);
          if (l == Logic::Classical)
            collapse_monotone(ex, {impl.nf.st_existentials[0].first});
          return extraction_to_json(ex);
        },
        py::arg("name"), py::arg("logic") = "classical");

  m.def("check_rule",
        [](const std::string& rule, std::uint64_t seed, int size, long pairs) {
          auto r = rule_by_name(rule);
          if (!r) throw EngineError("unknown rule " + rule);
          SoundnessBudget budget;
          if (seed) budget.seed = seed;
          budget.max_n = size;
          budget.pairs = pairs;
          SoundnessVerdict v = check_rule_soundness(*r, budget);
          py::dict d;
          switch (v.status) {
            case SoundnessStatus::Pass: d["status"] = "pass"; break;
            case SoundnessStatus::ExpectedCounterexample:
              d["status"] = "expected-counterexample";
              break;
            case SoundnessStatus::Violated: d["status"] = "fail"; break;
            case SoundnessStatus::Skipped: d["status"] = "skipped"; break;
          }
          d["pairs"] = v.pairs_checked;
          d["note"] = v.note;
          d["counterexample"] = v.counterexample;
          d["seed"] = v.seed;
          return d;
        },
        py::arg("rule"), py::arg("seed") = 0, py::arg("size") = 3, py::arg("pairs") = 1000);

  m.def("rule_names", [] {
    std::vector<std::string> out;
    for (RewriteRule r : all_rules()) out.push_back(rule_name(r));
    return out;
  });

  py::register_exception<EngineError>(m, "EngineError");
}
