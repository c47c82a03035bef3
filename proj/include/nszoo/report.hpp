// End-to-end pipeline driver and machine-readable reports.
#ifndef NSZOO_REPORT_HPP
#define NSZOO_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nszoo/catalog.hpp"
#include "nszoo/extraction.hpp"
#include "nszoo/normalform.hpp"
#include "nszoo/semantics.hpp"

namespace nszoo {

enum class Verdict { Pass, Fail, Skipped };
std::string verdict_name(Verdict v);

struct Stage {
  std::string name;
  FormulaPtr formula;
  Signature vars;  // free-variable declarations for open display formulas
};

struct Report {
  std::string principle;
  Logic logic = Logic::Classical;
  std::uint64_t seed = 0;
  std::vector<Stage> stages;
  Signature sig;  // symbols covering every stage formula
  RuleTrace trace;
  std::optional<ExtractionResult> extraction;
  std::optional<Herbrandisation> herbrandisation;
  std::map<std::string, Verdict> verdicts;       // golden, round_trip, soundness
  std::map<std::string, std::string> notes;      // per-verdict details
  std::vector<std::pair<std::string, Verdict>> golden_files;
  std::map<std::string, long> timings_ms;

  const Stage* stage(const std::string& name) const;
};

struct PipelineOptions {
  std::optional<std::string> golden_dir;
  std::uint64_t seed = 0;
  bool with_soundness = false;
};

// uniformize (if needed) -> plus version -> normal form of the implication
// into the transfer principle -> extraction -> monotone collapse ->
// herbrandisation -> meta-reversal round trip -> golden comparisons.
Report pipeline(const std::string& name, Logic logic, const PipelineOptions& opts = {});

// Deterministic serialization; wall-clock timings are zeroed in JSON so that
// identical argv and seed give byte-identical output (text output shows them).
std::string report_to_json(const Report& r);
std::string report_to_text(const Report& r);

// Asserts that every embedded stage formula re-parses to the recorded AST and
// that the three verdict keys are present.
void validate_report(const Report& r);

// Extraction results as JSON (loadable by model-check extraction FILE).
std::string extraction_to_json(const ExtractionResult& ex);
ExtractionResult extraction_from_json(const std::string& text);

}  // namespace nszoo

#endif
