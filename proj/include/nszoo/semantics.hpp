// Brute-force finite two-level structures interpreting the standardness
// predicate; used to property-test rewrite-rule soundness and extraction
// validity at desk scale.
#ifndef NSZOO_SEMANTICS_HPP
#define NSZOO_SEMANTICS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nszoo/ast.hpp"
#include "nszoo/extraction.hpp"
#include "nszoo/normalform.hpp"
#include "nszoo/signature.hpp"

namespace nszoo {

// Every type is interpreted by a finite enumerated domain: type 0 by
// {0..n-1}, sequences by tuples of length <= seq_cap, arrows by full function
// spaces.  Standard means: below the cutoff at type 0, componentwise for
// pairs and sequences, standard-preserving for functions.
struct TwoLevelModel {
  int n = 2;
  int cutoff = 1;
  int seq_cap = 1;
  int level_bound = 1;
  Signature sig;
  std::map<std::string, std::vector<long>> interps;  // row-major result tables
  long max_dom = 2'000'000;

  long dom_size(const TypePtr& t) const;
  bool standard(const TypePtr& t, long idx) const;
  // decoding helpers for sequence domains
  std::vector<long> seq_entries(const TypePtr& elem, long idx) const;
  long seq_index(const TypePtr& elem, const std::vector<long>& entries) const;
  long apply(const TypePtr& fn_type, long fn, long arg) const;
  std::string describe() const;
};

struct EvalBudget {
  long steps = 20'000'000;
};

using Env = std::map<std::string, std::pair<TypePtr, long>>;

long eval_term(const TermPtr& t, const TwoLevelModel& m, const Env& env, EvalBudget& budget);
bool eval(const FormulaPtr& f, const TwoLevelModel& m, const Env& env, EvalBudget& budget);
bool eval(const FormulaPtr& f, const TwoLevelModel& m);

struct ModelBudget {
  int max_models = 48;
  std::uint64_t seed = 1;
};

// Models at size n: every cutoff, several sequence caps, and interpretations
// of the signature symbols (exhaustive when small, seeded samples otherwise).
// n must be at most 4 and level_bound at most 2.
std::vector<TwoLevelModel> enumerate_models(const Signature& sig, int n, int level_bound,
                                            const ModelBudget& budget);

struct SoundnessBudget {
  long pairs = 1000;
  int max_n = 3;
  std::uint64_t seed = 20260809;
};

enum class SoundnessStatus {
  Pass,
  ExpectedCounterexample,  // the infinitary axiom refuted at finite scale
  Violated,
  Skipped,  // coding conventions validated by construction, not sampling
};

struct SoundnessVerdict {
  SoundnessStatus status;
  long pairs_checked = 0;
  std::string counterexample;  // self-contained dump when present
  std::string note;
  std::uint64_t seed = 0;
};

SoundnessVerdict check_rule_soundness(RewriteRule rule, const SoundnessBudget& budget);

struct ExtractionVerdict {
  bool pass;
  long models_checked = 0;
  std::string counterexample;
  std::uint64_t seed = 0;
};

// Brute-force check of the internal sentence (and the collapsed sentence when
// present) with the extraction functionals interpreted as exhaustive
// candidate sequences.  corrupt_witness drops the last candidate, which a
// sound checker must detect.
ExtractionVerdict check_extraction(const ExtractionResult& result, int n,
                                   bool corrupt_witness = false);

}  // namespace nszoo

#endif
