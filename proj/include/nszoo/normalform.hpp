// The rewrite engine: converts implications between st-quantified statements
// into the normal form (forall-st x)(exists-st y)(internal matrix), in both
// classical and intuitionistic rule sets, recording a replayable trace.
#ifndef NSZOO_NORMALFORM_HPP
#define NSZOO_NORMALFORM_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nszoo/ast.hpp"
#include "nszoo/ops.hpp"
#include "nszoo/print.hpp"
#include "nszoo/signature.hpp"

namespace nszoo {

enum class Logic { Classical, Intuitionistic };
std::string logic_name(Logic l);

enum class RewriteRule {
  PrenexAndSt,
  PrenexOrSt,
  PrenexImpliesSt,
  DoubleNegSt,
  Idealisation,
  HACint,
  HGMPst,
  HIPforallst,
  ExpandApprox,
  ExpandExactEq,
  ExpandStdExt,
  DropStAntecedent,
  MarkovSt,
  // engine-level steps the hand derivations perform silently
  TransferComplement,   // polarity flip of the transfer principle via f -> 1-f
  TupleCode,            // codes a block of standard universals into one Z^1
  SkolemizeAntecedent,  // strengthens a forall-exists clause in an antecedent
                        // with a fresh standard functional
  BoundSearchClosure,   // turns a scalar/membership witness into <=-search
  SwapStPrefix,         // exists-st before forall-st becomes forall-st first
};

const std::vector<RewriteRule>& all_rules();
std::string rule_name(RewriteRule r);
std::optional<RewriteRule> rule_by_name(const std::string& name);
// true if the rule may be used in intuitionistic derivations
bool rule_intuitionistic(RewriteRule r);

enum class RuleDirection {
  Equivalence,   // both directions hold
  AxiomForward,  // output is implied by input (with the system's axioms)
  Convention,    // coding / polarity convention, validated by construction
};
RuleDirection rule_direction(RewriteRule r);

using Path = std::vector<int>;  // 0 = f1 / quantifier body, 1 = f2

FormulaPtr formula_at(const FormulaPtr& f, const Path& p);
FormulaPtr replace_at(const FormulaPtr& f, const Path& p, const FormulaPtr& g);
// false at negative positions (under odd many antecedents / negations)
bool positive_at(const FormulaPtr& f, const Path& p);
// the leaves of a conjunction tree with their relative paths, left to right
std::vector<std::pair<Path, FormulaPtr>> conjunction_leaves(const FormulaPtr& f);

struct NormalForm {
  std::vector<std::pair<std::string, TypePtr>> st_universals;
  std::vector<std::pair<std::string, TypePtr>> st_existentials;
  FormulaPtr matrix;
  std::vector<std::string> vacuous;  // prefix variables not free in the matrix
  FormulaPtr to_formula() const;
};

// Decomposes a formula that is literally a forall-st block, an exists-st
// block, then an internal matrix; empty otherwise.
std::optional<NormalForm> is_normal_form(const FormulaPtr& f);

struct RuleStep {
  RewriteRule rule;
  Path path;
  std::vector<std::string> fresh;
  FormulaPtr after;
};

struct RuleTrace {
  FormulaPtr initial;
  Signature sig0;  // signature the derivation started from
  Signature sig;   // signature extended with engine-introduced symbols
  std::vector<RuleStep> steps;
};

// Fresh-name state threaded through rule applications; replaying a trace with
// the same initial state regenerates the same names.
struct RuleContext {
  Signature sig;
  std::set<std::string> used;
  int decoder_counter = 0;
  int skolem_counter = 0;
  Logic logic = Logic::Classical;

  static RuleContext from(const FormulaPtr& f, const Signature& sig, Logic logic);
  std::string fresh(const std::string& base);
};

// Applies one rule at a position; throws EngineError when inapplicable.
FormulaPtr apply_rule(RewriteRule rule, const FormulaPtr& f, const Path& path, RuleContext& ctx,
                      std::vector<std::string>* fresh_out = nullptr);

// Termination measure; every trace step strictly decreases it (lexicographic).
std::array<long, 5> nf_measure(const FormulaPtr& f);

struct NormalizeResult {
  NormalForm nf;
  RuleTrace trace;
};

// Normalization of a single statement (the supported fragment: st-quantified
// internal blocks, relativized transfer, and implications between such).
NormalizeResult normalize(const FormulaPtr& f, Logic logic, const Signature& sig);

// Normalization of an implication antecedent -> consequent where the
// antecedent has the uniform-plus shape and the consequent relativized
// transfer (or is already normal).
NormalizeResult normalize_implication(const FormulaPtr& antecedent, const FormulaPtr& consequent,
                                      Logic logic, const Signature& sig);

// Replays a trace from its initial formula; throws on any mismatch.
FormulaPtr replay(const RuleTrace& trace, Logic logic);

// The standard-extensionality statement of a functional variable in prenexed
// modulus form: for all standard arguments and precisions there is a standard
// agreement length forcing agreement of outputs.  Extends sig with `bar`.
FormulaPtr expand_standard_extensionality(const std::string& fn_name, const TypePtr& domain,
                                          const TypePtr& codomain, Signature& sig);

// One trace step per line: STEP <n> <RuleName> AT <path> FRESH <names> => <formula>
std::string trace_to_text(const RuleTrace& trace);

}  // namespace nszoo

#endif
