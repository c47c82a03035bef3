// Term extraction: explicit internal statements (forall x)(exists y in t(x)),
// the type-0 monotone max-collapse, Herbrandisations and the meta-reversal.
#ifndef NSZOO_EXTRACTION_HPP
#define NSZOO_EXTRACTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "nszoo/ast.hpp"
#include "nszoo/normalform.hpp"
#include "nszoo/signature.hpp"

namespace nszoo {

struct ExtractionResult {
  // each st-existential mapped to its candidate-sequence term over the
  // st-universal prefix (a declared extraction functional applied to them)
  std::vector<std::pair<std::string, TermPtr>> witnesses;
  std::vector<std::pair<std::string, TypePtr>> universals;
  FormulaPtr internal_sentence;
  std::optional<FormulaPtr> collapsed;
  Signature sig;  // extended with the extraction functionals
  std::vector<std::string> functionals;
  std::vector<std::string> vacuous;
};

// Composes witnesses backwards through the trace: every st-existential of nf
// must be traceable to an introducing step (or to the initial formula).
ExtractionResult extract(const NormalForm& nf, const RuleTrace& trace);

// Replaces (exists m in t(x)) by the single witness max0(t(x)) for each named
// type-0 variable; the matrix must be syntactically upward-monotone in it
// (the variable occurs only as a <=-search bound or right of <=).
FormulaPtr collapse_monotone(ExtractionResult& result,
                             const std::vector<std::string>& monotone_vars);

struct Herbrandisation {
  std::string i_name;
  std::string o_name;
  FormulaPtr body;
  Signature sig;
  bool vacuous_o = false;
};

// antecedent_nf: the uniform-plus conjunction normal form (empty universal
// prefix; existentials = the functional and its extensionality functionals;
// internal matrix of clause families).  consequent_nf: transfer-style normal
// form with one ground existential.
Herbrandisation herbrandise(const NormalForm& antecedent_nf, const NormalForm& consequent_nf,
                            const Signature& sig);

// Reconstructs the external implication the Herbrandisation was built from:
// premises re-quantified with st, the search bound re-abstracted to ?st, the
// transfer polarity restored.
FormulaPtr meta_reverse(const Herbrandisation& h);

// Brings a uniform-plus statement into the exists-style conjunction normal
// form used by herbrandise (coding variable blocks, introducing the
// extensionality functionals, dropping st in the clause bodies).
NormalForm uniform_plus_exists_nf(const FormulaPtr& plus_statement, Signature& sig);

}  // namespace nszoo

#endif
