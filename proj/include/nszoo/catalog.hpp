// Machine-readable encodings of the studied principles, the uniformization
// and plus-version constructors, and the end-to-end pipeline driver.
#ifndef NSZOO_CATALOG_HPP
#define NSZOO_CATALOG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nszoo/ast.hpp"
#include "nszoo/extraction.hpp"
#include "nszoo/normalform.hpp"
#include "nszoo/signature.hpp"

namespace nszoo {

enum class PrincipleKind { Zoo, Uniform, UniformPlus, Comprehension, Transfer };
std::string kind_name(PrincipleKind k);

struct Principle {
  std::string name;
  PrincipleKind kind;
  FormulaPtr statement;
  Signature signature;
  std::string note;
};

struct NotEncodedError : EngineError {
  explicit NotEncodedError(const std::string& m) : EngineError(m) {}
};

// Catalog names: DNR, UDNR, Pi01G, UPi01G, 1GEN, U1G, HYP, UHYP, NCS, UNCS,
// KPT, UKPT, PI01-TRANS, MU2, E2.  OPT/AMT/SADS resolve to HYP and AST to NCS
// (documented aliases); FIP raises a documented not-encoded error.
const Principle& get_principle(const std::string& name);
std::vector<std::string> catalog_names();
// alias -> (target, note); empty when the name is not an alias
std::optional<std::pair<std::string, std::string>> alias_info(const std::string& name);

// The transfer principle in the polarity used by the search operator; the
// displayed form rewrites to this via TransferComplement.
FormulaPtr transfer_search_form();

// (forall X)(exists Y)phi  ->  (exists Phi)(forall X)phi(X, Phi(X))
Principle uniformize(const Principle& zoo);
// Inverse of uniformize at the syntax level (for the conservativity check).
Principle de_uniformize(const Principle& uniform);
// Relativizes the uniform version and conjoins standard extensionality.
Principle plus_version(const Principle& uniform);

// The nine zoo principles the pipeline must close over (aliases included).
const std::vector<std::string>& nine_principles();

}  // namespace nszoo

#endif
