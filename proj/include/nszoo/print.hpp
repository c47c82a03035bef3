// Canonical printer: fixed precedence, fixed whitespace, deterministic output.
// parse(print(f)) is node-for-node identical to f.
#ifndef NSZOO_PRINT_HPP
#define NSZOO_PRINT_HPP

#include <string>

#include "nszoo/ast.hpp"
#include "nszoo/ops.hpp"
#include "nszoo/signature.hpp"

namespace nszoo {

std::string print_term(const TermPtr& t, const TypeContext& ctx, const Signature& sig);
std::string print_formula(const FormulaPtr& f, const TypeContext& ctx, const Signature& sig);
// Convenience for closed formulas over a signature.
std::string print_formula(const FormulaPtr& f, const Signature& sig);
// Prints "sym"/"var" header lines for a signature.
std::string print_signature(const Signature& sig);

}  // namespace nszoo

#endif
