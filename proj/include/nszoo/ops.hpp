// Typechecking, substitution, classification and the defined-equality expansions.
#ifndef NSZOO_OPS_HPP
#define NSZOO_OPS_HPP

#include <map>
#include <string>

#include "nszoo/ast.hpp"
#include "nszoo/signature.hpp"

namespace nszoo {

using TypeContext = std::map<std::string, TypePtr>;

// Returns the unique type of t, or throws TypeError.
TypePtr typecheck(const TermPtr& t, const TypeContext& ctx, const Signature& sig);
// Checks every atom and quantifier body; throws TypeError.
void typecheck(const FormulaPtr& f, const TypeContext& ctx, const Signature& sig);

// Builds App with product-domain normalization: a head whose domain is a
// product consumes a matching tuple of arguments in one step, otherwise
// application curries left to right.
TermPtr apply_term(TermPtr head, const std::vector<TermPtr>& args, const TypeContext& ctx,
                   const Signature& sig);

enum class Classification { Internal, External };
Classification classify_internal(const FormulaPtr& f);
bool is_internal(const FormulaPtr& f);

// Capture-avoiding substitution of a term for a free variable.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& replacement);
TermPtr substitute(const TermPtr& t, const std::string& var, const TermPtr& replacement);

// Appends st to every unbounded quantifier of an internal formula; bounded
// quantifiers are left unchanged.  Throws if the input is not internal.
FormulaPtr relativize_st(const FormulaPtr& f);

// Erases the st flavor from every quantifier and drops st atoms are not
// permitted: throws if an St atom occurs.
FormulaPtr erase_st(const FormulaPtr& f);

enum class EqMode { Exact, Approx };

// Defined equality at type tau: Exact gives (forall z1..zk)(lhs z = rhs z),
// Approx relativizes the quantifiers.  Product types expand componentwise;
// tau must otherwise be ground-returning after uncurrying products in
// argument positions.
FormulaPtr expand_equality(const TermPtr& lhs, const TermPtr& rhs, const TypePtr& tau,
                           EqMode mode, const TypeContext& ctx, const Signature& sig);

// A name not occurring in `used`; tries base, base', base''..., then base1...
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

}  // namespace nszoo

#endif
