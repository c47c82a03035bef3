// Recursive-descent parser for the surface syntax.
//
//   types        0 | 1..9 | (T -> T) | (T * T) | T^*
//   quantifiers  !x:T.  ?x:T.  !st x:T.  ?st x:T.  !i <= t.  ?i <= t.
//                !x in t.  ?x in t.
//   connectives  ~  &  |  ->      (-> right-associative, lowest)
//   atoms        t = t | t != t | t <= t | P(t,...) | st(t)
//   abbreviations t ==[T] t  and  t ~~[T] t, expanded at parse time
//   headers      sym NAME : T1 x ... x Tn -> T     var NAME : T
#ifndef NSZOO_PARSE_HPP
#define NSZOO_PARSE_HPP

#include <string>

#include "nszoo/ast.hpp"
#include "nszoo/ops.hpp"
#include "nszoo/signature.hpp"

namespace nszoo {

// Parses "sym ..." / "var ..." header lines (one per line, # comments allowed).
Signature parse_signature(const std::string& text);

// Parses and typechecks a single formula; declared vars in sig enter the context.
FormulaPtr parse_formula(const std::string& text, const Signature& sig);

TermPtr parse_term(const std::string& text, const Signature& sig, const TypeContext& ctx);

TypePtr parse_type(const std::string& text);

// Parses a file of header lines followed by one formula (possibly spanning
// lines); # lines are comments.  Used for golden files.
struct ParsedFile {
  Signature signature;
  FormulaPtr formula;
};
ParsedFile parse_file(const std::string& text);

}  // namespace nszoo

#endif
