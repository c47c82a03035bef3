// Symbol signatures: declared uninterpreted functions and relations.
#ifndef NSZOO_SIGNATURE_HPP
#define NSZOO_SIGNATURE_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nszoo/types.hpp"

namespace nszoo {

struct SymbolDecl {
  std::string name;
  std::vector<TypePtr> params;
  TypePtr result;  // surface declarations use result 0; the engine may extend
};

// A declared free variable (used by golden files and open formulas).
struct VarDecl {
  std::string name;
  TypePtr type;
};

class Signature {
 public:
  void declare(SymbolDecl d);
  void declare_var(VarDecl d);
  bool has(const std::string& name) const { return syms_.count(name) > 0; }
  const SymbolDecl& get(const std::string& name) const;
  bool has_var(const std::string& name) const { return vars_.count(name) > 0; }
  const VarDecl& get_var(const std::string& name) const;
  const std::map<std::string, SymbolDecl>& symbols() const { return syms_; }
  const std::map<std::string, VarDecl>& vars() const { return vars_; }
  // Union of two signatures; conflicting redeclarations must agree.
  void merge(const Signature& other);

 private:
  std::map<std::string, SymbolDecl> syms_;
  std::map<std::string, VarDecl> vars_;
};

struct EngineError : std::runtime_error {
  explicit EngineError(const std::string& m) : std::runtime_error(m) {}
};

struct TypeError : EngineError {
  explicit TypeError(const std::string& m) : EngineError(m) {}
};

struct ParseError : EngineError {
  ParseError(const std::string& m, int line, int col)
      : EngineError(m + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
        line(line),
        col(col) {}
  int line, col;
};

}  // namespace nszoo

#endif
