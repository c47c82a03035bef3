#include "nszoo/signature.hpp"

namespace nszoo {

void Signature::declare(SymbolDecl d) {
  auto it = syms_.find(d.name);
  if (it != syms_.end()) {
    const SymbolDecl& old = it->second;
    bool same = old.params.size() == d.params.size() && type_equal(old.result, d.result);
    for (size_t i = 0; same && i < d.params.size(); i++)
      same = type_equal(old.params[i], d.params[i]);
    if (!same) throw EngineError("conflicting redeclaration of symbol " + d.name);
    return;
  }
  syms_.emplace(d.name, std::move(d));
}

void Signature::declare_var(VarDecl d) {
  auto it = vars_.find(d.name);
  if (it != vars_.end()) {
    if (!type_equal(it->second.type, d.type))
      throw EngineError("conflicting redeclaration of variable " + d.name);
    return;
  }
  vars_.emplace(d.name, std::move(d));
}

const SymbolDecl& Signature::get(const std::string& name) const {
  auto it = syms_.find(name);
  if (it == syms_.end()) throw EngineError("undeclared symbol " + name);
  return it->second;
}

const VarDecl& Signature::get_var(const std::string& name) const {
  auto it = vars_.find(name);
  if (it == vars_.end()) throw EngineError("undeclared variable " + name);
  return it->second;
}

void Signature::merge(const Signature& other) {
  for (const auto& [_, d] : other.syms_) declare(d);
  for (const auto& [_, d] : other.vars_) declare_var(d);
}

}  // namespace nszoo
