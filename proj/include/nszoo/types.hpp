// Finite types of higher-type arithmetic: 0, sigma -> tau, sigma * tau, sigma^*.
#ifndef NSZOO_TYPES_HPP
#define NSZOO_TYPES_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace nszoo {

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  enum class Kind { Base, Arrow, Prod, Seq };
  Kind kind;
  TypePtr a;  // Arrow domain / Prod left / Seq element
  TypePtr b;  // Arrow codomain / Prod right
};

TypePtr type_base();
TypePtr type_arrow(TypePtr dom, TypePtr cod);
TypePtr type_prod(TypePtr l, TypePtr r);
TypePtr type_seq(TypePtr el);

// Pure type n: 0 is Base, n+1 is n -> 0.
TypePtr type_pure(int n);
// Inverse of type_pure; empty if t is not a pure type.
std::optional<int> pure_index(const TypePtr& t);

bool type_equal(const TypePtr& s, const TypePtr& t);

// Right-nested product components: (a * (b * c)) -> [a, b, c].
std::vector<TypePtr> product_components(const TypePtr& t);
// Rebuild a right-nested product from components (singleton stays plain).
TypePtr product_of(const std::vector<TypePtr>& comps);

// Type level: level(0)=0, level(s->t)=max(level(s)+1, level(t)),
// products and sequences take the max / element level.
int type_level(const TypePtr& t);

std::string show_type(const TypePtr& t);

}  // namespace nszoo

#endif
