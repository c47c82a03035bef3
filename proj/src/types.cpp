#include "nszoo/types.hpp"

namespace nszoo {

TypePtr type_base() {
  static const TypePtr base = std::make_shared<Type>(Type{Type::Kind::Base, nullptr, nullptr});
  return base;
}

TypePtr type_arrow(TypePtr dom, TypePtr cod) {
  return std::make_shared<Type>(Type{Type::Kind::Arrow, std::move(dom), std::move(cod)});
}

TypePtr type_prod(TypePtr l, TypePtr r) {
  return std::make_shared<Type>(Type{Type::Kind::Prod, std::move(l), std::move(r)});
}

TypePtr type_seq(TypePtr el) {
  return std::make_shared<Type>(Type{Type::Kind::Seq, std::move(el), nullptr});
}

TypePtr type_pure(int n) {
  TypePtr t = type_base();
  for (int i = 0; i < n; i++) t = type_arrow(t, type_base());
  return t;
}

std::optional<int> pure_index(const TypePtr& t) {
  if (t->kind == Type::Kind::Base) return 0;
  if (t->kind != Type::Kind::Arrow) return std::nullopt;
  if (t->b->kind != Type::Kind::Base) return std::nullopt;
  auto inner = pure_index(t->a);
  if (!inner) return std::nullopt;
  return *inner + 1;
}

bool type_equal(const TypePtr& s, const TypePtr& t) {
  if (s.get() == t.get()) return true;
  if (s->kind != t->kind) return false;
  switch (s->kind) {
    case Type::Kind::Base:
      return true;
    case Type::Kind::Arrow:
    case Type::Kind::Prod:
      return type_equal(s->a, t->a) && type_equal(s->b, t->b);
    case Type::Kind::Seq:
      return type_equal(s->a, t->a);
  }
  return false;
}

std::vector<TypePtr> product_components(const TypePtr& t) {
  std::vector<TypePtr> out;
  TypePtr cur = t;
  while (cur->kind == Type::Kind::Prod) {
    out.push_back(cur->a);
    cur = cur->b;
  }
  out.push_back(cur);
  return out;
}

TypePtr product_of(const std::vector<TypePtr>& comps) {
  TypePtr t = comps.back();
  for (int i = static_cast<int>(comps.size()) - 2; i >= 0; i--) t = type_prod(comps[i], t);
  return t;
}

int type_level(const TypePtr& t) {
  switch (t->kind) {
    case Type::Kind::Base:
      return 0;
    case Type::Kind::Arrow: {
      int d = type_level(t->a) + 1;
      int c = type_level(t->b);
      return d > c ? d : c;
    }
    case Type::Kind::Prod: {
      int l = type_level(t->a);
      int r = type_level(t->b);
      return l > r ? l : r;
    }
    case Type::Kind::Seq:
      return type_level(t->a);
  }
  return 0;
}

std::string show_type(const TypePtr& t) {
  if (auto n = pure_index(t); n && *n <= 9) return std::string(1, static_cast<char>('0' + *n));
  switch (t->kind) {
    case Type::Kind::Base:
      return "0";
    case Type::Kind::Arrow:
      return "(" + show_type(t->a) + " -> " + show_type(t->b) + ")";
    case Type::Kind::Prod:
      return "(" + show_type(t->a) + " * " + show_type(t->b) + ")";
    case Type::Kind::Seq: {
      std::string inner = show_type(t->a);
      if (t->a->kind == Type::Kind::Seq) inner = "(" + inner + ")";
      return inner + "^*";
    }
  }
  return "?";
}

}  // namespace nszoo
