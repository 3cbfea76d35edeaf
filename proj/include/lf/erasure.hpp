#pragma once

// Dependency-erased classifiers. Erasure forgets every object argument of a
// family, leaving simple types over the family constants.

#include <memory>
#include <string>
#include <variant>

#include "lf/syntax.hpp"

namespace lf {

struct SimpleTypeNode;
struct SimpleKindNode;
struct SimpleBase;
struct SimpleArrow;
struct SimpleTypeMinus {};
struct SimpleKindArrow;

class SimpleType {
 public:
  using Base = SimpleBase;
  using Arrow = SimpleArrow;

  static SimpleType base(Name a);
  static SimpleType arrow(SimpleType dom, SimpleType cod);

  const Base* as_base() const;
  const Arrow* as_arrow() const;

  friend bool operator==(const SimpleType& s, const SimpleType& t);
  friend bool operator!=(const SimpleType& s, const SimpleType& t) { return !(s == t); }

  std::string to_string() const;

 private:
  explicit SimpleType(std::shared_ptr<const SimpleTypeNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const SimpleTypeNode> node_;
};

struct SimpleBase {
  Name name;
};
struct SimpleArrow {
  SimpleType dom;
  SimpleType cod;
};

struct SimpleTypeNode {
  std::variant<SimpleType::Base, SimpleType::Arrow> v;
};

inline SimpleType SimpleType::base(Name a) {
  return SimpleType(std::make_shared<const SimpleTypeNode>(SimpleTypeNode{Base{std::move(a)}}));
}
inline SimpleType SimpleType::arrow(SimpleType dom, SimpleType cod) {
  return SimpleType(std::make_shared<const SimpleTypeNode>(SimpleTypeNode{Arrow{std::move(dom), std::move(cod)}}));
}
inline const SimpleType::Base* SimpleType::as_base() const { return std::get_if<Base>(&node_->v); }
inline const SimpleType::Arrow* SimpleType::as_arrow() const { return std::get_if<Arrow>(&node_->v); }

inline bool operator==(const SimpleType& s, const SimpleType& t) {
  if (s.node_ == t.node_) return true;
  if (const auto* a = s.as_base()) {
    const auto* b = t.as_base();
    return b && a->name == b->name;
  }
  const auto* b = t.as_arrow();
  return b && s.as_arrow()->dom == b->dom && s.as_arrow()->cod == b->cod;
}

inline std::string SimpleType::to_string() const {
  if (const auto* b = as_base()) return b->name;
  const auto* a = as_arrow();
  auto dom = a->dom.to_string();
  if (a->dom.as_arrow()) dom = "(" + dom + ")";
  return dom + " -> " + a->cod.to_string();
}

class SimpleKind {
 public:
  using TypeMinus = SimpleTypeMinus;
  using Arrow = SimpleKindArrow;

  static SimpleKind type_minus();
  static SimpleKind arrow(SimpleType dom, SimpleKind cod);

  bool is_type() const;
  const Arrow* as_arrow() const;

  friend bool operator==(const SimpleKind& k, const SimpleKind& l);
  friend bool operator!=(const SimpleKind& k, const SimpleKind& l) { return !(k == l); }

  std::string to_string() const;

 private:
  explicit SimpleKind(std::shared_ptr<const SimpleKindNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const SimpleKindNode> node_;
};

struct SimpleKindArrow {
  SimpleType dom;
  SimpleKind cod;
};

struct SimpleKindNode {
  std::variant<SimpleKind::TypeMinus, SimpleKind::Arrow> v;
};

inline SimpleKind SimpleKind::type_minus() {
  static const SimpleKind t(std::make_shared<const SimpleKindNode>(SimpleKindNode{TypeMinus{}}));
  return t;
}
inline SimpleKind SimpleKind::arrow(SimpleType dom, SimpleKind cod) {
  return SimpleKind(std::make_shared<const SimpleKindNode>(SimpleKindNode{Arrow{std::move(dom), std::move(cod)}}));
}
inline bool SimpleKind::is_type() const { return std::holds_alternative<TypeMinus>(node_->v); }
inline const SimpleKind::Arrow* SimpleKind::as_arrow() const { return std::get_if<Arrow>(&node_->v); }

inline bool operator==(const SimpleKind& k, const SimpleKind& l) {
  if (k.node_ == l.node_) return true;
  if (k.is_type() || l.is_type()) return k.is_type() && l.is_type();
  return k.as_arrow()->dom == l.as_arrow()->dom && k.as_arrow()->cod == l.as_arrow()->cod;
}

inline std::string SimpleKind::to_string() const {
  if (is_type()) return "type-";
  const auto* a = as_arrow();
  auto dom = a->dom.to_string();
  if (a->dom.as_arrow()) dom = "(" + dom + ")";
  return dom + " -> " + a->cod.to_string();
}

using SimpleContext = BasicContext<SimpleType>;

inline SimpleType erase_family(const Family& a) {
  return std::visit(overloaded{
                        [](const FamConst& c) { return SimpleType::base(c.name); },
                        [](const FamApp& f) { return erase_family(f.fam); },
                        [](const Pi& p) { return SimpleType::arrow(erase_family(p.dom), erase_family(p.cod)); },
                    },
                    view(a));
}

inline SimpleKind erase_kind(const Kind& k) {
  if (const auto* p = k.as<PiKind>()) return SimpleKind::arrow(erase_family(p->dom), erase_kind(p->cod));
  return SimpleKind::type_minus();
}

inline SimpleContext erase_context(const Context& g) {
  SimpleContext d;
  for (const auto& [x, a] : g) d.push(x, erase_family(a));
  return d;
}

}  // namespace lf
