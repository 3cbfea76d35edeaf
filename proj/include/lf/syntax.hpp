#pragma once

// Three-level LF syntax: objects, families, kinds.
//
// Terms are locally nameless. Bound variables are de Bruijn indices (BVar),
// free variables carry names (FVar). Binders keep a display hint so that
// printing can reproduce the user's names; hints never affect equality, so
// alpha-equivalence is plain structural equality.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace lf {

using Name = std::string;

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

// ---------------------------------------------------------------------------
// Fresh names
// ---------------------------------------------------------------------------

// Generated names have the form `hint#N`. '#' never occurs in a parsed
// identifier, so generated names cannot collide with user names.
inline std::string_view display_name(std::string_view name) {
  auto pos = name.find('#');
  return pos == std::string_view::npos ? name : name.substr(0, pos);
}

inline bool is_generated_name(std::string_view name) {
  return name.find('#') != std::string_view::npos;
}

inline Name fresh_name(std::string_view hint) {
  static std::atomic<std::uint64_t> counter{0};
  auto base = display_name(hint);
  if (base.empty() || base == "_") base = "x";
  return std::string(base) + "#" + std::to_string(++counter);
}

// ---------------------------------------------------------------------------
// Term handles
// ---------------------------------------------------------------------------

struct ObjectNode;
struct FamilyNode;
struct KindNode;

class Object {
 public:
  explicit Object(std::shared_ptr<const ObjectNode> node) : node_(std::move(node)) {}
  const ObjectNode& node() const { return *node_; }
  template <class T>
  const T* as() const;
  bool same_node(const Object& other) const { return node_ == other.node_; }

 private:
  std::shared_ptr<const ObjectNode> node_;
};

class Family {
 public:
  explicit Family(std::shared_ptr<const FamilyNode> node) : node_(std::move(node)) {}
  const FamilyNode& node() const { return *node_; }
  template <class T>
  const T* as() const;
  bool same_node(const Family& other) const { return node_ == other.node_; }

 private:
  std::shared_ptr<const FamilyNode> node_;
};

class Kind {
 public:
  explicit Kind(std::shared_ptr<const KindNode> node) : node_(std::move(node)) {}
  const KindNode& node() const { return *node_; }
  template <class T>
  const T* as() const;
  bool same_node(const Kind& other) const { return node_ == other.node_; }

 private:
  std::shared_ptr<const KindNode> node_;
};

// Object constructors
struct FVar {
  Name name;
};
struct BVar {
  std::uint32_t index;
};
struct Const {
  Name name;
};
struct Lam {
  Name hint;
  Family ann;
  Object body;  // binds BVar 0
};
struct App {
  Object fun;
  Object arg;
};

// Family constructors
struct FamConst {
  Name name;
};
struct FamApp {
  Family fam;
  Object arg;
};
struct Pi {
  Name hint;
  Family dom;
  Family cod;  // binds BVar 0
};

// Kind constructors
struct TypeKind {};
struct PiKind {
  Name hint;
  Family dom;
  Kind cod;  // binds BVar 0
};

struct ObjectNode {
  std::variant<FVar, BVar, Const, Lam, App> v;
};
struct FamilyNode {
  std::variant<FamConst, FamApp, Pi> v;
};
struct KindNode {
  std::variant<TypeKind, PiKind> v;
};

template <class T>
const T* Object::as() const {
  return std::get_if<T>(&node_->v);
}
template <class T>
const T* Family::as() const {
  return std::get_if<T>(&node_->v);
}
template <class T>
const T* Kind::as() const {
  return std::get_if<T>(&node_->v);
}

inline const auto& view(const Object& m) { return m.node().v; }
inline const auto& view(const Family& a) { return a.node().v; }
inline const auto& view(const Kind& k) { return k.node().v; }

// Raw (locally nameless) constructors.
inline Object make(FVar x) { return Object(std::make_shared<const ObjectNode>(ObjectNode{std::move(x)})); }
inline Object make(BVar x) { return Object(std::make_shared<const ObjectNode>(ObjectNode{x})); }
inline Object make(Const c) { return Object(std::make_shared<const ObjectNode>(ObjectNode{std::move(c)})); }
inline Object make(Lam l) { return Object(std::make_shared<const ObjectNode>(ObjectNode{std::move(l)})); }
inline Object make(App a) { return Object(std::make_shared<const ObjectNode>(ObjectNode{std::move(a)})); }
inline Family make(FamConst a) { return Family(std::make_shared<const FamilyNode>(FamilyNode{std::move(a)})); }
inline Family make(FamApp a) { return Family(std::make_shared<const FamilyNode>(FamilyNode{std::move(a)})); }
inline Family make(Pi p) { return Family(std::make_shared<const FamilyNode>(FamilyNode{std::move(p)})); }
inline Kind make(TypeKind) { return Kind(std::make_shared<const KindNode>(KindNode{TypeKind{}})); }
inline Kind make(PiKind p) { return Kind(std::make_shared<const KindNode>(KindNode{std::move(p)})); }

// ---------------------------------------------------------------------------
// Locally nameless machinery
// ---------------------------------------------------------------------------

namespace detail {

// Adds `by` to every bound index >= cutoff.
inline Object shift(const Object& m, std::uint32_t by, std::uint32_t cutoff);
inline Family shift(const Family& a, std::uint32_t by, std::uint32_t cutoff);

inline Object shift(const Object& m, std::uint32_t by, std::uint32_t cutoff) {
  if (by == 0) return m;
  return std::visit(
      overloaded{
          [&](const BVar& b) { return b.index >= cutoff ? make(BVar{b.index + by}) : m; },
          [&](const Lam& l) {
            return make(Lam{l.hint, shift(l.ann, by, cutoff), shift(l.body, by, cutoff + 1)});
          },
          [&](const App& a) { return make(App{shift(a.fun, by, cutoff), shift(a.arg, by, cutoff)}); },
          [&](const auto&) { return m; },
      },
      view(m));
}

inline Family shift(const Family& a, std::uint32_t by, std::uint32_t cutoff) {
  if (by == 0) return a;
  return std::visit(
      overloaded{
          [&](const FamConst&) { return a; },
          [&](const FamApp& f) { return make(FamApp{shift(f.fam, by, cutoff), shift(f.arg, by, cutoff)}); },
          [&](const Pi& p) {
            return make(Pi{p.hint, shift(p.dom, by, cutoff), shift(p.cod, by, cutoff + 1)});
          },
      },
      view(a));
}

// One past the largest loose bound index (0 when locally closed).
inline std::uint32_t loose_bound(const Object& m, std::uint32_t depth = 0);
inline std::uint32_t loose_bound(const Family& a, std::uint32_t depth = 0);

inline std::uint32_t loose_bound(const Object& m, std::uint32_t depth) {
  return std::visit(
      overloaded{
          [&](const BVar& b) -> std::uint32_t { return b.index >= depth ? b.index - depth + 1 : 0; },
          [&](const Lam& l) { return std::max(loose_bound(l.ann, depth), loose_bound(l.body, depth + 1)); },
          [&](const App& a) { return std::max(loose_bound(a.fun, depth), loose_bound(a.arg, depth)); },
          [&](const auto&) -> std::uint32_t { return 0; },
      },
      view(m));
}

inline std::uint32_t loose_bound(const Family& a, std::uint32_t depth) {
  return std::visit(
      overloaded{
          [&](const FamConst&) -> std::uint32_t { return 0; },
          [&](const FamApp& f) { return std::max(loose_bound(f.fam, depth), loose_bound(f.arg, depth)); },
          [&](const Pi& p) { return std::max(loose_bound(p.dom, depth), loose_bound(p.cod, depth + 1)); },
      },
      view(a));
}

// Replaces BVar `depth` by `arg` (shifted under the binders crossed) and
// lowers the indices above it: the body of a binder, with the binder removed.
struct Instantiate {
  const Object& arg;
  bool arg_closed;

  Object arg_at(std::uint32_t depth) const { return arg_closed ? arg : shift(arg, depth, 0); }

  Object operator()(const Object& m, std::uint32_t depth) const {
    return std::visit(
        overloaded{
            [&](const BVar& b) {
              if (b.index == depth) return arg_at(depth);
              if (b.index > depth) return make(BVar{b.index - 1});
              return m;
            },
            [&](const Lam& l) { return make(Lam{l.hint, (*this)(l.ann, depth), (*this)(l.body, depth + 1)}); },
            [&](const App& a) { return make(App{(*this)(a.fun, depth), (*this)(a.arg, depth)}); },
            [&](const auto&) { return m; },
        },
        view(m));
  }
  Family operator()(const Family& a, std::uint32_t depth) const {
    return std::visit(
        overloaded{
            [&](const FamConst&) { return a; },
            [&](const FamApp& f) { return make(FamApp{(*this)(f.fam, depth), (*this)(f.arg, depth)}); },
            [&](const Pi& p) { return make(Pi{p.hint, (*this)(p.dom, depth), (*this)(p.cod, depth + 1)}); },
        },
        view(a));
  }
  Kind operator()(const Kind& k, std::uint32_t depth) const {
    return std::visit(
        overloaded{
            [&](const TypeKind&) { return k; },
            [&](const PiKind& p) { return make(PiKind{p.hint, (*this)(p.dom, depth), (*this)(p.cod, depth + 1)}); },
        },
        view(k));
  }
};

// Turns FVar `name` into BVar `depth`, raising loose indices to make room for
// the new binder.
struct Abstract {
  const Name& name;

  Object operator()(const Object& m, std::uint32_t depth) const {
    return std::visit(
        overloaded{
            [&](const FVar& x) { return x.name == name ? make(BVar{depth}) : m; },
            [&](const BVar& b) { return b.index >= depth ? make(BVar{b.index + 1}) : m; },
            [&](const Lam& l) { return make(Lam{l.hint, (*this)(l.ann, depth), (*this)(l.body, depth + 1)}); },
            [&](const App& a) { return make(App{(*this)(a.fun, depth), (*this)(a.arg, depth)}); },
            [&](const Const&) { return m; },
        },
        view(m));
  }
  Family operator()(const Family& a, std::uint32_t depth) const {
    return std::visit(
        overloaded{
            [&](const FamConst&) { return a; },
            [&](const FamApp& f) { return make(FamApp{(*this)(f.fam, depth), (*this)(f.arg, depth)}); },
            [&](const Pi& p) { return make(Pi{p.hint, (*this)(p.dom, depth), (*this)(p.cod, depth + 1)}); },
        },
        view(a));
  }
  Kind operator()(const Kind& k, std::uint32_t depth) const {
    return std::visit(
        overloaded{
            [&](const TypeKind&) { return k; },
            [&](const PiKind& p) { return make(PiKind{p.hint, (*this)(p.dom, depth), (*this)(p.cod, depth + 1)}); },
        },
        view(k));
  }
};

}  // namespace detail

/// Substitutes `arg` for the outermost bound variable of a binder body.
template <class Term>
Term instantiate(const Term& body, const Object& arg) {
  return detail::Instantiate{arg, detail::loose_bound(arg) == 0}(body, 0);
}

/// Opens a binder body with the free variable `x`.
template <class Term>
Term open(const Term& body, const Name& x) {
  return instantiate(body, make(FVar{x}));
}

/// Closes over the free variable `x`, producing a binder body.
template <class Term>
Term close(const Term& term, const Name& x) {
  return detail::Abstract{x}(term, 0);
}

// ---------------------------------------------------------------------------
// Named constructors
// ---------------------------------------------------------------------------

inline Object var(Name x) { return make(FVar{std::move(x)}); }
inline Object cnst(Name c) { return make(Const{std::move(c)}); }
inline Object app(Object f, Object a) { return make(App{std::move(f), std::move(a)}); }
inline Object app(Object f, std::initializer_list<Object> args) {
  for (const auto& a : args) f = app(std::move(f), a);
  return f;
}
/// λx:A. body, where `body` mentions x as a free variable.
inline Object lam(const Name& x, Family ann, const Object& body) {
  return make(Lam{x, std::move(ann), close(body, x)});
}

inline Family fam(Name a) { return make(FamConst{std::move(a)}); }
inline Family fam_app(Family a, Object m) { return make(FamApp{std::move(a), std::move(m)}); }
inline Family fam_app(Family a, std::initializer_list<Object> args) {
  for (const auto& m : args) a = fam_app(std::move(a), m);
  return a;
}
/// Πx:A. B, where `cod` mentions x as a free variable.
inline Family pi(const Name& x, Family dom, const Family& cod) { return make(Pi{x, std::move(dom), close(cod, x)}); }
/// Non-dependent A -> B.
inline Family arrow(Family dom, const Family& cod) {
  return make(Pi{"_", std::move(dom), detail::shift(cod, 1, 0)});
}

inline Kind type_kind() { return make(TypeKind{}); }
inline Kind pi_kind(const Name& x, Family dom, const Kind& cod) { return make(PiKind{x, std::move(dom), close(cod, x)}); }
inline Kind arrow_kind(Family dom, const Kind& cod) {
  // Abstracting a name that never occurs only raises loose indices.
  return make(PiKind{"_", std::move(dom), close(cod, Name("#"))});
}

// ---------------------------------------------------------------------------
// Alpha-equivalence
// ---------------------------------------------------------------------------

inline bool alpha_equal(const Object& m, const Object& n);
inline bool alpha_equal(const Family& a, const Family& b);
inline bool alpha_equal(const Kind& k, const Kind& l);

inline bool alpha_equal(const Object& m, const Object& n) {
  if (m.same_node(n)) return true;
  if (view(m).index() != view(n).index()) return false;
  return std::visit(
      overloaded{
          [&](const FVar& x) { return x.name == n.as<FVar>()->name; },
          [&](const BVar& x) { return x.index == n.as<BVar>()->index; },
          [&](const Const& c) { return c.name == n.as<Const>()->name; },
          [&](const Lam& l) {
            const auto& r = *n.as<Lam>();
            return alpha_equal(l.ann, r.ann) && alpha_equal(l.body, r.body);
          },
          [&](const App& a) {
            const auto& r = *n.as<App>();
            return alpha_equal(a.fun, r.fun) && alpha_equal(a.arg, r.arg);
          },
      },
      view(m));
}

inline bool alpha_equal(const Family& a, const Family& b) {
  if (a.same_node(b)) return true;
  if (view(a).index() != view(b).index()) return false;
  return std::visit(
      overloaded{
          [&](const FamConst& c) { return c.name == b.as<FamConst>()->name; },
          [&](const FamApp& f) {
            const auto& r = *b.as<FamApp>();
            return alpha_equal(f.fam, r.fam) && alpha_equal(f.arg, r.arg);
          },
          [&](const Pi& p) {
            const auto& r = *b.as<Pi>();
            return alpha_equal(p.dom, r.dom) && alpha_equal(p.cod, r.cod);
          },
      },
      view(a));
}

inline bool alpha_equal(const Kind& k, const Kind& l) {
  if (k.same_node(l)) return true;
  if (view(k).index() != view(l).index()) return false;
  if (k.as<TypeKind>()) return true;
  const auto& p = *k.as<PiKind>();
  const auto& r = *l.as<PiKind>();
  return alpha_equal(p.dom, r.dom) && alpha_equal(p.cod, r.cod);
}

// ---------------------------------------------------------------------------
// Free variables, constants, bound-variable occurrence
// ---------------------------------------------------------------------------

namespace detail {

struct Collector {
  std::set<Name>* vars = nullptr;
  std::set<Name>* consts = nullptr;

  void operator()(const Object& m) const {
    std::visit(overloaded{
                   [&](const FVar& x) {
                     if (vars) vars->insert(x.name);
                   },
                   [&](const Const& c) {
                     if (consts) consts->insert(c.name);
                   },
                   [&](const BVar&) {},
                   [&](const Lam& l) {
                     (*this)(l.ann);
                     (*this)(l.body);
                   },
                   [&](const App& a) {
                     (*this)(a.fun);
                     (*this)(a.arg);
                   },
               },
               view(m));
  }
  void operator()(const Family& a) const {
    std::visit(overloaded{
                   [&](const FamConst& c) {
                     if (consts) consts->insert(c.name);
                   },
                   [&](const FamApp& f) {
                     (*this)(f.fam);
                     (*this)(f.arg);
                   },
                   [&](const Pi& p) {
                     (*this)(p.dom);
                     (*this)(p.cod);
                   },
               },
               view(a));
  }
  void operator()(const Kind& k) const {
    if (const auto* p = k.as<PiKind>()) {
      (*this)(p->dom);
      (*this)(p->cod);
    }
  }
};

}  // namespace detail

template <class Term>
std::set<Name> free_vars(const Term& t) {
  std::set<Name> out;
  detail::Collector{&out, nullptr}(t);
  return out;
}

template <class Term>
std::set<Name> constants_of(const Term& t) {
  std::set<Name> out;
  detail::Collector{nullptr, &out}(t);
  return out;
}

namespace detail {
inline bool occurs(const Object& m, std::uint32_t d);
inline bool occurs(const Family& a, std::uint32_t d) {
  return std::visit(overloaded{
                        [&](const FamConst&) { return false; },
                        [&](const FamApp& f) { return occurs(f.fam, d) || occurs(f.arg, d); },
                        [&](const Pi& p) { return occurs(p.dom, d) || occurs(p.cod, d + 1); },
                    },
                    view(a));
}
inline bool occurs(const Object& m, std::uint32_t d) {
  return std::visit(overloaded{
                        [&](const BVar& b) { return b.index == d; },
                        [&](const Lam& l) { return occurs(l.ann, d) || occurs(l.body, d + 1); },
                        [&](const App& a) { return occurs(a.fun, d) || occurs(a.arg, d); },
                        [&](const auto&) { return false; },
                    },
                    view(m));
}
inline bool occurs(const Kind& k, std::uint32_t d) {
  if (const auto* p = k.as<PiKind>()) return occurs(p->dom, d) || occurs(p->cod, d + 1);
  return false;
}
inline std::uint32_t loose_bound(const Kind& k, std::uint32_t depth = 0) {
  if (const auto* p = k.as<PiKind>()) return std::max(loose_bound(p->dom, depth), loose_bound(p->cod, depth + 1));
  return 0;
}
}  // namespace detail

/// No dangling bound indices.
template <class Term>
bool is_locally_closed(const Term& t) {
  return detail::loose_bound(t) == 0;
}

/// True when a binder body refers to its own bound variable.
inline bool binds_occurrence(const Object& body) { return detail::occurs(body, 0); }
inline bool binds_occurrence(const Family& body) { return detail::occurs(body, 0); }
inline bool binds_occurrence(const Kind& body) { return detail::occurs(body, 0); }

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace detail {

// Replaces free variables through `lookup`; the replacement is shifted under
// the binders it crosses.
template <class Lookup>
struct Replace {
  Lookup lookup;

  Object operator()(const Object& m, std::uint32_t depth) const {
    return std::visit(
        overloaded{
            [&](const FVar& x) {
              const Object* r = lookup(x.name);
              if (!r) return m;
              return depth == 0 ? *r : shift(*r, depth, 0);
            },
            [&](const Lam& l) { return make(Lam{l.hint, (*this)(l.ann, depth), (*this)(l.body, depth + 1)}); },
            [&](const App& a) { return make(App{(*this)(a.fun, depth), (*this)(a.arg, depth)}); },
            [&](const auto&) { return m; },
        },
        view(m));
  }
  Family operator()(const Family& a, std::uint32_t depth) const {
    return std::visit(
        overloaded{
            [&](const FamConst&) { return a; },
            [&](const FamApp& f) { return make(FamApp{(*this)(f.fam, depth), (*this)(f.arg, depth)}); },
            [&](const Pi& p) { return make(Pi{p.hint, (*this)(p.dom, depth), (*this)(p.cod, depth + 1)}); },
        },
        view(a));
  }
  Kind operator()(const Kind& k, std::uint32_t depth) const {
    return std::visit(
        overloaded{
            [&](const TypeKind&) { return k; },
            [&](const PiKind& p) { return make(PiKind{p.hint, (*this)(p.dom, depth), (*this)(p.cod, depth + 1)}); },
        },
        view(k));
  }
};

template <class Lookup>
Replace(Lookup) -> Replace<Lookup>;

}  // namespace detail

/// [n/x]t. Capture cannot occur: bound variables are indices.
template <class Term>
Term subst_single(const Term& t, const Name& x, const Object& n) {
  return detail::Replace{[&](const Name& y) -> const Object* { return y == x ? &n : nullptr; }}(t, 0);
}

class UnboundVariableError : public std::runtime_error {
 public:
  explicit UnboundVariableError(const Name& x)
      : std::runtime_error("unbound variable `" + x + "` outside substitution domain"), name_(x) {}
  const Name& name() const { return name_; }

 private:
  Name name_;
};

/// A simultaneous substitution M1/x1, ..., Mn/xn with an ordered domain.
class Substitution {
 public:
  Substitution() = default;

  /// Extends with M/x. Binding the same variable twice is rejected.
  Substitution& bind(Name x, Object m) {
    if (index_.count(x)) throw std::invalid_argument("variable `" + x + "` bound twice in substitution");
    index_.emplace(x, entries_.size());
    entries_.emplace_back(std::move(x), std::move(m));
    return *this;
  }

  const Object* find(const Name& x) const {
    auto it = index_.find(x);
    return it == index_.end() ? nullptr : &entries_[it->second].second;
  }

  std::vector<Name> domain() const {
    std::vector<Name> out;
    out.reserve(entries_.size());
    for (const auto& [x, m] : entries_) out.push_back(x);
    return out;
  }

  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::vector<std::pair<Name, Object>> entries_;
  std::unordered_map<Name, std::size_t> index_;
};

/// t[σ]. Throws UnboundVariableError when a free variable of `t` lies
/// outside the domain of `s`.
template <class Term>
Term subst_simul(const Term& t, const Substitution& s) {
  return detail::Replace{[&](const Name& y) -> const Object* {
    const Object* r = s.find(y);
    if (!r) throw UnboundVariableError(y);
    return r;
  }}(t, 0);
}

// ---------------------------------------------------------------------------
// Signatures and contexts
// ---------------------------------------------------------------------------

struct SourceSpan {
  std::string file;
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
  std::string to_string() const {
    if (!known()) return file;
    return file + ":" + std::to_string(line) + ":" + std::to_string(column);
  }
};

/// `a : K` (family constant) or `c : A` (object constant).
struct Declaration {
  Name name;
  std::variant<Kind, Family> classifier;
  SourceSpan span{};

  bool declares_family() const { return std::holds_alternative<Kind>(classifier); }
  const Kind* kind() const { return std::get_if<Kind>(&classifier); }
  const Family* type() const { return std::get_if<Family>(&classifier); }
};

/// Ordered declarations. Duplicates are kept (and rejected by
/// check_signature); lookup resolves to the first declaration of a name.
class Signature {
 public:
  Signature() = default;

  void add(Declaration d) {
    index_.try_emplace(d.name, decls_.size());
    decls_.push_back(std::move(d));
  }
  void add_family(Name a, Kind k) { add({std::move(a), std::move(k), {}}); }
  void add_object(Name c, Family t) { add({std::move(c), std::move(t), {}}); }

  const Declaration* find(const Name& c) const {
    auto it = index_.find(c);
    return it == index_.end() ? nullptr : &decls_[it->second];
  }
  const Kind* family_kind(const Name& a) const {
    const auto* d = find(a);
    return d ? d->kind() : nullptr;
  }
  const Family* object_type(const Name& c) const {
    const auto* d = find(c);
    return d ? d->type() : nullptr;
  }

  std::size_t size() const { return decls_.size(); }
  bool empty() const { return decls_.empty(); }
  const Declaration& operator[](std::size_t i) const { return decls_[i]; }
  auto begin() const { return decls_.begin(); }
  auto end() const { return decls_.end(); }

 private:
  std::vector<Declaration> decls_;
  std::unordered_map<Name, std::size_t> index_;
};

/// Ordered variable declarations x1:A1, ..., xn:An.
template <class Classifier>
class BasicContext {
 public:
  using Entry = std::pair<Name, Classifier>;

  BasicContext() = default;
  BasicContext(std::initializer_list<Entry> entries) {
    for (const auto& [x, a] : entries) push(x, a);
  }

  void push(Name x, Classifier a) { entries_.emplace_back(std::move(x), std::move(a)); }
  void pop() { entries_.pop_back(); }

  BasicContext extended(Name x, Classifier a) const {
    BasicContext out = *this;
    out.push(std::move(x), std::move(a));
    return out;
  }

  /// The innermost declaration of x, if any.
  const Classifier* find(const Name& x) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
      if (it->first == x) return &it->second;
    return nullptr;
  }
  bool contains(const Name& x) const { return find(x) != nullptr; }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Copy without the i-th declaration.
  BasicContext without(std::size_t i) const {
    BasicContext out;
    for (std::size_t j = 0; j < entries_.size(); ++j)
      if (j != i) out.entries_.push_back(entries_[j]);
    return out;
  }
  /// Copy with `e` inserted before position i.
  BasicContext inserted(std::size_t i, Entry e) const {
    BasicContext out = *this;
    out.entries_.insert(out.entries_.begin() + static_cast<std::ptrdiff_t>(i), std::move(e));
    return out;
  }

 private:
  std::vector<Entry> entries_;
};

using Context = BasicContext<Family>;

/// id_Γ: maps every declared variable to itself, in declaration order.
inline Substitution identity_subst(const Context& g) {
  Substitution s;
  for (const auto& [x, a] : g) s.bind(x, var(x));
  return s;
}

/// A name based on `hint` that is not declared in `ctx` and not in `avoid`.
template <class Classifier>
Name unused_name(std::string_view hint, const BasicContext<Classifier>& ctx, const std::set<Name>& avoid = {}) {
  Name x(display_name(hint));
  if (x.empty() || x == "_") x = "x";
  while (ctx.contains(x) || avoid.count(x)) x += '\'';
  return x;
}

}  // namespace lf
