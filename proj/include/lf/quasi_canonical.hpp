#pragma once

// Label-free, beta-normal, eta-long objects.
//
//   canonical  ::= atomic | λx. canonical
//   atomic     ::= x | c | atomic canonical
//
// The split into two handle types makes "no redex at a spine head"
// a property of the representation. Binders are locally nameless, as in
// syntax.hpp.

#include <cstdint>
#include <memory>
#include <set>
#include <variant>

#include "lf/syntax.hpp"

namespace lf {

struct QcAtomicNode;
struct QcCanonicalNode;

class QuasiAtomic {
 public:
  explicit QuasiAtomic(std::shared_ptr<const QcAtomicNode> n) : node_(std::move(n)) {}
  const QcAtomicNode& node() const { return *node_; }
  template <class T>
  const T* as() const;

 private:
  std::shared_ptr<const QcAtomicNode> node_;
};

class QuasiCanonical {
 public:
  explicit QuasiCanonical(std::shared_ptr<const QcCanonicalNode> n) : node_(std::move(n)) {}
  const QcCanonicalNode& node() const { return *node_; }
  template <class T>
  const T* as() const;

 private:
  std::shared_ptr<const QcCanonicalNode> node_;
};

namespace qc {
struct Var {
  Name name;
};
struct BVar {
  std::uint32_t index;
};
struct Const {
  Name name;
};
struct App {
  QuasiAtomic fun;
  QuasiCanonical arg;
};
struct Atomic {
  QuasiAtomic atom;
};
struct Lam {
  Name hint;
  QuasiCanonical body;  // binds BVar 0
};
}  // namespace qc

struct QcAtomicNode {
  std::variant<qc::Var, qc::BVar, qc::Const, qc::App> v;
};
struct QcCanonicalNode {
  std::variant<qc::Atomic, qc::Lam> v;
};

template <class T>
const T* QuasiAtomic::as() const {
  return std::get_if<T>(&node_->v);
}
template <class T>
const T* QuasiCanonical::as() const {
  return std::get_if<T>(&node_->v);
}

inline const auto& view(const QuasiAtomic& q) { return q.node().v; }
inline const auto& view(const QuasiCanonical& q) { return q.node().v; }

namespace qc {

inline QuasiAtomic make(Var x) { return QuasiAtomic(std::make_shared<const QcAtomicNode>(QcAtomicNode{std::move(x)})); }
inline QuasiAtomic make(BVar x) { return QuasiAtomic(std::make_shared<const QcAtomicNode>(QcAtomicNode{x})); }
inline QuasiAtomic make(Const c) { return QuasiAtomic(std::make_shared<const QcAtomicNode>(QcAtomicNode{std::move(c)})); }
inline QuasiAtomic make(App a) { return QuasiAtomic(std::make_shared<const QcAtomicNode>(QcAtomicNode{std::move(a)})); }
inline QuasiCanonical make(Atomic a) {
  return QuasiCanonical(std::make_shared<const QcCanonicalNode>(QcCanonicalNode{std::move(a)}));
}
inline QuasiCanonical make(Lam l) {
  return QuasiCanonical(std::make_shared<const QcCanonicalNode>(QcCanonicalNode{std::move(l)}));
}

inline QuasiAtomic var(Name x) { return make(Var{std::move(x)}); }
inline QuasiAtomic cnst(Name c) { return make(Const{std::move(c)}); }
inline QuasiAtomic app(QuasiAtomic f, QuasiCanonical a) { return make(App{std::move(f), std::move(a)}); }
inline QuasiCanonical atomic(QuasiAtomic a) { return make(Atomic{std::move(a)}); }
inline QuasiAtomic app(QuasiAtomic f, std::initializer_list<QuasiCanonical> args) {
  for (const auto& a : args) f = app(std::move(f), a);
  return f;
}
inline QuasiCanonical app_c(QuasiAtomic f, std::initializer_list<QuasiCanonical> args) {
  return atomic(app(std::move(f), args));
}
inline QuasiCanonical var_c(Name x) { return atomic(var(std::move(x))); }
inline QuasiCanonical cnst_c(Name c) { return atomic(cnst(std::move(c))); }

namespace detail {

struct Abstract {
  const Name& name;
  QuasiAtomic operator()(const QuasiAtomic& q, std::uint32_t d) const {
    return std::visit(overloaded{
                          [&](const Var& x) { return x.name == name ? make(BVar{d}) : q; },
                          [&](const BVar& b) { return b.index >= d ? make(BVar{b.index + 1}) : q; },
                          [&](const Const&) { return q; },
                          [&](const App& a) { return make(App{(*this)(a.fun, d), (*this)(a.arg, d)}); },
                      },
                      view(q));
  }
  QuasiCanonical operator()(const QuasiCanonical& q, std::uint32_t d) const {
    return std::visit(overloaded{
                          [&](const Atomic& a) { return make(Atomic{(*this)(a.atom, d)}); },
                          [&](const Lam& l) { return make(Lam{l.hint, (*this)(l.body, d + 1)}); },
                      },
                      view(q));
  }
};

// Instantiation with a variable keeps the form quasi-canonical.
struct OpenWith {
  const Name& name;
  QuasiAtomic operator()(const QuasiAtomic& q, std::uint32_t d) const {
    return std::visit(overloaded{
                          [&](const BVar& b) {
                            if (b.index == d) return make(Var{name});
                            if (b.index > d) return make(BVar{b.index - 1});
                            return q;
                          },
                          [&](const App& a) { return make(App{(*this)(a.fun, d), (*this)(a.arg, d)}); },
                          [&](const auto&) { return q; },
                      },
                      view(q));
  }
  QuasiCanonical operator()(const QuasiCanonical& q, std::uint32_t d) const {
    return std::visit(overloaded{
                          [&](const Atomic& a) { return make(Atomic{(*this)(a.atom, d)}); },
                          [&](const Lam& l) { return make(Lam{l.hint, (*this)(l.body, d + 1)}); },
                      },
                      view(q));
  }
};

}  // namespace detail

/// λx. body, where `body` mentions x free.
inline QuasiCanonical lam(const Name& x, const QuasiCanonical& body) {
  return make(Lam{x, detail::Abstract{x}(body, 0)});
}
inline QuasiCanonical close(const QuasiCanonical& q, const Name& x) { return detail::Abstract{x}(q, 0); }
inline QuasiCanonical open(const QuasiCanonical& body, const Name& x) { return detail::OpenWith{x}(body, 0); }

}  // namespace qc

inline bool alpha_equal(const QuasiAtomic& p, const QuasiAtomic& q);
inline bool alpha_equal(const QuasiCanonical& p, const QuasiCanonical& q);

inline bool alpha_equal(const QuasiAtomic& p, const QuasiAtomic& q) {
  if (view(p).index() != view(q).index()) return false;
  return std::visit(overloaded{
                        [&](const qc::Var& x) { return x.name == q.as<qc::Var>()->name; },
                        [&](const qc::BVar& b) { return b.index == q.as<qc::BVar>()->index; },
                        [&](const qc::Const& c) { return c.name == q.as<qc::Const>()->name; },
                        [&](const qc::App& a) {
                          const auto& r = *q.as<qc::App>();
                          return alpha_equal(a.fun, r.fun) && alpha_equal(a.arg, r.arg);
                        },
                    },
                    view(p));
}

inline bool alpha_equal(const QuasiCanonical& p, const QuasiCanonical& q) {
  if (view(p).index() != view(q).index()) return false;
  if (const auto* a = p.as<qc::Atomic>()) return alpha_equal(a->atom, q.as<qc::Atomic>()->atom);
  return alpha_equal(p.as<qc::Lam>()->body, q.as<qc::Lam>()->body);
}

/// The variable or constant at the head of a spine.
inline const QuasiAtomic& spine_head(const QuasiAtomic& q) {
  const QuasiAtomic* cur = &q;
  while (const auto* a = cur->as<qc::App>()) cur = &a->fun;
  return *cur;
}

inline void collect_free_vars(const QuasiAtomic& q, std::set<Name>& out);
inline void collect_free_vars(const QuasiCanonical& q, std::set<Name>& out) {
  if (const auto* a = q.as<qc::Atomic>())
    collect_free_vars(a->atom, out);
  else
    collect_free_vars(q.as<qc::Lam>()->body, out);
}
inline void collect_free_vars(const QuasiAtomic& q, std::set<Name>& out) {
  std::visit(overloaded{
                 [&](const qc::Var& x) { out.insert(x.name); },
                 [&](const qc::App& a) {
                   collect_free_vars(a.fun, out);
                   collect_free_vars(a.arg, out);
                 },
                 [](const auto&) {},
             },
             view(q));
}

template <class Q>
std::set<Name> qc_free_vars(const Q& q) {
  std::set<Name> out;
  collect_free_vars(q, out);
  return out;
}

// ---------------------------------------------------------------------------
// Label-free objects: |M|, an object with the lambda annotations erased.
// Unlike quasi-canonical forms these may contain redexes.
// ---------------------------------------------------------------------------

struct BareNode;

class BareObject {
 public:
  explicit BareObject(std::shared_ptr<const BareNode> n) : node_(std::move(n)) {}
  const BareNode& node() const { return *node_; }
  template <class T>
  const T* as() const;

 private:
  std::shared_ptr<const BareNode> node_;
};

namespace bare {
struct Var {
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
  BareObject body;
};
struct App {
  BareObject fun;
  BareObject arg;
};
}  // namespace bare

struct BareNode {
  std::variant<bare::Var, bare::BVar, bare::Const, bare::Lam, bare::App> v;
};

template <class T>
const T* BareObject::as() const {
  return std::get_if<T>(&node_->v);
}
inline const auto& view(const BareObject& b) { return b.node().v; }

namespace bare {
template <class Alt>
BareObject make(Alt alt) {
  return BareObject(std::make_shared<const BareNode>(BareNode{std::move(alt)}));
}
}  // namespace bare

inline bool alpha_equal(const BareObject& p, const BareObject& q) {
  if (view(p).index() != view(q).index()) return false;
  return std::visit(overloaded{
                        [&](const bare::Var& x) { return x.name == q.as<bare::Var>()->name; },
                        [&](const bare::BVar& b) { return b.index == q.as<bare::BVar>()->index; },
                        [&](const bare::Const& c) { return c.name == q.as<bare::Const>()->name; },
                        [&](const bare::Lam& l) { return alpha_equal(l.body, q.as<bare::Lam>()->body); },
                        [&](const bare::App& a) {
                          const auto& r = *q.as<bare::App>();
                          return alpha_equal(a.fun, r.fun) && alpha_equal(a.arg, r.arg);
                        },
                    },
                    view(p));
}

inline BareObject to_bare(const QuasiAtomic& q);
inline BareObject to_bare(const QuasiCanonical& q) {
  if (const auto* a = q.as<qc::Atomic>()) return to_bare(a->atom);
  const auto& l = *q.as<qc::Lam>();
  return bare::make(bare::Lam{l.hint, to_bare(l.body)});
}
inline BareObject to_bare(const QuasiAtomic& q) {
  return std::visit(overloaded{
                        [](const qc::Var& x) { return bare::make(bare::Var{x.name}); },
                        [](const qc::BVar& b) { return bare::make(bare::BVar{b.index}); },
                        [](const qc::Const& c) { return bare::make(bare::Const{c.name}); },
                        [](const qc::App& a) { return bare::make(bare::App{to_bare(a.fun), to_bare(a.arg)}); },
                    },
                    view(q));
}

}  // namespace lf
