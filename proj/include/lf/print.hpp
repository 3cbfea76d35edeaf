#pragma once

// Concrete syntax printer (Twelf style). Output re-parses to an
// alpha-equivalent term: binder names are renamed with primes when they would
// capture a free variable, a constant, or an outer binder used in the body.
//
//   {x:A} B     dependent product
//   A -> B      non-dependent product (right associative)
//   [x:A] M     abstraction;  [x] M for quasi-canonical forms
//   M N         application (left associative)

#include <set>
#include <string>
#include <vector>

#include "lf/erasure.hpp"
#include "lf/quasi_canonical.hpp"
#include "lf/syntax.hpp"

namespace lf {

namespace detail {

class Printer {
 public:
  // Precedence of the position being printed into.
  enum Prec { kTop = 0, kOperand = 1, kAtom = 2 };

  std::string object(const Object& m, int prec = kTop) {
    return std::visit(
        overloaded{
            [&](const FVar& x) { return x.name; },
            [&](const BVar& b) { return bound(b.index); },
            [&](const Const& c) { return c.name; },
            [&](const Lam& l) {
              auto ann = family(l.ann);
              auto x = pick(l.hint, used_in(l.body));
              env_.push_back(x);
              auto body = object(l.body);
              env_.pop_back();
              return paren(prec > kTop, "[" + x + ":" + ann + "] " + body);
            },
            [&](const App& a) { return paren(prec > kOperand, object(a.fun, kOperand) + " " + object(a.arg, kAtom)); },
        },
        view(m));
  }

  std::string family(const Family& a, int prec = kTop) {
    return std::visit(overloaded{
                          [&](const FamConst& c) { return c.name; },
                          [&](const FamApp& f) {
                            return paren(prec > kOperand, family(f.fam, kOperand) + " " + object(f.arg, kAtom));
                          },
                          [&](const Pi& p) { return product(p.hint, p.dom, p.cod, prec); },
                      },
                      view(a));
  }

  std::string kind(const Kind& k, int prec = kTop) {
    if (const auto* p = k.as<PiKind>()) return product(p->hint, p->dom, p->cod, prec);
    return "type";
  }

  std::string canonical(const QuasiCanonical& q, int prec = kTop) {
    if (const auto* a = q.as<qc::Atomic>()) return atomic(a->atom, prec);
    const auto& l = *q.as<qc::Lam>();
    auto x = pick(l.hint, used_in(l.body));
    env_.push_back(x);
    auto body = canonical(l.body);
    env_.pop_back();
    return paren(prec > kTop, "[" + x + "] " + body);
  }

  std::string atomic(const QuasiAtomic& q, int prec = kTop) {
    return std::visit(overloaded{
                          [&](const qc::Var& x) { return x.name; },
                          [&](const qc::BVar& b) { return bound(b.index); },
                          [&](const qc::Const& c) { return c.name; },
                          [&](const qc::App& a) {
                            return paren(prec > kOperand, atomic(a.fun, kOperand) + " " + canonical(a.arg, kAtom));
                          },
                      },
                      view(q));
  }

  std::string bare(const BareObject& b, int prec = kTop) {
    return std::visit(overloaded{
                          [&](const bare::Var& x) { return x.name; },
                          [&](const bare::BVar& v) { return bound(v.index); },
                          [&](const bare::Const& c) { return c.name; },
                          [&](const bare::Lam& l) {
                            auto x = pick(l.hint, used_in(l.body));
                            env_.push_back(x);
                            auto body = bare(l.body);
                            env_.pop_back();
                            return paren(prec > kTop, "[" + x + "] " + body);
                          },
                          [&](const bare::App& a) {
                            return paren(prec > kOperand, bare(a.fun, kOperand) + " " + bare(a.arg, kAtom));
                          },
                      },
                      view(b));
  }

 private:
  template <class Body>
  std::string product(const Name& hint, const Family& dom, const Body& cod, int prec) {
    auto d = family(dom, binds_occurrence(cod) ? kTop : kOperand);
    if (!binds_occurrence(cod)) {
      env_.push_back("_");
      auto c = print(cod);
      env_.pop_back();
      return paren(prec > kTop, d + " -> " + c);
    }
    auto x = pick(hint, used_in(cod));
    env_.push_back(x);
    auto c = print(cod);
    env_.pop_back();
    return paren(prec > kTop, "{" + x + ":" + d + "} " + c);
  }

  std::string print(const Family& a) { return family(a); }
  std::string print(const Kind& k) { return kind(k); }

  std::string bound(std::uint32_t index) const {
    if (index >= env_.size()) return "?" + std::to_string(index);
    return env_[env_.size() - 1 - index];
  }

  static std::string paren(bool on, std::string s) { return on ? "(" + s + ")" : s; }

  std::string pick(const Name& hint, const std::set<std::string>& used) const {
    std::string x(display_name(hint));
    if (x.empty() || x == "_") x = "x";
    while (used.count(x)) x += '\'';
    return x;
  }

  // Names the body of a binder can see: free variables, constants, and the
  // printed names of enclosing binders it refers to.
  template <class Body>
  std::set<std::string> used_in(const Body& body) const {
    std::set<std::string> out;
    collect(body, 1, out);
    return out;
  }

  void note_bound(std::uint32_t index, std::uint32_t depth, std::set<std::string>& out) const {
    if (index >= depth) {
      auto outer = index - depth;
      if (outer < env_.size()) out.insert(env_[env_.size() - 1 - outer]);
    }
  }

  void collect(const Object& m, std::uint32_t depth, std::set<std::string>& out) const {
    std::visit(overloaded{
                   [&](const FVar& x) { out.insert(x.name); },
                   [&](const Const& c) { out.insert(c.name); },
                   [&](const BVar& b) { note_bound(b.index, depth, out); },
                   [&](const Lam& l) {
                     collect(l.ann, depth, out);
                     collect(l.body, depth + 1, out);
                   },
                   [&](const App& a) {
                     collect(a.fun, depth, out);
                     collect(a.arg, depth, out);
                   },
               },
               view(m));
  }
  void collect(const Family& a, std::uint32_t depth, std::set<std::string>& out) const {
    std::visit(overloaded{
                   [&](const FamConst& c) { out.insert(c.name); },
                   [&](const FamApp& f) {
                     collect(f.fam, depth, out);
                     collect(f.arg, depth, out);
                   },
                   [&](const Pi& p) {
                     collect(p.dom, depth, out);
                     collect(p.cod, depth + 1, out);
                   },
               },
               view(a));
  }
  void collect(const Kind& k, std::uint32_t depth, std::set<std::string>& out) const {
    if (const auto* p = k.as<PiKind>()) {
      collect(p->dom, depth, out);
      collect(p->cod, depth + 1, out);
    }
  }
  void collect(const QuasiCanonical& q, std::uint32_t depth, std::set<std::string>& out) const {
    if (const auto* a = q.as<qc::Atomic>())
      collect(a->atom, depth, out);
    else
      collect(q.as<qc::Lam>()->body, depth + 1, out);
  }
  void collect(const BareObject& b, std::uint32_t depth, std::set<std::string>& out) const {
    std::visit(overloaded{
                   [&](const bare::Var& x) { out.insert(x.name); },
                   [&](const bare::Const& c) { out.insert(c.name); },
                   [&](const bare::BVar& v) { note_bound(v.index, depth, out); },
                   [&](const bare::Lam& l) { collect(l.body, depth + 1, out); },
                   [&](const bare::App& a) {
                     collect(a.fun, depth, out);
                     collect(a.arg, depth, out);
                   },
               },
               view(b));
  }
  void collect(const QuasiAtomic& q, std::uint32_t depth, std::set<std::string>& out) const {
    std::visit(overloaded{
                   [&](const qc::Var& x) { out.insert(x.name); },
                   [&](const qc::Const& c) { out.insert(c.name); },
                   [&](const qc::BVar& b) { note_bound(b.index, depth, out); },
                   [&](const qc::App& a) {
                     collect(a.fun, depth, out);
                     collect(a.arg, depth, out);
                   },
               },
               view(q));
  }

  std::vector<std::string> env_;
};

}  // namespace detail

inline std::string print(const Object& m) { return detail::Printer{}.object(m); }
inline std::string print(const Family& a) { return detail::Printer{}.family(a); }
inline std::string print(const Kind& k) { return detail::Printer{}.kind(k); }
inline std::string print(const QuasiCanonical& q) { return detail::Printer{}.canonical(q); }
inline std::string print(const QuasiAtomic& q) { return detail::Printer{}.atomic(q); }
inline std::string print(const BareObject& b) { return detail::Printer{}.bare(b); }
inline std::string print(const SimpleType& t) { return t.to_string(); }
inline std::string print(const SimpleKind& k) { return k.to_string(); }

inline std::string print(const Declaration& d) {
  return d.name + " : " + std::visit([](const auto& c) { return print(c); }, d.classifier) + ".";
}

inline std::string print(const Signature& sig) {
  std::string out;
  for (const auto& d : sig) out += print(d) + "\n";
  return out;
}

/// `x:A, y:B`, the format accepted by --ctx.
inline std::string print(const Context& g) {
  std::string out;
  for (const auto& [x, a] : g) {
    if (!out.empty()) out += ", ";
    out += x + ":" + print(a);
  }
  return out;
}

}  // namespace lf
