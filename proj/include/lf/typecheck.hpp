#pragma once

// Bottom-up type synthesis for objects, families and kinds, plus validation
// of signatures and contexts and the top-level equality decision.
//
// Conversion happens in exactly two places: at the domain of an application
// (the argument's synthesized type must equal the function's domain) and in
// check_object, where the synthesized type is compared with the expected one.

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "lf/diagnostic.hpp"
#include "lf/equality.hpp"
#include "lf/erasure.hpp"
#include "lf/print.hpp"
#include "lf/syntax.hpp"

namespace lf {

class CheckedSignature;
inline Result<CheckedSignature> check_signature(const Signature& decls, std::uint64_t fuel);

/// A signature whose declarations were each validated against their prefix.
class CheckedSignature {
 public:
  CheckedSignature() = default;

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return sig_.size(); }

 private:
  friend Result<CheckedSignature> check_signature(const Signature& decls, std::uint64_t fuel);
  Signature sig_;
};

namespace detail {

/// A context together with its erasure, extended and shrunk in lockstep.
struct Scope {
  Context g;
  SimpleContext d;

  explicit Scope(const Context& ctx = {}) : g(ctx), d(erase_context(ctx)) {}

  void push(const Name& x, const Family& a) {
    g.push(x, a);
    d.push(x, erase_family(a));
  }
  void pop() {
    g.pop();
    d.pop();
  }
};

class Checker {
 public:
  Checker(const Signature& sig, Fuel& fuel) : sig_(sig), fuel_(fuel) {}

  Family synth_object(Scope& s, const Object& m) {
    return std::visit(
        overloaded{
            [&](const FVar& x) -> Family {
              if (const Family* a = s.g.find(x.name)) return *a;
              throw error(DiagKind::scope, "unbound variable `" + x.name + "`");
            },
            [&](const BVar&) -> Family { throw error(DiagKind::scope, "dangling bound variable"); },
            [&](const Const& c) -> Family {
              if (const Family* a = sig_.object_type(c.name)) return *a;
              if (sig_.family_kind(c.name))
                throw error(DiagKind::scope, "family constant `" + c.name + "` used as an object");
              throw error(DiagKind::scope, "unknown constant `" + c.name + "`");
            },
            [&](const Lam& l) -> Family {
              return traced([&] { return "abstraction `" + print(m) + "`"; },
                            [&] {
                              require_type(s, l.ann);
                              auto x = unused_name(l.hint, s.g);
                              s.push(x, l.ann);
                              Family body = synth_object(s, open(l.body, x));
                              s.pop();
                              return make(Pi{l.hint, l.ann, close(body, x)});
                            });
            },
            [&](const App& a) -> Family {
              return traced([&] { return "application `" + print(m) + "`"; },
                            [&] {
                              Family fun = synth_object(s, a.fun);
                              const auto* pi = fun.as<Pi>();
                              if (!pi)
                                throw error(DiagKind::type, "`" + print(a.fun) + "` is applied but is not a function",
                                            "a product type", print(fun));
                              Family arg = synth_object(s, a.arg);
                              convert(s, pi->dom, arg, "argument `" + print(a.arg) + "` has the wrong type");
                              return instantiate(pi->cod, a.arg);
                            });
            },
        },
        view(m));
  }

  Kind synth_family(Scope& s, const Family& a) {
    return std::visit(
        overloaded{
            [&](const FamConst& c) -> Kind {
              if (const Kind* k = sig_.family_kind(c.name)) return *k;
              if (sig_.object_type(c.name))
                throw error(DiagKind::scope, "object constant `" + c.name + "` used as a family");
              throw error(DiagKind::scope, "unknown family constant `" + c.name + "`");
            },
            [&](const FamApp& f) -> Kind {
              return traced([&] { return "family application `" + print(a) + "`"; },
                            [&] {
                              Kind k = synth_family(s, f.fam);
                              const auto* pk = k.as<PiKind>();
                              if (!pk)
                                throw error(DiagKind::type, "`" + print(f.fam) + "` is applied to too many arguments",
                                            "a product kind", print(k));
                              Family arg = synth_object(s, f.arg);
                              convert(s, pk->dom, arg, "index `" + print(f.arg) + "` has the wrong type");
                              return instantiate(pk->cod, f.arg);
                            });
            },
            [&](const Pi& p) -> Kind {
              return traced([&] { return "product `" + print(a) + "`"; },
                            [&] {
                              require_type(s, p.dom);
                              auto x = unused_name(p.hint, s.g);
                              s.push(x, p.dom);
                              require_type(s, open(p.cod, x));
                              s.pop();
                              return type_kind();
                            });
            },
        },
        view(a));
  }

  void synth_kind(Scope& s, const Kind& k) {
    const auto* p = k.as<PiKind>();
    if (!p) return;
    traced([&] { return "kind `" + print(k) + "`"; },
           [&] {
             require_type(s, p->dom);
             auto x = unused_name(p->hint, s.g);
             s.push(x, p->dom);
             synth_kind(s, open(p->cod, x));
             s.pop();
             return 0;
           });
  }

  /// The family must synthesize kind `type`.
  void require_type(Scope& s, const Family& a) {
    Kind k = synth_family(s, a);
    if (!k.as<TypeKind>())
      throw error(DiagKind::type, "`" + print(a) + "` is not a type", "type", print(k));
  }

  /// expected <=> found : type-, or a diagnostic carrying `what`.
  void convert(Scope& s, const Family& expected, const Family& found, const std::string& what) {
    auto eq = fam_eq(sig_, s.d, expected, found, SimpleKind::type_minus(), fuel_);
    if (eq.status == EqStatus::fuel_exhausted) throw error(DiagKind::fuel, eq.mismatch->reason);
    if (!eq) {
      auto d = make_diag(DiagKind::type, what, print(expected), print(found));
      d.trace.push_back("comparing types: " + eq.mismatch->to_string());
      throw DiagnosticError(std::move(d));
    }
  }

  /// Every free variable is declared in the scope and no bound index dangles.
  template <class Term>
  void check_scoped(const Scope& s, const Term& t) {
    for (const auto& x : free_vars(t))
      if (!s.g.contains(x)) throw error(DiagKind::scope, "unbound variable `" + x + "`");
    if (!is_locally_closed(t)) throw error(DiagKind::scope, "dangling bound variable");
  }

  static Diagnostic make_diag(DiagKind kind, std::string reason, std::string expected = {}, std::string found = {}) {
    Diagnostic d;
    d.kind = kind;
    d.reason = std::move(reason);
    d.expected = std::move(expected);
    d.found = std::move(found);
    return d;
  }

  static DiagnosticError error(DiagKind kind, std::string reason, std::string expected = {}, std::string found = {}) {
    return DiagnosticError(make_diag(kind, std::move(reason), std::move(expected), std::move(found)));
  }

 private:
  // Runs `body`; on failure records `describe()` as an enclosing judgment.
  template <class Describe, class Body>
  auto traced(Describe&& describe, Body&& body) -> decltype(body()) {
    try {
      return body();
    } catch (DiagnosticError& e) {
      auto& d = e.diagnostic();
      if (d.judgment.empty())
        d.judgment = "checking " + describe();
      else if (d.trace.size() < 8)
        d.trace.insert(d.trace.begin(), describe());
      throw;
    }
  }

  const Signature& sig_;
  Fuel& fuel_;
};

template <class Body>
auto guarded(Body&& body) -> Result<decltype(body())> {
  try {
    return body();
  } catch (DiagnosticError& e) {
    return e.diagnostic();
  } catch (const FuelExhausted& e) {
    return Checker::make_diag(DiagKind::fuel, e.what());
  }
}

}  // namespace detail

/// Validates declarations in order, each against the preceding ones.
inline Result<CheckedSignature> check_signature(const Signature& decls, std::uint64_t fuel = kDefaultFuel) {
  CheckedSignature out;
  for (const auto& decl : decls) {
    auto checked = detail::guarded([&] {
      if (out.sig_.find(decl.name))
        throw detail::Checker::error(DiagKind::type, "constant `" + decl.name + "` is declared more than once");
      Fuel budget(fuel);
      detail::Checker checker(out.sig_, budget);
      detail::Scope scope;
      std::visit(overloaded{
                     [&](const Kind& k) {
                       checker.check_scoped(scope, k);
                       checker.synth_kind(scope, k);
                     },
                     [&](const Family& a) {
                       checker.check_scoped(scope, a);
                       checker.require_type(scope, a);
                     },
                 },
                 decl.classifier);
      return 0;
    });
    if (!checked) {
      Diagnostic d = checked.error();
      d.span = decl.span;
      d.trace.insert(d.trace.begin(), "declaration of `" + decl.name + "`");
      return d;
    }
    out.sig_.add(decl);
  }
  return out;
}

/// Each declared family must be a type in the preceding context.
inline Verdict check_context(const CheckedSignature& sig, const Context& g, std::uint64_t fuel = kDefaultFuel) {
  return detail::guarded([&] {
    Fuel budget(fuel);
    detail::Checker checker(sig.signature(), budget);
    detail::Scope scope;
    for (const auto& [x, a] : g) {
      if (scope.g.contains(x))
        throw detail::Checker::error(DiagKind::type, "variable `" + x + "` is declared more than once");
      try {
        checker.check_scoped(scope, a);
        checker.require_type(scope, a);
      } catch (DiagnosticError& e) {
        e.diagnostic().trace.insert(e.diagnostic().trace.begin(), "context entry `" + x + "`");
        throw;
      }
      scope.push(x, a);
    }
    return std::monostate{};
  });
}

/// Γ ⊢ M ⇒ A.
inline Result<Family> synth_object(const CheckedSignature& sig, const Context& g, const Object& m,
                                   std::uint64_t fuel = kDefaultFuel) {
  return detail::guarded([&] {
    Fuel budget(fuel);
    detail::Checker checker(sig.signature(), budget);
    detail::Scope scope(g);
    checker.check_scoped(scope, m);
    return checker.synth_object(scope, m);
  });
}

/// Γ ⊢ A ⇒ K.
inline Result<Kind> synth_family(const CheckedSignature& sig, const Context& g, const Family& a,
                                 std::uint64_t fuel = kDefaultFuel) {
  return detail::guarded([&] {
    Fuel budget(fuel);
    detail::Checker checker(sig.signature(), budget);
    detail::Scope scope(g);
    checker.check_scoped(scope, a);
    return checker.synth_family(scope, a);
  });
}

/// Γ ⊢ K ⇒ kind.
inline Verdict synth_kind(const CheckedSignature& sig, const Context& g, const Kind& k,
                          std::uint64_t fuel = kDefaultFuel) {
  return detail::guarded([&] {
    Fuel budget(fuel);
    detail::Checker checker(sig.signature(), budget);
    detail::Scope scope(g);
    checker.check_scoped(scope, k);
    checker.synth_kind(scope, k);
    return std::monostate{};
  });
}

/// Γ ⊢ M : A, decided as: A is a type, M ⇒ A', and A' <=> A : type-.
inline Verdict check_object(const CheckedSignature& sig, const Context& g, const Object& m, const Family& a,
                            std::uint64_t fuel = kDefaultFuel) {
  return detail::guarded([&] {
    Fuel budget(fuel);
    detail::Checker checker(sig.signature(), budget);
    detail::Scope scope(g);
    checker.check_scoped(scope, a);
    checker.require_type(scope, a);
    checker.check_scoped(scope, m);
    Family found = checker.synth_object(scope, m);
    checker.convert(scope, a, found, "`" + print(m) + "` does not have the expected type");
    return std::monostate{};
  });
}

/// Γ ⊢ M = N : A. Typing diagnostics are returned as errors; a well-typed but
/// unequal pair yields an outcome with status not_equal.
inline Result<EqOutcome> def_equal_objects(const CheckedSignature& sig, const Context& g, const Object& m,
                                           const Object& n, const Family& a, std::uint64_t fuel = kDefaultFuel) {
  if (auto v = check_object(sig, g, m, a, fuel); !v) return v.error();
  if (auto v = check_object(sig, g, n, a, fuel); !v) return v.error();
  auto outcome = obj_eq(sig.signature(), erase_context(g), m, n, erase_family(a), fuel);
  if (outcome.status == EqStatus::fuel_exhausted)
    return detail::Checker::make_diag(DiagKind::fuel, outcome.mismatch->reason);
  return outcome;
}

}  // namespace lf
