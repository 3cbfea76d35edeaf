#pragma once

// Quasi-canonical forms: extraction through the instrumented equality
// algorithm, label erasure, and elaboration back to a fully labelled object.

#include <optional>
#include <string>
#include <utility>

#include "lf/diagnostic.hpp"
#include "lf/equality.hpp"
#include "lf/quasi_canonical.hpp"
#include "lf/typecheck.hpp"

namespace lf {

struct Extraction {
  EqOutcome outcome;
  std::optional<QuasiCanonical> form;  // present exactly when outcome is equal

  explicit operator bool() const { return outcome.ok(); }
};

/// Runs obj_eq instrumented to emit the common quasi-canonical form of m and
/// n. Succeeds exactly when obj_eq does.
inline Extraction qc_extract(const Signature& sig, const SimpleContext& d, const Object& m, const Object& n,
                             const SimpleType& t, std::uint64_t fuel = kDefaultFuel) {
  Fuel budget(fuel);
  std::optional<QuasiCanonical> form;
  auto outcome = detail::run_comparison([&](EqOutcome&) {
    SimpleContext work = d;
    form = detail::Comparator(sig, budget, true).objects(work, m, n, t);
  });
  if (!outcome) form.reset();
  return {std::move(outcome), std::move(form)};
}

/// The quasi-canonical form of a well-typed object, read off the derivation
/// of Γ⁻ ⊢ M <=> M : A⁻.
inline Result<QuasiCanonical> canonicalize(const CheckedSignature& sig, const Context& g, const Object& m,
                                           const Family& a, std::uint64_t fuel = kDefaultFuel) {
  auto ex = qc_extract(sig.signature(), erase_context(g), m, m, erase_family(a), fuel);
  if (ex) return std::move(*ex.form);
  Diagnostic d;
  d.judgment = "canonicalizing `" + print(m) + "` at `" + print(a) + "`";
  if (ex.outcome.status == EqStatus::fuel_exhausted) {
    d.kind = DiagKind::fuel;
    d.reason = ex.outcome.mismatch ? ex.outcome.mismatch->reason : "reduction budget exhausted";
  } else {
    d.kind = DiagKind::type;
    d.reason = "no quasi-canonical form at " + erase_family(a).to_string();
    if (ex.outcome.mismatch) d.reason += ": " + ex.outcome.mismatch->to_string();
  }
  return d;
}

/// |M|: the object with its abstraction labels erased.
inline BareObject strip_labels(const Object& m) {
  return std::visit(overloaded{
                        [](const FVar& x) { return bare::make(bare::Var{x.name}); },
                        [](const BVar& b) { return bare::make(bare::BVar{b.index}); },
                        [](const Const& c) { return bare::make(bare::Const{c.name}); },
                        [](const Lam& l) { return bare::make(bare::Lam{l.hint, strip_labels(l.body)}); },
                        [](const App& a) { return bare::make(bare::App{strip_labels(a.fun), strip_labels(a.arg)}); },
                    },
                    view(m));
}

namespace detail {

// Restores abstraction labels from the expected product types; spine heads
// synthesize their types so that arguments are checked against the right
// domains.
class Elaborator {
 public:
  Elaborator(const Signature& sig, Checker& checker) : sig_(sig), checker_(checker) {}

  Object canonical(Scope& s, const QuasiCanonical& q, const Family& a) {
    if (const auto* l = q.as<qc::Lam>()) {
      const auto* pi = a.as<Pi>();
      if (!pi)
        throw Checker::error(DiagKind::type, "shape mismatch: abstraction `" + print(q) + "` at non-product type",
                             "a product type", print(a));
      auto x = unused_name(l->hint, s.g);
      s.push(x, pi->dom);
      Object body = canonical(s, qc::open(l->body, x), open(pi->cod, x));
      s.pop();
      return make(Lam{l->hint, pi->dom, close(body, x)});
    }
    if (a.as<Pi>())
      throw Checker::error(DiagKind::type, "shape mismatch: atomic form `" + print(q) + "` at product type",
                           "an abstraction", print(q));
    auto [n, found] = atomic(s, q.as<qc::Atomic>()->atom);
    checker_.convert(s, a, found, "`" + print(q) + "` does not have the expected type");
    return n;
  }

  std::pair<Object, Family> atomic(Scope& s, const QuasiAtomic& q) {
    return std::visit(
        overloaded{
            [&](const qc::Var& x) -> std::pair<Object, Family> {
              if (const Family* t = s.g.find(x.name)) return {var(x.name), *t};
              throw Checker::error(DiagKind::scope, "unbound variable `" + x.name + "`");
            },
            [&](const qc::BVar&) -> std::pair<Object, Family> {
              throw Checker::error(DiagKind::scope, "dangling bound variable");
            },
            [&](const qc::Const& c) -> std::pair<Object, Family> {
              if (const Family* t = sig_.object_type(c.name)) return {cnst(c.name), *t};
              throw Checker::error(DiagKind::scope, "unknown object constant `" + c.name + "`");
            },
            [&](const qc::App& ap) -> std::pair<Object, Family> {
              auto [fun, type] = atomic(s, ap.fun);
              const auto* pi = type.as<Pi>();
              if (!pi)
                throw Checker::error(DiagKind::type, "`" + print(ap.fun) + "` is applied to too many arguments",
                                     "a product type", print(type));
              Object arg = canonical(s, ap.arg, pi->dom);
              Family result = instantiate(pi->cod, arg);
              return {app(std::move(fun), arg), std::move(result)};
            },
        },
        view(q));
  }

 private:
  const Signature& sig_;
  Checker& checker_;
};

}  // namespace detail

/// An object N with |N| = q and Γ ⊢ N : A. Labels come from the domains of
/// the expected and synthesized product types.
inline Result<Object> elaborate_qc(const CheckedSignature& sig, const Context& g, const QuasiCanonical& q,
                                   const Family& a, std::uint64_t fuel = kDefaultFuel) {
  return detail::guarded([&] {
    Fuel budget(fuel);
    detail::Checker checker(sig.signature(), budget);
    detail::Scope scope(g);
    checker.check_scoped(scope, a);
    checker.require_type(scope, a);
    for (const auto& x : qc_free_vars(q))
      if (!scope.g.contains(x)) throw detail::Checker::error(DiagKind::scope, "unbound variable `" + x + "`");
    return detail::Elaborator(sig.signature(), checker).canonical(scope, q, a);
  });
}

}  // namespace lf
