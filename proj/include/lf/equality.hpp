#pragma once

// Algorithmic definitional equality, directed by erased simple classifiers.
//
// Type-directed object equality (M <=> N : t):
//   at t1 -> t2   compare M x and N x at t2 for a fresh x:t1 (extensionality)
//   at a base     reduce both sides to weak head normal form, then compare
//                 structurally; the structural type must be that base
// Structural object equality (M <-> N : t) synthesizes t:
//   identical variables or constants yield their declared (erased) type;
//   applications compare functions structurally and arguments type-directed
//   at the function's domain.
// Families and kinds follow the same pattern, with no reduction.
//
// The comparator can additionally emit the common quasi-canonical form of the
// two objects (see canonical.hpp); equality and extraction share this single
// recursion.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lf/erasure.hpp"
#include "lf/print.hpp"
#include "lf/quasi_canonical.hpp"
#include "lf/reduction.hpp"
#include "lf/syntax.hpp"

namespace lf {

struct Mismatch {
  std::vector<std::string> path;  // root first
  std::string reason;

  std::string to_string() const {
    std::string out;
    for (const auto& step : path) out += step + ": ";
    return out + reason;
  }
};

enum class EqStatus { equal, not_equal, fuel_exhausted };

struct EqOutcome {
  EqStatus status = EqStatus::equal;
  std::optional<SimpleType> type;  // structural object equality
  std::optional<SimpleKind> kind;  // structural family equality
  std::optional<Mismatch> mismatch;

  bool ok() const { return status == EqStatus::equal; }
  explicit operator bool() const { return ok(); }
};

namespace detail {

struct NotEqual {
  Mismatch mismatch;
};

class Comparator {
 public:
  Comparator(const Signature& sig, Fuel& fuel, bool emit) : sig_(sig), fuel_(fuel), emit_(emit) {}

  struct Structural {
    SimpleType type;
    std::optional<QuasiAtomic> form;
  };

  std::optional<QuasiCanonical> objects(SimpleContext& d, const Object& m, const Object& n, const SimpleType& t) {
    if (const auto* arrow = t.as_arrow()) {
      auto x = fresh_name(binder_hint(m, n));
      d.push(x, arrow->dom);
      path_.push_back("under " + std::string(display_name(x)));
      auto body = objects(d, app(m, var(x)), app(n, var(x)), arrow->cod);
      path_.pop_back();
      d.pop();
      if (!emit_) return std::nullopt;
      return qc::make(qc::Lam{Name(display_name(x)), qc::close(*body, x)});
    }
    auto s = structural(d, whnf(m, fuel_), whnf(n, fuel_));
    if (s.type != t) fail("structural type " + s.type.to_string() + " where " + t.to_string() + " was expected");
    if (!emit_) return std::nullopt;
    return qc::atomic(std::move(*s.form));
  }

  Structural structural(SimpleContext& d, const Object& m, const Object& n) {
    std::vector<Object> margs, nargs;
    const Object& mh = unwind(m, margs);
    const Object& nh = unwind(n, nargs);
    check_head_shape(mh, margs.empty());
    check_head_shape(nh, nargs.empty());

    std::string head_name;
    SimpleType type = head_type(d, mh, nh, head_name);
    if (margs.size() != nargs.size())
      fail("`" + head_name + "` applied to " + std::to_string(margs.size()) + " vs " + std::to_string(nargs.size()) +
           " arguments");

    std::optional<QuasiAtomic> form;
    if (emit_) form = mh.as<FVar>() ? qc::var(head_name) : qc::cnst(head_name);
    for (std::size_t i = 0; i < margs.size(); ++i) {
      const auto* arrow = type.as_arrow();
      if (!arrow) fail("`" + head_name + "` of type " + type.to_string() + " applied to too many arguments");
      path_.push_back("argument " + std::to_string(i + 1) + " of " + head_name);
      auto arg = objects(d, margs[i], nargs[i], arrow->dom);
      path_.pop_back();
      if (emit_) form = qc::app(std::move(*form), std::move(*arg));
      type = arrow->cod;
    }
    return {type, std::move(form)};
  }

  void families(SimpleContext& d, const Family& a, const Family& b, const SimpleKind& k) {
    if (const auto* arrow = k.as_arrow()) {
      auto x = fresh_name("x");
      d.push(x, arrow->dom);
      families(d, fam_app(a, var(x)), fam_app(b, var(x)), arrow->cod);
      d.pop();
      return;
    }
    const auto* pa = a.as<Pi>();
    const auto* pb = b.as<Pi>();
    if (pa && pb) {
      path_.push_back("domain");
      families(d, pa->dom, pb->dom, SimpleKind::type_minus());
      path_.pop_back();
      auto x = fresh_name(pa->hint);
      d.push(x, erase_family(pa->dom));
      path_.push_back("codomain");
      families(d, open(pa->cod, x), open(pb->cod, x), SimpleKind::type_minus());
      path_.pop_back();
      d.pop();
      return;
    }
    if (pa || pb) fail("product `" + print(pa ? a : b) + "` vs atomic family `" + print(pa ? b : a) + "`");
    auto kind = families_structural(d, a, b);
    if (!kind.is_type()) fail("family `" + print(a) + "` has kind " + kind.to_string() + ", not type-");
  }

  SimpleKind families_structural(SimpleContext& d, const Family& a, const Family& b) {
    std::vector<Object> aargs, bargs;
    const Family& ah = unwind(a, aargs);
    const Family& bh = unwind(b, bargs);
    const auto* ca = ah.as<FamConst>();
    const auto* cb = bh.as<FamConst>();
    if (!ca || !cb) fail("product in head position of a family application");
    if (ca->name != cb->name) fail("family head mismatch: `" + ca->name + "` vs `" + cb->name + "`");
    const Kind* declared = sig_.family_kind(ca->name);
    if (!declared) fail("unknown family constant `" + ca->name + "`");
    if (aargs.size() != bargs.size())
      fail("`" + ca->name + "` applied to " + std::to_string(aargs.size()) + " vs " + std::to_string(bargs.size()) +
           " arguments");

    SimpleKind kind = erase_kind(*declared);
    for (std::size_t i = 0; i < aargs.size(); ++i) {
      const auto* arrow = kind.as_arrow();
      if (!arrow) fail("`" + ca->name + "` applied to too many arguments");
      path_.push_back("argument " + std::to_string(i + 1) + " of " + ca->name);
      objects(d, aargs[i], bargs[i], arrow->dom);
      path_.pop_back();
      kind = arrow->cod;
    }
    return kind;
  }

  void kinds(SimpleContext& d, const Kind& k, const Kind& l) {
    const auto* pk = k.as<PiKind>();
    const auto* pl = l.as<PiKind>();
    if (!pk && !pl) return;
    if (!pk || !pl) fail("kind shape mismatch: `" + print(k) + "` vs `" + print(l) + "`");
    path_.push_back("domain");
    families(d, pk->dom, pl->dom, SimpleKind::type_minus());
    path_.pop_back();
    auto x = fresh_name(pk->hint);
    d.push(x, erase_family(pk->dom));
    path_.push_back("codomain");
    kinds(d, open(pk->cod, x), open(pl->cod, x));
    path_.pop_back();
    d.pop();
  }

 private:
  [[noreturn]] void fail(std::string reason) const { throw NotEqual{Mismatch{path_, std::move(reason)}}; }

  static std::string binder_hint(const Object& m, const Object& n) {
    if (const auto* l = m.as<Lam>()) return l->hint;
    if (const auto* l = n.as<Lam>()) return l->hint;
    return "x";
  }

  static const Object& unwind(const Object& m, std::vector<Object>& args) {
    const Object* cur = &m;
    while (const auto* a = cur->as<App>()) {
      args.push_back(a->arg);
      cur = &a->fun;
    }
    std::reverse(args.begin(), args.end());
    return *cur;
  }

  static const Family& unwind(const Family& a, std::vector<Object>& args) {
    const Family* cur = &a;
    while (const auto* f = cur->as<FamApp>()) {
      args.push_back(f->arg);
      cur = &f->fam;
    }
    std::reverse(args.begin(), args.end());
    return *cur;
  }

  void check_head_shape(const Object& head, bool no_args) const {
    if (head.as<Lam>()) fail(no_args ? "abstraction `" + print(head) + "` compared structurally"
                                     : "head redex at `" + print(head) + "`: term is not weak head normal");
    if (head.as<BVar>()) fail("dangling bound variable");
  }

  SimpleType head_type(const SimpleContext& d, const Object& mh, const Object& nh, std::string& name) const {
    if (const auto* x = mh.as<FVar>()) {
      const auto* y = nh.as<FVar>();
      if (!y || x->name != y->name) fail("head mismatch: `" + print(mh) + "` vs `" + print(nh) + "`");
      const SimpleType* t = d.find(x->name);
      if (!t) fail("unbound variable `" + x->name + "`");
      name = x->name;
      return *t;
    }
    const auto& c = *mh.as<Const>();
    const auto* e = nh.as<Const>();
    if (!e || c.name != e->name) fail("head mismatch: `" + print(mh) + "` vs `" + print(nh) + "`");
    const Family* a = sig_.object_type(c.name);
    if (!a) fail("unknown object constant `" + c.name + "`");
    name = c.name;
    return erase_family(*a);
  }

  const Signature& sig_;
  Fuel& fuel_;
  bool emit_;
  std::vector<std::string> path_;
};

template <class Body>
EqOutcome run_comparison(Body&& body) {
  EqOutcome out;
  try {
    body(out);
  } catch (NotEqual& e) {
    out = EqOutcome{EqStatus::not_equal, std::nullopt, std::nullopt, std::move(e.mismatch)};
  } catch (const FuelExhausted& e) {
    out = EqOutcome{EqStatus::fuel_exhausted, std::nullopt, std::nullopt, Mismatch{{}, e.what()}};
  }
  return out;
}

}  // namespace detail

/// Δ ⊢ M <=> N : t. Meaningful when M and N are well-typed at a common family
/// erasing to t.
inline EqOutcome obj_eq(const Signature& sig, const SimpleContext& d, const Object& m, const Object& n,
                        const SimpleType& t, Fuel& fuel) {
  return detail::run_comparison([&](EqOutcome&) {
    SimpleContext work = d;
    detail::Comparator(sig, fuel, false).objects(work, m, n, t);
  });
}

inline EqOutcome obj_eq(const Signature& sig, const SimpleContext& d, const Object& m, const Object& n,
                        const SimpleType& t, std::uint64_t fuel = kDefaultFuel) {
  Fuel budget(fuel);
  return obj_eq(sig, d, m, n, t, budget);
}

/// Δ ⊢ M <-> N : t, computing t. Both sides are expected in weak head normal
/// form; a remaining head redex is reported as a mismatch.
inline EqOutcome obj_eq_structural(const Signature& sig, const SimpleContext& d, const Object& m, const Object& n,
                                   std::uint64_t fuel = kDefaultFuel) {
  Fuel budget(fuel);
  return detail::run_comparison([&](EqOutcome& out) {
    SimpleContext work = d;
    out.type = detail::Comparator(sig, budget, false).structural(work, m, n).type;
  });
}

inline EqOutcome fam_eq(const Signature& sig, const SimpleContext& d, const Family& a, const Family& b,
                        const SimpleKind& k, Fuel& fuel) {
  return detail::run_comparison([&](EqOutcome&) {
    SimpleContext work = d;
    detail::Comparator(sig, fuel, false).families(work, a, b, k);
  });
}

inline EqOutcome fam_eq(const Signature& sig, const SimpleContext& d, const Family& a, const Family& b,
                        const SimpleKind& k, std::uint64_t fuel = kDefaultFuel) {
  Fuel budget(fuel);
  return fam_eq(sig, d, a, b, k, budget);
}

inline EqOutcome fam_eq_structural(const Signature& sig, const SimpleContext& d, const Family& a, const Family& b,
                                   std::uint64_t fuel = kDefaultFuel) {
  Fuel budget(fuel);
  return detail::run_comparison([&](EqOutcome& out) {
    SimpleContext work = d;
    out.kind = detail::Comparator(sig, budget, false).families_structural(work, a, b);
  });
}

inline EqOutcome kind_eq(const Signature& sig, const SimpleContext& d, const Kind& k, const Kind& l,
                         Fuel& fuel) {
  return detail::run_comparison([&](EqOutcome&) {
    SimpleContext work = d;
    detail::Comparator(sig, fuel, false).kinds(work, k, l);
  });
}

inline EqOutcome kind_eq(const Signature& sig, const SimpleContext& d, const Kind& k, const Kind& l,
                         std::uint64_t fuel = kDefaultFuel) {
  Fuel budget(fuel);
  return kind_eq(sig, d, k, l, budget);
}

}  // namespace lf
