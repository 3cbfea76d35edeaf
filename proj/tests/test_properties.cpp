#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "support/cases.hpp"
#include "support/oracle.hpp"

using namespace lf;

namespace {

std::uint64_t seed(std::uint64_t salt) { return gen::seed_from_env(7) * 1000003 + salt; }

// Runs `body` on `n` typed pairs from fresh random signatures.
void for_pairs(std::uint64_t salt, int n, const std::function<void(cases::World&, const cases::Pair&)>& body) {
  std::mt19937_64 rng(seed(salt));
  int done = 0;
  while (done < n) {
    auto w = cases::World::random(rng);
    for (int i = 0; i < 10 && done < n; ++i) {
      auto p = cases::pair(*w);
      if (!p) continue;
      body(*w, *p);
      ++done;
    }
  }
}

// ---------------------------------------------------------------------------
// Named reference for substitution: explicit names, capture-avoiding
// substitution by renaming, alpha-equivalence by environment lookup.

struct N;
using NPtr = std::shared_ptr<const N>;
struct N {
  enum K { var, cnst, lam, app } k;
  std::string name;
  NPtr a, b;
};

NPtr nvar(std::string x) { return std::make_shared<const N>(N{N::var, std::move(x), nullptr, nullptr}); }
NPtr ncnst(std::string c) { return std::make_shared<const N>(N{N::cnst, std::move(c), nullptr, nullptr}); }
NPtr nlam(std::string x, NPtr b) { return std::make_shared<const N>(N{N::lam, std::move(x), std::move(b), nullptr}); }
NPtr napp(NPtr f, NPtr a) { return std::make_shared<const N>(N{N::app, "", std::move(f), std::move(a)}); }

int g_named = 0;

NPtr named(const Object& m, std::vector<std::string>& bound) {
  if (const auto* x = m.as<FVar>()) return nvar(x->name);
  if (const auto* b = m.as<BVar>()) return nvar(bound[bound.size() - 1 - b->index]);
  if (const auto* c = m.as<Const>()) return ncnst(c->name);
  if (const auto* l = m.as<Lam>()) {
    // keep the hint whenever that is safe, so that substitution in the
    // reference has to deal with capture itself
    std::string x = l->hint;
    if (free_vars(l->body).count(x) || std::find(bound.begin(), bound.end(), x) != bound.end())
      x = "h" + std::to_string(g_named++);
    bound.push_back(x);
    NPtr body = named(l->body, bound);
    bound.pop_back();
    return nlam(x, body);
  }
  const auto& a = *m.as<App>();
  return napp(named(a.fun, bound), named(a.arg, bound));
}

NPtr named(const Object& m) {
  std::vector<std::string> bound;
  return named(m, bound);
}

void nfree(const NPtr& t, std::set<std::string>& out, std::set<std::string>& bound) {
  switch (t->k) {
    case N::var:
      if (!bound.count(t->name)) out.insert(t->name);
      break;
    case N::lam: {
      bool had = bound.count(t->name);
      bound.insert(t->name);
      nfree(t->a, out, bound);
      if (!had) bound.erase(t->name);
      break;
    }
    case N::app:
      nfree(t->a, out, bound);
      nfree(t->b, out, bound);
      break;
    default:
      break;
  }
}

std::set<std::string> nfree(const NPtr& t) {
  std::set<std::string> out, bound;
  nfree(t, out, bound);
  return out;
}

NPtr nsubst(const NPtr& t, const std::string& x, const NPtr& s) {
  switch (t->k) {
    case N::var:
      return t->name == x ? s : t;
    case N::cnst:
      return t;
    case N::app:
      return napp(nsubst(t->a, x, s), nsubst(t->b, x, s));
    case N::lam: {
      if (t->name == x) return t;
      auto fs = nfree(s);
      if (!fs.count(t->name)) return nlam(t->name, nsubst(t->a, x, s));
      std::string y = "r" + std::to_string(g_named++);
      return nlam(y, nsubst(nsubst(t->a, t->name, nvar(y)), x, s));
    }
  }
  return t;
}

bool nalpha(const NPtr& s, const NPtr& t, std::vector<std::pair<std::string, std::string>>& env) {
  if (s->k != t->k) return false;
  switch (s->k) {
    case N::var:
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == s->name || it->second == t->name) return it->first == s->name && it->second == t->name;
      }
      return s->name == t->name;
    case N::cnst:
      return s->name == t->name;
    case N::app:
      return nalpha(s->a, t->a, env) && nalpha(s->b, t->b, env);
    case N::lam: {
      env.emplace_back(s->name, t->name);
      bool ok = nalpha(s->a, t->a, env);
      env.pop_back();
      return ok;
    }
  }
  return false;
}

bool nalpha(const NPtr& s, const NPtr& t) {
  std::vector<std::pair<std::string, std::string>> env;
  return nalpha(s, t, env);
}

// Untyped random objects over a few free names, with binder hints that
// collide with them.
Object untyped(std::mt19937_64& rng, int depth, std::vector<Name>& scope) {
  static const std::vector<Name> frees{"x", "y", "z", "u"};
  std::uniform_int_distribution<int> r(0, depth <= 0 ? 2 : 5);
  switch (r(rng)) {
    case 0:
      return cnst("c");
    case 1:
    case 2: {
      std::vector<Name> all = frees;
      all.insert(all.end(), scope.begin(), scope.end());
      return var(all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)]);
    }
    case 3: {
      Name x = frees[std::uniform_int_distribution<std::size_t>(0, frees.size() - 1)(rng)];
      Name inner = "_b" + std::to_string(scope.size());
      scope.push_back(inner);
      Object body = untyped(rng, depth - 1, scope);
      scope.pop_back();
      return make(Lam{x, fam("iota"), close(body, inner)});
    }
    default:
      return app(untyped(rng, depth - 1, scope), untyped(rng, depth - 1, scope));
  }
}

Object untyped(std::mt19937_64& rng, int depth) {
  std::vector<Name> scope;
  return untyped(rng, depth, scope);
}

// ---------------------------------------------------------------------------
// syntax

TEST(SyntaxProperty, SubstitutionRespectsAlpha) {
  std::mt19937_64 rng(seed(1));
  for (int i = 0; i < 500; ++i) {
    Object t = untyped(rng, 5);
    Object t2 = cases::rehint(rng, t, {"x", "y", "q", "_"});
    ASSERT_TRUE(alpha_equal(t, t2));
    Object n = untyped(rng, 3);
    EXPECT_TRUE(alpha_equal(subst_single(t, "x", n), subst_single(t2, "x", n))) << print(t);
  }
}

TEST(SyntaxProperty, IdentitySubstitution) {
  for_pairs(2, 300, [](cases::World&, const cases::Pair& p) {
    auto id = identity_subst(p.g);
    EXPECT_TRUE(alpha_equal(subst_simul(p.m, id), p.m));
    EXPECT_TRUE(alpha_equal(subst_simul(p.a, id), p.a));
  });
}

TEST(SyntaxProperty, CompositionAgainstNamedReference) {
  std::mt19937_64 rng(seed(3));
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 500; ++i) {
    Object t = untyped(rng, 5), n = untyped(rng, 3), m = untyped(rng, 3);
    if (free_vars(m).count("x")) continue;  // x must not occur in m
    ++checked;
    Object lhs = subst_single(subst_single(t, "x", n), "y", m);
    Substitution s;
    s.bind("x", subst_single(n, "y", m)).bind("y", m);
    for (const auto& v : free_vars(t))
      if (v != "x" && v != "y") s.bind(v, var(v));
    Object rhs = subst_simul(t, s);
    EXPECT_TRUE(alpha_equal(lhs, rhs)) << print(t);
    NPtr ref = nsubst(nsubst(named(t), "x", named(n)), "y", named(m));
    EXPECT_TRUE(nalpha(named(lhs), ref)) << print(t) << " [" << print(n) << "/x] [" << print(m) << "/y]";
  }
  EXPECT_GE(checked, 500);
}

// ---------------------------------------------------------------------------
// erasure

TEST(ErasureProperty, SubstitutionInvariant) {
  std::mt19937_64 rng(seed(4));
  for (int round = 0; round < 40; ++round) {
    auto w = cases::World::random(rng);
    for (int i = 0; i < 10; ++i) {
      Context g = w->gen.context(3);
      Family a = w->gen.type(g, 3);
      for (const auto& [x, t] : g) {
        // any object at all, typed or not
        Object n = untyped(rng, 3);
        EXPECT_EQ(erase_family(subst_single(a, x, n)), erase_family(a)) << print(a);
      }
    }
  }
}

TEST(ErasureProperty, InvariantUnderFamilyEquality) {
  std::mt19937_64 rng(seed(5));
  int accepted = 0;
  for (int round = 0; round < 40; ++round) {
    auto w = cases::World::random(rng);
    for (int i = 0; i < 10; ++i) {
      Context g = w->gen.context(2);
      Family a = w->gen.type(g, 2);
      Family b = w->gen.coin(0.5) ? cases::family_variant(*w, g, a) : w->gen.type(g, 2);
      if (fam_eq(w->sig.signature(), erase_context(g), a, b, SimpleKind::type_minus()).ok()) {
        ++accepted;
        EXPECT_EQ(erase_family(a), erase_family(b));
      }
    }
  }
  EXPECT_GT(accepted, 100);
}

// ---------------------------------------------------------------------------
// reduction

TEST(ReductionProperty, StepIsDeterministicAndExclusive) {
  std::mt19937_64 rng(seed(6));
  for (int i = 0; i < 1000; ++i) {
    Object m = untyped(rng, 5);
    auto r1 = whr_step(m), r2 = whr_step(m);
    ASSERT_EQ(r1.has_value(), r2.has_value());
    if (r1) {
      EXPECT_TRUE(alpha_equal(*r1, *r2));
    }
    // a step exists exactly when the spine head is an abstraction
    Object h = m;
    int args = 0;
    while (const auto* a = h.as<App>()) {
      h = a->fun;
      ++args;
    }
    EXPECT_EQ(r1.has_value(), args > 0 && h.as<Lam>() != nullptr) << print(m);
  }
}

TEST(ReductionProperty, WhnfIsNormal) {
  std::mt19937_64 rng(seed(7));
  for (int i = 0; i < 1000; ++i) {
    Object m = untyped(rng, 5);
    try {
      Object n = whnf(m, 1000);
      EXPECT_FALSE(whr_step(n).has_value()) << print(m);
    } catch (const FuelExhausted&) {
      // untyped terms may diverge
    }
  }
}

TEST(ReductionProperty, SubjectReduction) {
  std::mt19937_64 rng(seed(8));
  int steps = 0;
  for (int round = 0; round < 40; ++round) {
    auto w = cases::World::random(rng);
    for (int i = 0; i < 10; ++i) {
      auto t = gen::typed_term(w->gen);
      Object m = w->gen.variant(t.g, t.m, t.a, 3);
      auto a = synth_object(w->sig, t.g, m);
      ASSERT_TRUE(a);
      while (auto next = whr_step(m)) {
        ++steps;
        auto b = synth_object(w->sig, t.g, *next);
        ASSERT_TRUE(b) << print(m) << " to " << print(*next);
        EXPECT_TRUE(fam_eq(w->sig.signature(), erase_context(t.g), *a, *b, SimpleKind::type_minus()).ok());
        m = *next;
        a = b;
      }
    }
  }
  EXPECT_GT(steps, 50);
}

// ---------------------------------------------------------------------------
// equality

TEST(EqualityProperty, OracleAgreement) {
  for_pairs(9, 400, [](cases::World& w, const cases::Pair& p) {
    auto r = def_equal_objects(w.sig, p.g, p.m, p.n, p.a);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->ok(), oracle::equal(w.sig.signature(), p.g, p.m, p.n, p.a)) << print(p.m) << " vs " << print(p.n);
  });
}

TEST(EqualityProperty, Reflexivity) {
  for_pairs(10, 300, [](cases::World& w, const cases::Pair& p) {
    EXPECT_TRUE(obj_eq(w.sig.signature(), erase_context(p.g), p.m, p.m, erase_family(p.a)).ok()) << print(p.m);
  });
}

TEST(EqualityProperty, SymmetryOfObjectsAndFamilies) {
  for_pairs(11, 300, [](cases::World& w, const cases::Pair& p) {
    auto d = erase_context(p.g);
    const auto& sig = w.sig.signature();
    auto t = erase_family(p.a);
    EXPECT_EQ(obj_eq(sig, d, p.m, p.n, t).ok(), obj_eq(sig, d, p.n, p.m, t).ok());
    Family b = w.gen.type(p.g, 2);
    auto k = SimpleKind::type_minus();
    EXPECT_EQ(fam_eq(sig, d, p.a, b, k).ok(), fam_eq(sig, d, b, p.a, k).ok());
  });
}

TEST(EqualityProperty, SymmetryOfKinds) {
  std::mt19937_64 rng(seed(12));
  for (int round = 0; round < 30; ++round) {
    auto w = cases::World::random(rng);
    auto& G = w->gen;
    for (int i = 0; i < 10; ++i) {
      Context g = G.context(1);
      auto kind = [&] {
        Name x = G.fresh("k");
        Family a = G.type(g, 1);
        return G.coin(0.5) ? type_kind() : pi_kind(x, a, type_kind());
      };
      Kind k = kind(), l = kind();
      auto d = erase_context(g);
      EXPECT_EQ(kind_eq(w->sig.signature(), d, k, l).ok(), kind_eq(w->sig.signature(), d, l, k).ok());
    }
  }
}

TEST(EqualityProperty, Transitivity) {
  std::mt19937_64 rng(seed(13));
  int applicable = 0;
  for (int round = 0; round < 40; ++round) {
    auto w = cases::World::random(rng);
    for (int i = 0; i < 10; ++i) {
      auto t = cases::triple(*w);
      if (!t) continue;
      auto d = erase_context(t->g);
      auto ty = erase_family(t->a);
      const auto& sig = w->sig.signature();
      bool xy = obj_eq(sig, d, t->x, t->y, ty).ok(), yz = obj_eq(sig, d, t->y, t->z, ty).ok();
      if (xy && yz) {
        ++applicable;
        EXPECT_TRUE(obj_eq(sig, d, t->x, t->z, ty).ok());
      }
    }
  }
  EXPECT_GT(applicable, 50);
}

TEST(EqualityProperty, StructuralDeterminacy) {
  for_pairs(14, 300, [](cases::World& w, const cases::Pair& p) {
    Object m = whnf(p.m), n = whnf(p.n);
    if (m.as<Lam>() || n.as<Lam>()) return;
    auto d = erase_context(p.g);
    auto r1 = obj_eq_structural(w.sig.signature(), d, m, n);
    auto r2 = obj_eq_structural(w.sig.signature(), d, m, n);
    ASSERT_EQ(r1.ok(), r2.ok());
    if (!r1.ok()) return;
    EXPECT_EQ(*r1.type, *r2.type);
    EXPECT_EQ(*r1.type, erase_family(p.a));
    EXPECT_FALSE(whr_step(m) || whr_step(n));
  });
}

TEST(EqualityProperty, WeakeningOfAlgorithmicContext) {
  for_pairs(15, 300, [](cases::World& w, const cases::Pair& p) {
    auto d = erase_context(p.g);
    auto t = erase_family(p.a);
    std::size_t pos = static_cast<std::size_t>(w.gen.uniform(0, static_cast<int>(d.size())));
    auto wider = d.inserted(pos, {w.gen.fresh("unused"), SimpleType::base("o")});
    EXPECT_EQ(obj_eq(w.sig.signature(), d, p.m, p.n, t).ok(), obj_eq(w.sig.signature(), wider, p.m, p.n, t).ok());
  });
}

// ---------------------------------------------------------------------------
// typecheck

TEST(TypecheckProperty, SynthesisUniqueUpToAlpha) {
  std::mt19937_64 rng(seed(16));
  for_pairs(16, 300, [&](cases::World& w, const cases::Pair& p) {
    Object alt = cases::rehint(rng, p.m, cases::hint_pool(w, p.g));
    auto a = synth_object(w.sig, p.g, p.m), b = synth_object(w.sig, p.g, alt);
    ASSERT_TRUE(a && b) << print(alt);
    EXPECT_TRUE(fam_eq(w.sig.signature(), erase_context(p.g), *a, *b, SimpleKind::type_minus()).ok());
    EXPECT_TRUE(fam_eq(w.sig.signature(), erase_context(p.g), *a, p.a, SimpleKind::type_minus()).ok());
  });
}

TEST(TypecheckProperty, WeakeningKeepsAccepts) {
  for_pairs(17, 300, [](cases::World& w, const cases::Pair& p) {
    Context prefix;
    std::size_t pos = static_cast<std::size_t>(w.gen.uniform(0, static_cast<int>(p.g.size())));
    for (std::size_t k = 0; k < pos; ++k) prefix.push(p.g[k].first, p.g[k].second);
    Context wider = p.g.inserted(pos, {w.gen.fresh("unused"), w.gen.type(prefix, 1)});
    ASSERT_TRUE(check_context(w.sig, wider));
    EXPECT_TRUE(check_object(w.sig, wider, p.m, p.a));
    EXPECT_TRUE(check_object(w.sig, wider, p.n, p.a));
  });
}

TEST(TypecheckProperty, Strengthening) {
  int removed = 0;
  for_pairs(18, 300, [&](cases::World& w, const cases::Pair& p) {
    Context g = p.g.inserted(0, {w.gen.fresh("spare"), fam("iota")});
    std::set<Name> used = free_vars(p.m);
    for (const auto& x : free_vars(p.a)) used.insert(x);
    for (std::size_t k = 0; k < g.size(); ++k) {
      bool needed = used.count(g[k].first) > 0;
      for (std::size_t l = k + 1; l < g.size() && !needed; ++l) needed = free_vars(g[l].second).count(g[k].first) > 0;
      if (needed) continue;
      ++removed;
      Context smaller = g.without(k);
      EXPECT_TRUE(check_context(w.sig, smaller));
      EXPECT_TRUE(check_object(w.sig, smaller, p.m, p.a)) << print(p.m) << " in " << print(smaller);
    }
  });
  EXPECT_GE(removed, 300);
}

// m with some application arguments replaced by small terms of random types.
Object scramble(cases::World& w, const Context& g, const Object& m) {
  auto& G = w.gen;
  if (const auto* l = m.as<Lam>()) {
    Name x = G.fresh();
    return lam(x, l->ann, scramble(w, g.extended(x, l->ann), open(l->body, x)));
  }
  if (const auto* a = m.as<App>()) {
    if (G.coin(0.4)) return app(a->fun, G.term(g, G.type(g, 1), 1));
    if (G.coin(0.5)) return app(scramble(w, g, a->fun), a->arg);
    return app(a->fun, scramble(w, g, a->arg));
  }
  return m;
}

TEST(TypecheckProperty, AcceptedTermsAreSimplyTyped) {
  int rejected = 0, accepted = 0;
  for_pairs(28, 600, [&](cases::World& w, const cases::Pair& p) {
    Object s = scramble(w, p.g, p.m);
    auto r = synth_object(w.sig, p.g, s);
    if (!r) {
      ++rejected;
      EXPECT_EQ(r.error().kind, DiagKind::type);
      return;
    }
    ++accepted;
    EXPECT_TRUE(oracle::simply_typed(w.sig.signature(), p.g, s, *r)) << print(s) << " : " << print(*r);
    EXPECT_TRUE(check_object(w.sig, p.g, s, *r));
  });
  EXPECT_GT(rejected, 100);
  EXPECT_GT(accepted, 100);
}

TEST(TypecheckProperty, TerminatesOnArbitraryInput) {
  std::mt19937_64 rng(seed(19));
  auto sig = gen::checked(std::string(gen::kCore) + "c : iota.\n");
  Context g{{"x", fam("iota")}, {"y", fam("iota")}, {"z", fam("o")}, {"u", arrow(fam("iota"), fam("iota"))}};
  for (int i = 0; i < 500; ++i) {
    Object m = untyped(rng, 6);
    auto r = synth_object(sig, g, m, 2000);
    if (!r) {
      EXPECT_TRUE(r.error().kind == DiagKind::type || r.error().kind == DiagKind::fuel);
    }
  }
}

// ---------------------------------------------------------------------------
// quasi-canonical forms

// An independent check that q is β-normal and η-long at t, following the
// grammar: lambdas exactly at arrow types, atomic spines at base types.
bool shape_ok(const Signature& sig, std::vector<std::pair<Name, SimpleType>>& env, const QuasiCanonical& q,
              const SimpleType& t);

std::optional<SimpleType> spine_type(const Signature& sig, std::vector<std::pair<Name, SimpleType>>& env,
                                     const QuasiAtomic& a, std::size_t depth) {
  if (const auto* x = a.as<qc::Var>()) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == x->name) return it->second;
    return std::nullopt;
  }
  if (const auto* b = a.as<qc::BVar>()) {
    if (b->index >= depth) return std::nullopt;
    return env[env.size() - 1 - b->index].second;
  }
  if (const auto* c = a.as<qc::Const>()) {
    const Family* ty = sig.object_type(c->name);
    if (!ty) return std::nullopt;
    return erase_family(*ty);
  }
  const auto& ap = *a.as<qc::App>();
  auto f = spine_type(sig, env, ap.fun, depth);
  if (!f || !f->as_arrow()) return std::nullopt;
  const auto& arr = *f->as_arrow();
  if (!shape_ok(sig, env, ap.arg, arr.dom)) return std::nullopt;
  return arr.cod;
}

std::size_t g_depth = 0;

bool shape_ok(const Signature& sig, std::vector<std::pair<Name, SimpleType>>& env, const QuasiCanonical& q,
              const SimpleType& t) {
  if (const auto* l = q.as<qc::Lam>()) {
    const auto* arr = t.as_arrow();
    if (!arr) return false;
    env.emplace_back("", arr->dom);
    ++g_depth;
    bool ok = shape_ok(sig, env, l->body, arr->cod);
    --g_depth;
    env.pop_back();
    return ok;
  }
  if (!t.as_base()) return false;
  auto got = spine_type(sig, env, q.as<qc::Atomic>()->atom, g_depth);
  return got && *got == t;
}

bool no_redex(const Object& m) {
  if (const auto* l = m.as<Lam>()) return no_redex(l->body);
  if (const auto* a = m.as<App>()) return !a->fun.as<Lam>() && no_redex(a->fun) && no_redex(a->arg);
  return true;
}

TEST(CanonicalProperty, CharacterizesEquality) {
  for_pairs(20, 400, [](cases::World& w, const cases::Pair& p) {
    auto eq = def_equal_objects(w.sig, p.g, p.m, p.n, p.a);
    auto qm = canonicalize(w.sig, p.g, p.m, p.a), qn = canonicalize(w.sig, p.g, p.n, p.a);
    ASSERT_TRUE(eq && qm && qn);
    EXPECT_EQ(eq->ok(), alpha_equal(*qm, *qn)) << print(*qm) << " / " << print(*qn);
  });
}

TEST(CanonicalProperty, ShapeSoundness) {
  for_pairs(21, 400, [](cases::World& w, const cases::Pair& p) {
    auto q = canonicalize(w.sig, p.g, p.m, p.a);
    ASSERT_TRUE(q);
    std::vector<std::pair<Name, SimpleType>> env;
    for (const auto& [x, a] : p.g) env.emplace_back(x, erase_family(a));
    g_depth = 0;
    EXPECT_TRUE(shape_ok(w.sig.signature(), env, *q, erase_family(p.a))) << print(*q) << " at " << print(p.a);
  });
}

TEST(CanonicalProperty, ElaborationRoundTripAndIdempotence) {
  for_pairs(22, 400, [](cases::World& w, const cases::Pair& p) {
    auto q = canonicalize(w.sig, p.g, p.m, p.a);
    ASSERT_TRUE(q);
    auto e = elaborate_qc(w.sig, p.g, *q, p.a);
    ASSERT_TRUE(e) << e.error().to_string();
    EXPECT_TRUE(check_object(w.sig, p.g, *e, p.a));
    EXPECT_TRUE(no_redex(*e)) << print(*e);
    EXPECT_TRUE(alpha_equal(strip_labels(*e), to_bare(*q)));
    auto again = canonicalize(w.sig, p.g, *e, p.a);
    ASSERT_TRUE(again);
    EXPECT_TRUE(alpha_equal(*again, *q));
  });
}

// ---------------------------------------------------------------------------
// first-order logic

TEST(FolProperty, Bijection) {
  std::mt19937_64 rng(seed(23));
  int decoded = 0;
  for (int round = 0; round < 60; ++round) {
    auto w = cases::fol_world(rng);
    cases::FolGen F(rng, w);
    for (int i = 0; i < 10; ++i) {
      fol::Formula p = F.formula(w.ctx, F.uniform(5, 7));
      EXPECT_TRUE(fol::decode_formula(w.tbl, w.ctx, fol::encode(w.tbl, w.ctx, p)) == p) << fol::to_string(p);
      QuasiCanonical q = F.qc(w.ctx, true, F.uniform(2, 5));
      try {
        auto back = fol::decode_formula(w.tbl, w.ctx, q);
        ++decoded;
        EXPECT_TRUE(alpha_equal(fol::encode(w.tbl, w.ctx, back), q)) << print(q);
      } catch (const fol::FolError&) {
      }
    }
  }
  EXPECT_GT(decoded, 100);
}

TEST(FolProperty, EncodingsCheck) {
  std::mt19937_64 rng(seed(24));
  for (int round = 0; round < 50; ++round) {
    auto w = cases::fol_world(rng);
    cases::FolGen F(rng, w);
    Context g = fol::lf_context(w.ctx);
    for (int i = 0; i < 10; ++i) {
      fol::Formula p = F.formula(w.ctx, 5);
      auto m = elaborate_qc(w.sig, g, fol::encode(w.tbl, w.ctx, p), fol::prop());
      ASSERT_TRUE(m) << m.error().to_string();
      EXPECT_TRUE(check_object(w.sig, g, *m, fol::prop()));
      fol::Term t = F.term(w.ctx, 4);
      auto n = elaborate_qc(w.sig, g, fol::encode(w.tbl, w.ctx, t), fol::iota());
      ASSERT_TRUE(n);
      EXPECT_TRUE(check_object(w.sig, g, *n, fol::iota()));
    }
  }
}

TEST(FolProperty, Compositionality) {
  std::mt19937_64 rng(seed(25));
  int done = 0;
  for (int round = 0; round < 80; ++round) {
    auto w = cases::fol_world(rng);
    if (w.ctx.empty()) continue;
    cases::FolGen F(rng, w);
    Context g = fol::lf_context(w.ctx);
    for (int i = 0; i < 5; ++i) {
      fol::Formula p = F.formula(w.ctx, 5);
      fol::Term t = F.term(w.ctx, 3);
      const Name& x = w.ctx[static_cast<std::size_t>(F.uniform(0, static_cast<int>(w.ctx.size()) - 1))];
      QuasiCanonical direct = fol::encode(w.tbl, w.ctx, fol::subst(p, x, t));
      auto mp = elaborate_qc(w.sig, g, fol::encode(w.tbl, w.ctx, p), fol::prop());
      auto mt = elaborate_qc(w.sig, g, fol::encode(w.tbl, w.ctx, t), fol::iota());
      ASSERT_TRUE(mp && mt);
      auto composed = canonicalize(w.sig, g, subst_single(*mp, x, *mt), fol::prop());
      ASSERT_TRUE(composed);
      EXPECT_TRUE(alpha_equal(direct, *composed)) << fol::to_string(p) << " [" << fol::to_string(t) << "/" << x << "]";
      ++done;
    }
  }
  EXPECT_GT(done, 100);
}

// ---------------------------------------------------------------------------
// frontend

TEST(FrontendProperty, PrintParseRoundTrip) {
  std::mt19937_64 rng(seed(26));
  for_pairs(26, 400, [&](cases::World& w, const cases::Pair& p) {
    auto pool = cases::hint_pool(w, p.g);
    Object m = cases::rehint(rng, p.m, pool);
    Family a = cases::rehint(rng, p.a, pool);
    auto pm = parse_object(print(m), w.sig.signature(), p.g);
    ASSERT_TRUE(pm) << print(m) << "\n" << pm.error().to_string();
    EXPECT_TRUE(alpha_equal(*pm, m)) << print(m);
    auto pa = parse_family(print(a), w.sig.signature(), p.g);
    ASSERT_TRUE(pa) << print(a);
    EXPECT_TRUE(alpha_equal(*pa, a)) << print(a);
    auto pg = parse_context(print(p.g), w.sig.signature());
    ASSERT_TRUE(pg);
    EXPECT_EQ(print(*pg), print(p.g));
    Kind k = pi_kind(w.gen.fresh("k"), a, type_kind());
    auto pk = parse_kind(print(k), w.sig.signature(), p.g);
    ASSERT_TRUE(pk) << print(k);
    EXPECT_TRUE(alpha_equal(*pk, k));
  });
}

TEST(FrontendProperty, QuasiCanonicalPrintingIsDeterministic) {
  for_pairs(27, 200, [](cases::World& w, const cases::Pair& p) {
    auto q1 = canonicalize(w.sig, p.g, p.m, p.a), q2 = canonicalize(w.sig, p.g, p.m, p.a);
    ASSERT_TRUE(q1 && q2);
    EXPECT_EQ(print(*q1), print(*q2));
    EXPECT_EQ(print(p.m), print(p.m));
  });
}

}  // namespace
