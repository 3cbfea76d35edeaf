#pragma once

// First-order logic (equality, conjunction, universal quantification over
// user-declared function symbols) and its encoding as quasi-canonical LF
// forms over
//
//   iota : type.  o : type.  f : iota -> ... -> iota.  (one per symbol)
//   eq : iota -> iota -> o.  and : o -> o -> o.  forall : (iota -> o) -> o.
//
// Text format:  forall x. P   |   P & Q   |   t1 = t2   |   f(t1, ..., tn)
// `&` is right associative and a quantifier body extends as far as possible.
// An identifier naming a declared symbol is an application (a nullary symbol
// may drop the parentheses); every other identifier is a variable.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lf/diagnostic.hpp"
#include "lf/erasure.hpp"
#include "lf/print.hpp"
#include "lf/quasi_canonical.hpp"
#include "lf/syntax.hpp"

namespace lf::fol {

inline constexpr std::string_view kIota = "iota";
inline constexpr std::string_view kProp = "o";
inline constexpr std::string_view kEq = "eq";
inline constexpr std::string_view kAnd = "and";
inline constexpr std::string_view kForall = "forall";

struct Term {
  enum class Tag { var, fun } tag = Tag::var;
  Name name;  // variable or function symbol
  std::vector<Term> args;

  static Term var(Name x) { return {Tag::var, std::move(x), {}}; }
  static Term fun(Name f, std::vector<Term> args = {}) { return {Tag::fun, std::move(f), std::move(args)}; }

  bool is_var() const { return tag == Tag::var; }
  bool operator==(const Term&) const = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Tag { eq, conj, forall } tag;
  Term lhs, rhs;         // eq
  FormulaPtr left, right;  // conj
  Name var;              // forall
  FormulaPtr body;       // forall

  static Formula eq(Term l, Term r) { return {Tag::eq, std::move(l), std::move(r), nullptr, nullptr, {}, nullptr}; }
  static Formula conj(Formula l, Formula r) {
    return {Tag::conj, {}, {}, std::make_shared<const Formula>(std::move(l)), std::make_shared<const Formula>(std::move(r)),
            {}, nullptr};
  }
  static Formula forall(Name x, Formula body) {
    return {Tag::forall, {}, {}, nullptr, nullptr, std::move(x), std::make_shared<const Formula>(std::move(body))};
  }

  // Syntactic equality, bound names included.
  bool operator==(const Formula& o) const {
    if (tag != o.tag) return false;
    switch (tag) {
      case Tag::eq:
        return lhs == o.lhs && rhs == o.rhs;
      case Tag::conj:
        return *left == *o.left && *right == *o.right;
      case Tag::forall:
        return var == o.var && *body == *o.body;
    }
    return false;
  }
};

using FolTerm = Term;
using FolFormula = Formula;

class FolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; });
}

inline bool is_reserved(std::string_view s) {
  return s == kIota || s == kProp || s == kEq || s == kAnd || s == kForall || s == "type";
}

/// Function symbols and their arities, in declaration order.
class SignatureTable {
 public:
  SignatureTable() = default;
  SignatureTable(std::initializer_list<std::pair<Name, std::size_t>> syms) {
    for (const auto& [f, n] : syms) add(f, n);
  }

  /// Throws FolError for a malformed, reserved, or repeated name.
  void add(const Name& f, std::size_t arity) {
    if (!is_identifier(f)) throw FolError("`" + f + "` is not an identifier");
    if (is_reserved(f)) throw FolError("`" + f + "` is reserved by the encoding");
    if (this->arity(f)) throw FolError("function symbol `" + f + "` declared twice");
    syms_.emplace_back(f, arity);
  }

  std::optional<std::size_t> arity(std::string_view f) const {
    for (const auto& [g, n] : syms_)
      if (g == f) return n;
    return std::nullopt;
  }
  bool contains(std::string_view f) const { return arity(f).has_value(); }

  auto begin() const { return syms_.begin(); }
  auto end() const { return syms_.end(); }
  std::size_t size() const { return syms_.size(); }

 private:
  std::vector<std::pair<Name, std::size_t>> syms_;
};

using FolSignatureTable = SignatureTable;

inline Family iota() { return fam(Name(kIota)); }
inline Family prop() { return fam(Name(kProp)); }

inline Signature gen_lf_signature(const SignatureTable& tbl) {
  Signature sig;
  sig.add_family(Name(kIota), type_kind());
  sig.add_family(Name(kProp), type_kind());
  for (const auto& [f, n] : tbl) {
    Family t = iota();
    for (std::size_t i = 0; i < n; ++i) t = arrow(iota(), t);
    sig.add_object(f, t);
  }
  sig.add_object(Name(kEq), arrow(iota(), arrow(iota(), prop())));
  sig.add_object(Name(kAnd), arrow(prop(), arrow(prop(), prop())));
  sig.add_object(Name(kForall), arrow(arrow(iota(), prop()), prop()));
  return sig;
}

/// x1:iota, ..., xn:iota
inline Context lf_context(const std::vector<Name>& xs) {
  Context g;
  for (const auto& x : xs) g.push(x, iota());
  return g;
}

// ---------------------------------------------------------------------------
// encode / decode

namespace detail {

class Encoder {
 public:
  Encoder(const SignatureTable& tbl, std::vector<Name> scope) : tbl_(tbl), scope_(std::move(scope)) {}

  QuasiCanonical term(const Term& t) {
    if (t.is_var()) {
      if (std::find(scope_.begin(), scope_.end(), t.name) == scope_.end())
        throw FolError("variable `" + t.name + "` is not in the context");
      return qc::var_c(t.name);
    }
    auto n = tbl_.arity(t.name);
    if (!n) throw FolError("unknown function symbol `" + t.name + "`");
    if (*n != t.args.size())
      throw FolError("`" + t.name + "` expects " + std::to_string(*n) + " arguments, given " +
                     std::to_string(t.args.size()));
    QuasiAtomic head = qc::cnst(t.name);
    for (const auto& a : t.args) head = qc::app(std::move(head), term(a));
    return qc::atomic(std::move(head));
  }

  QuasiCanonical formula(const Formula& p) {
    switch (p.tag) {
      case Formula::Tag::eq:
        return qc::app_c(qc::cnst(Name(kEq)), {term(p.lhs), term(p.rhs)});
      case Formula::Tag::conj:
        return qc::app_c(qc::cnst(Name(kAnd)), {formula(*p.left), formula(*p.right)});
      case Formula::Tag::forall: {
        scope_.push_back(p.var);
        QuasiCanonical body = formula(*p.body);
        scope_.pop_back();
        return qc::app_c(qc::cnst(Name(kForall)), {qc::lam(p.var, body)});
      }
    }
    throw FolError("malformed formula");
  }

 private:
  const SignatureTable& tbl_;
  std::vector<Name> scope_;
};

class Decoder {
 public:
  Decoder(const SignatureTable& tbl, std::vector<Name> scope) : tbl_(tbl), scope_(std::move(scope)) {}

  Term term(const QuasiCanonical& q) {
    const auto* a = q.as<qc::Atomic>();
    if (!a) throw FolError("abstraction `" + print(q) + "` where a term is expected");
    auto [head, args] = unwind(a->atom);
    if (const auto* x = head->as<qc::Var>()) {
      if (!args.empty()) throw FolError("variable `" + x->name + "` applied to arguments");
      if (std::find(scope_.begin(), scope_.end(), x->name) == scope_.end())
        throw FolError("variable `" + x->name + "` is not in the context");
      return Term::var(x->name);
    }
    const auto* c = head->as<qc::Const>();
    if (!c) throw FolError("dangling bound variable");
    auto n = tbl_.arity(c->name);
    if (!n) throw FolError("`" + c->name + "` is not a function symbol");
    if (*n != args.size())
      throw FolError("`" + c->name + "` expects " + std::to_string(*n) + " arguments, given " +
                     std::to_string(args.size()));
    std::vector<Term> out;
    for (const auto& arg : args) out.push_back(term(arg));
    return Term::fun(c->name, std::move(out));
  }

  Formula formula(const QuasiCanonical& q) {
    const auto* a = q.as<qc::Atomic>();
    if (!a) throw FolError("abstraction `" + print(q) + "` where a formula is expected");
    auto [head, args] = unwind(a->atom);
    const auto* c = head->as<qc::Const>();
    if (!c) throw FolError("formula headed by a variable");
    auto arity_is = [&](std::size_t n) {
      if (args.size() != n)
        throw FolError("`" + c->name + "` expects " + std::to_string(n) + " arguments, given " +
                       std::to_string(args.size()));
    };
    if (c->name == kEq) {
      arity_is(2);
      return Formula::eq(term(args[0]), term(args[1]));
    }
    if (c->name == kAnd) {
      arity_is(2);
      return Formula::conj(formula(args[0]), formula(args[1]));
    }
    if (c->name == kForall) {
      arity_is(1);
      const auto* l = args[0].as<qc::Lam>();
      if (!l) throw FolError("argument of `forall` is not an abstraction");
      Name x = binder_name(l->hint, l->body);
      scope_.push_back(x);
      Formula body = formula(qc::open(l->body, x));
      scope_.pop_back();
      return Formula::forall(x, std::move(body));
    }
    throw FolError("`" + c->name + "` does not construct a formula");
  }

 private:
  static std::pair<const QuasiAtomic*, std::vector<QuasiCanonical>> unwind(const QuasiAtomic& q) {
    std::vector<QuasiCanonical> args;
    const QuasiAtomic* cur = &q;
    while (const auto* ap = cur->as<qc::App>()) {
      args.push_back(ap->arg);
      cur = &ap->fun;
    }
    std::reverse(args.begin(), args.end());
    return {cur, std::move(args)};
  }

  // The hint, primed when it would capture a free variable of the body or
  // read back as a function symbol.
  Name binder_name(const Name& hint, const QuasiCanonical& body) const {
    Name x(display_name(hint));
    if (!is_identifier(x) || x == "_") x = "x";
    auto free = qc_free_vars(body);
    while (free.count(x) || tbl_.contains(x) || is_reserved(x)) x += '\'';
    return x;
  }

  const SignatureTable& tbl_;
  std::vector<Name> scope_;
};

}  // namespace detail

/// Throws FolError for free names outside ctx, unknown symbols, or arity
/// mismatches.
inline QuasiCanonical encode(const SignatureTable& tbl, const std::vector<Name>& ctx, const Term& t) {
  return detail::Encoder(tbl, ctx).term(t);
}
inline QuasiCanonical encode(const SignatureTable& tbl, const std::vector<Name>& ctx, const Formula& p) {
  return detail::Encoder(tbl, ctx).formula(p);
}

/// Throws FolError when q is not the image of a term over tbl and ctx.
inline Term decode_term(const SignatureTable& tbl, const std::vector<Name>& ctx, const QuasiCanonical& q) {
  return detail::Decoder(tbl, ctx).term(q);
}
/// Throws FolError when q is not the image of a formula over tbl and ctx.
inline Formula decode_formula(const SignatureTable& tbl, const std::vector<Name>& ctx, const QuasiCanonical& q) {
  return detail::Decoder(tbl, ctx).formula(q);
}

// ---------------------------------------------------------------------------
// Free variables and substitution

inline void free_vars(const Term& t, std::vector<Name>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) free_vars(a, out);
}

inline void free_vars(const Formula& p, std::vector<Name>& out, std::vector<Name>& bound) {
  switch (p.tag) {
    case Formula::Tag::eq: {
      std::vector<Name> here;
      free_vars(p.lhs, here);
      free_vars(p.rhs, here);
      for (auto& x : here)
        if (std::find(bound.begin(), bound.end(), x) == bound.end() &&
            std::find(out.begin(), out.end(), x) == out.end())
          out.push_back(x);
      return;
    }
    case Formula::Tag::conj:
      free_vars(*p.left, out, bound);
      free_vars(*p.right, out, bound);
      return;
    case Formula::Tag::forall:
      bound.push_back(p.var);
      free_vars(*p.body, out, bound);
      bound.pop_back();
      return;
  }
}

/// Free variables in order of first occurrence.
inline std::vector<Name> free_vars(const Formula& p) {
  std::vector<Name> out, bound;
  free_vars(p, out, bound);
  return out;
}
inline std::vector<Name> free_vars(const Term& t) {
  std::vector<Name> out;
  free_vars(t, out);
  return out;
}

inline Term subst(const Term& t, const Name& x, const Term& s) {
  if (t.is_var()) return t.name == x ? s : t;
  std::vector<Term> args;
  for (const auto& a : t.args) args.push_back(subst(a, x, s));
  return Term::fun(t.name, std::move(args));
}

/// p[s/x], renaming quantified variables that would capture a variable of s.
inline Formula subst(const Formula& p, const Name& x, const Term& s) {
  switch (p.tag) {
    case Formula::Tag::eq:
      return Formula::eq(subst(p.lhs, x, s), subst(p.rhs, x, s));
    case Formula::Tag::conj:
      return Formula::conj(subst(*p.left, x, s), subst(*p.right, x, s));
    case Formula::Tag::forall: {
      if (p.var == x) return p;
      auto fs = free_vars(s);
      if (std::find(fs.begin(), fs.end(), p.var) == fs.end())
        return Formula::forall(p.var, subst(*p.body, x, s));
      auto avoid = free_vars(*p.body);
      Name y = p.var;
      while (std::find(fs.begin(), fs.end(), y) != fs.end() || std::find(avoid.begin(), avoid.end(), y) != avoid.end() ||
             y == x)
        y += '\'';
      Formula renamed = subst(*p.body, p.var, Term::var(y));
      return Formula::forall(y, subst(renamed, x, s));
    }
  }
  throw FolError("malformed formula");
}

// ---------------------------------------------------------------------------
// Text format

inline std::string to_string(const Term& t) {
  if (t.is_var() || t.args.empty()) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? ", " : "") + to_string(t.args[i]);
  return out + ")";
}

inline std::string to_string(const Formula& p) {
  switch (p.tag) {
    case Formula::Tag::eq:
      return to_string(p.lhs) + " = " + to_string(p.rhs);
    case Formula::Tag::conj: {
      auto l = to_string(*p.left);
      if (p.left->tag != Formula::Tag::eq) l = "(" + l + ")";
      return l + " & " + to_string(*p.right);
    }
    case Formula::Tag::forall:
      return "forall " + p.var + ". " + to_string(*p.body);
  }
  return "";
}

namespace detail {

class FolParser {
 public:
  FolParser(std::string_view text, const SignatureTable& tbl) : s_(text), tbl_(tbl) {}

  Formula parse() {
    Formula p = formula();
    skip();
    if (i_ != s_.size()) fail("unexpected `" + std::string(1, s_[i_]) + "`");
    return p;
  }

 private:
  Formula formula() {
    skip();
    std::size_t save = i_;
    if (peek_ident() == kForall) {
      ident();
      Name x = ident();
      if (x.empty()) fail("expected a variable after `forall`");
      if (tbl_.contains(x) || is_reserved(x)) fail("`" + x + "` cannot be bound");
      expect('.');
      return Formula::forall(x, formula());
    }
    i_ = save;
    Formula left = conjunct();
    skip();
    if (i_ < s_.size() && s_[i_] == '&') {
      ++i_;
      return Formula::conj(std::move(left), formula());
    }
    return left;
  }

  Formula conjunct() {
    skip();
    if (i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      Formula inner = formula();
      expect(')');
      return inner;
    }
    Term l = term();
    expect('=');
    return Formula::eq(std::move(l), term());
  }

  Term term() {
    Name f = ident();
    if (f.empty()) fail("expected a term");
    if (is_reserved(f)) fail("`" + f + "` cannot be used as a term");
    auto n = tbl_.arity(f);
    if (!n) return Term::var(f);
    std::vector<Term> args;
    skip();
    if (i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      skip();
      if (i_ < s_.size() && s_[i_] == ')') {
        ++i_;
      } else {
        while (true) {
          args.push_back(term());
          skip();
          if (i_ < s_.size() && s_[i_] == ',') {
            ++i_;
            continue;
          }
          expect(')');
          break;
        }
      }
    }
    if (args.size() != *n)
      fail("`" + f + "` expects " + std::to_string(*n) + " arguments, given " + std::to_string(args.size()));
    return Term::fun(f, std::move(args));
  }

  std::string_view peek_ident() {
    skip();
    std::size_t j = i_;
    if (j < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) {
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_' || s_[j] == '\'')) ++j;
    }
    return s_.substr(i_, j - i_);
  }

  Name ident() {
    auto w = peek_ident();
    i_ += w.size();
    return Name(w);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  void expect(char c) {
    skip();
    if (i_ >= s_.size() || s_[i_] != c) fail(std::string("expected `") + c + "`");
    ++i_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw FolError("column " + std::to_string(i_ + 1) + ": " + msg);
  }

  std::string_view s_;
  std::size_t i_ = 0;
  const SignatureTable& tbl_;
};

}  // namespace detail

/// Throws FolError on malformed input.
inline Formula parse_formula(std::string_view text, const SignatureTable& tbl) {
  return detail::FolParser(text, tbl).parse();
}

}  // namespace lf::fol
