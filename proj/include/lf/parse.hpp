#pragma once

// Concrete syntax:
//
//   file   ::= { IDENT ':' term '.' }
//   term   ::= '{' IDENT ':' term '}' term     dependent product
//            | '[' IDENT ':' term ']' term     abstraction
//            | app [ '->' term ]
//   app    ::= atom { atom }                   (a trailing binder ends the spine)
//   atom   ::= IDENT | 'type' | '(' term ')'
//
// `%` starts a comment running to the end of the line. Parsing produces an
// untyped tree first; resolution then sorts it into kinds, families and
// objects against the signature and context in scope.

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lf/diagnostic.hpp"
#include "lf/syntax.hpp"

namespace lf {

namespace detail {

enum class Tok { ident, kw_type, colon, dot, comma, lparen, rparen, lbracket, rbracket, lbrace, rbrace, arrow, end };

inline const char* describe(Tok t) {
  switch (t) {
    case Tok::ident:
      return "identifier";
    case Tok::kw_type:
      return "`type`";
    case Tok::colon:
      return "`:`";
    case Tok::dot:
      return "`.`";
    case Tok::comma:
      return "`,`";
    case Tok::lparen:
      return "`(`";
    case Tok::rparen:
      return "`)`";
    case Tok::lbracket:
      return "`[`";
    case Tok::rbracket:
      return "`]`";
    case Tok::lbrace:
      return "`{`";
    case Tok::rbrace:
      return "`}`";
    case Tok::arrow:
      return "`->`";
    case Tok::end:
      return "end of input";
  }
  return "token";
}

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

inline std::vector<Token> lex(std::string_view text, const std::string& file) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    SourceSpan span{file, line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      out.push_back({word == "type" ? Tok::kw_type : Tok::ident, word, span});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Tok::arrow, "->", span});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case ':':
        kind = Tok::colon;
        break;
      case '.':
        kind = Tok::dot;
        break;
      case ',':
        kind = Tok::comma;
        break;
      case '(':
        kind = Tok::lparen;
        break;
      case ')':
        kind = Tok::rparen;
        break;
      case '[':
        kind = Tok::lbracket;
        break;
      case ']':
        kind = Tok::rbracket;
        break;
      case '{':
        kind = Tok::lbrace;
        break;
      case '}':
        kind = Tok::rbrace;
        break;
      default: {
        Diagnostic d;
        d.kind = DiagKind::parse;
        d.span = span;
        d.reason = std::string("unexpected character `") + c + "`";
        throw DiagnosticError(std::move(d));
      }
    }
    out.push_back({kind, std::string(1, c), span});
    advance(1);
  }
  out.push_back({Tok::end, "", SourceSpan{file, line, col}});
  return out;
}

struct Raw;
using RawPtr = std::shared_ptr<const Raw>;

struct Raw {
  enum class Tag { ident, type, app, arrow, pi, lam } tag;
  std::string name;  // identifier, or binder name
  RawPtr lhs;        // function, domain, or annotation
  RawPtr rhs;        // argument, codomain, or body
  SourceSpan span;
};

inline RawPtr raw(Raw r) { return std::make_shared<const Raw>(std::move(r)); }

class Parser {
 public:
  Parser(std::string_view text, const std::string& file) : toks_(lex(text, file)) {}

  RawPtr term() {
    if (at(Tok::lbrace) || at(Tok::lbracket)) return binder();
    RawPtr lhs = application();
    if (at(Tok::arrow)) {
      auto span = next().span;
      RawPtr rhs = term();
      return raw({Raw::Tag::arrow, "", lhs, rhs, span});
    }
    return lhs;
  }

  struct RawDecl {
    std::string name;
    RawPtr classifier;
    SourceSpan span;
  };

  std::vector<RawDecl> declarations() {
    std::vector<RawDecl> out;
    while (!at(Tok::end)) {
      auto name = expect(Tok::ident, "a constant name");
      expect(Tok::colon, "`:` after the constant name");
      RawPtr cls = term();
      expect(Tok::dot, "`.` ending the declaration");
      out.push_back({name.text, cls, name.span});
    }
    return out;
  }

  std::vector<RawDecl> context_entries() {
    std::vector<RawDecl> out;
    if (at(Tok::end)) return out;
    while (true) {
      auto name = expect(Tok::ident, "a variable name");
      expect(Tok::colon, "`:` after the variable name");
      out.push_back({name.text, term(), name.span});
      if (!at(Tok::comma)) break;
      next();
    }
    return out;
  }

  void finish() { expect(Tok::end, "end of input"); }

 private:
  RawPtr binder() {
    bool product = at(Tok::lbrace);
    auto open = next();
    auto x = expect(Tok::ident, "a bound variable name");
    expect(Tok::colon, "`:` after the bound variable");
    RawPtr ann = term();
    expect(product ? Tok::rbrace : Tok::rbracket, product ? "`}` closing the binder" : "`]` closing the binder");
    RawPtr body = term();
    return raw({product ? Raw::Tag::pi : Raw::Tag::lam, x.text, ann, body, open.span});
  }

  bool starts_atom() const { return at(Tok::ident) || at(Tok::kw_type) || at(Tok::lparen); }

  RawPtr application() {
    RawPtr head = atom();
    while (true) {
      if (starts_atom()) {
        auto span = peek().span;
        head = raw({Raw::Tag::app, "", head, atom(), span});
      } else if (at(Tok::lbrace) || at(Tok::lbracket)) {
        auto span = peek().span;
        return raw({Raw::Tag::app, "", head, binder(), span});
      } else {
        return head;
      }
    }
  }

  RawPtr atom() {
    const Token& t = peek();
    if (t.kind == Tok::ident) {
      next();
      return raw({Raw::Tag::ident, t.text, nullptr, nullptr, t.span});
    }
    if (t.kind == Tok::kw_type) {
      next();
      return raw({Raw::Tag::type, "type", nullptr, nullptr, t.span});
    }
    if (t.kind == Tok::lparen) {
      next();
      RawPtr inner = term();
      expect(Tok::rparen, "`)`");
      return inner;
    }
    fail(t, "a term");
  }

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail(peek(), what);
    return next();
  }

  [[noreturn]] static void fail(const Token& t, const std::string& what) {
    Diagnostic d;
    d.kind = DiagKind::parse;
    d.span = t.span;
    d.reason = "expected " + what + ", found " + (t.kind == Tok::ident ? "`" + t.text + "`" : describe(t.kind));
    throw DiagnosticError(std::move(d));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

/// Sorts raw trees into kinds, families and objects. Identifiers resolve to
/// the innermost binder, then the context, then the signature.
class Resolver {
 public:
  Resolver(const Signature& sig, const Context& ctx) : sig_(sig), ctx_(ctx) {}

  Object object(const Raw& r) {
    switch (r.tag) {
      case Raw::Tag::ident: {
        if (auto i = bound_index(r.name)) return make(BVar{*i});
        if (ctx_.contains(r.name)) return var(r.name);
        if (const auto* d = sig_.find(r.name)) {
          if (d->declares_family()) fail(r, "family constant `" + r.name + "` used where an object is expected");
          return cnst(r.name);
        }
        fail(r, "unbound identifier `" + r.name + "`");
      }
      case Raw::Tag::app:
        return make(App{object(*r.lhs), object(*r.rhs)});
      case Raw::Tag::lam: {
        Family ann = family(*r.lhs);
        bound_.push_back(r.name);
        Object body = object(*r.rhs);
        bound_.pop_back();
        return make(Lam{r.name, std::move(ann), std::move(body)});
      }
      case Raw::Tag::type:
        fail(r, "`type` used where an object is expected");
      case Raw::Tag::arrow:
      case Raw::Tag::pi:
        fail(r, "product used where an object is expected");
    }
    fail(r, "malformed term");
  }

  Family family(const Raw& r) {
    switch (r.tag) {
      case Raw::Tag::ident: {
        if (bound_index(r.name) || ctx_.contains(r.name))
          fail(r, "variable `" + r.name + "` used where a family is expected");
        if (const auto* d = sig_.find(r.name)) {
          if (!d->declares_family()) fail(r, "object constant `" + r.name + "` used where a family is expected");
          return fam(r.name);
        }
        fail(r, "unbound identifier `" + r.name + "`");
      }
      case Raw::Tag::app:
        return make(FamApp{family(*r.lhs), object(*r.rhs)});
      case Raw::Tag::arrow:
      case Raw::Tag::pi: {
        Family dom = family(*r.lhs);
        bound_.push_back(r.tag == Raw::Tag::pi ? r.name : "");
        Family cod = family(*r.rhs);
        bound_.pop_back();
        return make(Pi{r.tag == Raw::Tag::pi ? r.name : "_", std::move(dom), std::move(cod)});
      }
      case Raw::Tag::lam:
        fail(r, "abstraction used where a family is expected (there is no family-level abstraction)");
      case Raw::Tag::type:
        fail(r, "`type` used where a family is expected");
    }
    fail(r, "malformed term");
  }

  Kind kind(const Raw& r) {
    switch (r.tag) {
      case Raw::Tag::type:
        return type_kind();
      case Raw::Tag::arrow:
      case Raw::Tag::pi: {
        Family dom = family(*r.lhs);
        bound_.push_back(r.tag == Raw::Tag::pi ? r.name : "");
        Kind cod = kind(*r.rhs);
        bound_.pop_back();
        return make(PiKind{r.tag == Raw::Tag::pi ? r.name : "_", std::move(dom), std::move(cod)});
      }
      default:
        fail(r, "expected a kind");
    }
  }

 private:
  std::optional<std::uint32_t> bound_index(const std::string& x) const {
    for (std::size_t i = bound_.size(); i-- > 0;)
      if (bound_[i] == x) return static_cast<std::uint32_t>(bound_.size() - 1 - i);
    return std::nullopt;
  }

  [[noreturn]] static void fail(const Raw& r, std::string reason) {
    Diagnostic d;
    d.kind = DiagKind::scope;
    d.span = r.span;
    d.reason = std::move(reason);
    throw DiagnosticError(std::move(d));
  }

  const Signature& sig_;
  const Context& ctx_;
  std::vector<std::string> bound_;
};

/// A classifier is a kind exactly when its product spine ends in `type`.
inline bool ends_in_type(const Raw& r) {
  if (r.tag == Raw::Tag::type) return true;
  if (r.tag == Raw::Tag::arrow || r.tag == Raw::Tag::pi) return ends_in_type(*r.rhs);
  return false;
}

template <class Body>
auto parsing(Body&& body) -> Result<decltype(body())> {
  try {
    return body();
  } catch (DiagnosticError& e) {
    return e.diagnostic();
  }
}

}  // namespace detail

inline Result<Signature> parse_signature(std::string_view text, const std::string& file = "<input>") {
  return detail::parsing([&] {
    detail::Parser p(text, file);
    auto decls = p.declarations();
    Signature sig;
    Context none;
    for (const auto& d : decls) {
      detail::Resolver r(sig, none);
      if (detail::ends_in_type(*d.classifier))
        sig.add({d.name, r.kind(*d.classifier), d.span});
      else
        sig.add({d.name, r.family(*d.classifier), d.span});
    }
    return sig;
  });
}

inline Result<Object> parse_object(std::string_view text, const Signature& sig, const Context& ctx = {},
                                   const std::string& file = "<term>") {
  return detail::parsing([&] {
    detail::Parser p(text, file);
    auto t = p.term();
    p.finish();
    return detail::Resolver(sig, ctx).object(*t);
  });
}

inline Result<Family> parse_family(std::string_view text, const Signature& sig, const Context& ctx = {},
                                   const std::string& file = "<type>") {
  return detail::parsing([&] {
    detail::Parser p(text, file);
    auto t = p.term();
    p.finish();
    return detail::Resolver(sig, ctx).family(*t);
  });
}

inline Result<Kind> parse_kind(std::string_view text, const Signature& sig, const Context& ctx = {},
                               const std::string& file = "<kind>") {
  return detail::parsing([&] {
    detail::Parser p(text, file);
    auto t = p.term();
    p.finish();
    return detail::Resolver(sig, ctx).kind(*t);
  });
}

/// `x:A, y:B`; each entry may refer to the earlier ones.
inline Result<Context> parse_context(std::string_view text, const Signature& sig,
                                     const std::string& file = "<ctx>") {
  return detail::parsing([&] {
    detail::Parser p(text, file);
    auto entries = p.context_entries();
    p.finish();
    Context g;
    for (const auto& e : entries) {
      Family a = detail::Resolver(sig, g).family(*e.classifier);
      g.push(e.name, std::move(a));
    }
    return g;
  });
}

using AnyTerm = std::variant<Object, Family, Kind>;

/// Parses a term whose level is not known in advance: kinds by shape, then
/// objects, then families.
inline Result<AnyTerm> parse_any(std::string_view text, const Signature& sig, const Context& ctx = {},
                                 const std::string& file = "<term>") {
  return detail::parsing([&]() -> AnyTerm {
    detail::Parser p(text, file);
    auto t = p.term();
    p.finish();
    if (detail::ends_in_type(*t)) return detail::Resolver(sig, ctx).kind(*t);
    try {
      return detail::Resolver(sig, ctx).object(*t);
    } catch (const DiagnosticError& as_object) {
      try {
        return detail::Resolver(sig, ctx).family(*t);
      } catch (const DiagnosticError&) {
        throw as_object;
      }
    }
  });
}

}  // namespace lf
