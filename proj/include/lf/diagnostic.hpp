#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lf/syntax.hpp"

namespace lf {

enum class DiagKind {
  parse,  // lexical or syntactic error
  scope,  // unbound identifier, or a term at the wrong level
  type,   // well-formed input that fails a typing or equality judgment
  fuel,   // reduction budget exhausted
};

inline const char* to_string(DiagKind k) {
  switch (k) {
    case DiagKind::parse:
      return "parse error";
    case DiagKind::scope:
      return "scope error";
    case DiagKind::type:
      return "type error";
    case DiagKind::fuel:
      return "fuel exhausted";
  }
  return "error";
}

struct Diagnostic {
  DiagKind kind = DiagKind::type;
  SourceSpan span;
  std::string judgment;  // what was being attempted
  std::string reason;
  std::string expected;
  std::string found;
  std::vector<std::string> trace;  // enclosing judgments, outermost first

  std::string to_string() const {
    std::string out;
    if (!span.file.empty() || span.known()) out += span.to_string() + ": ";
    out += std::string(lf::to_string(kind)) + ": " + reason;
    if (!expected.empty() || !found.empty()) out += "\n  expected: " + expected + "\n  found:    " + found;
    if (!judgment.empty()) out += "\n  while " + judgment;
    for (auto it = trace.rbegin(); it != trace.rend(); ++it) out += "\n  in " + *it;
    return out;
  }
};

/// Exception wrapper used inside the checker and parser; public entry points
/// return Result instead.
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(Diagnostic d) : std::runtime_error(d.reason), diag_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diag_; }
  Diagnostic& diagnostic() { return diag_; }

 private:
  Diagnostic diag_;
};

template <class T>
class Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(Diagnostic d) : v_(std::move(d)) {}

  bool ok() const { return v_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw DiagnosticError(error());
    return std::get<0>(v_);
  }
  T&& value() && {
    if (!ok()) throw DiagnosticError(error());
    return std::get<0>(std::move(v_));
  }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const Diagnostic& error() const { return std::get<1>(v_); }

 private:
  std::variant<T, Diagnostic> v_;
};

using Verdict = Result<std::monostate>;

inline Verdict accepted() { return Verdict(std::monostate{}); }

}  // namespace lf
