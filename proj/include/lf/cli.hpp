#pragma once

// Command-line driver. Exit codes: 0 success or equal, 1 a judgment fails,
// 2 parse or scope error, 3 fuel exhausted.

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lf/adequacy_fol.hpp"
#include "lf/canonical.hpp"
#include "lf/diagnostic.hpp"
#include "lf/parse.hpp"
#include "lf/print.hpp"
#include "lf/typecheck.hpp"

namespace lf::cli {

enum Exit { kOk = 0, kFails = 1, kMalformed = 2, kFuel = 3 };

inline int exit_code(DiagKind k) {
  switch (k) {
    case DiagKind::parse:
    case DiagKind::scope:
      return kMalformed;
    case DiagKind::type:
      return kFails;
    case DiagKind::fuel:
      return kFuel;
  }
  return kFails;
}

namespace detail {

struct Failure {
  int code;
};

class Session {
 public:
  Session(std::ostream& out, std::ostream& err, std::uint64_t fuel) : out_(out), err_(err), fuel_(fuel) {}

  [[noreturn]] void fail(const Diagnostic& d) {
    err_ << d.to_string() << "\n";
    throw Failure{exit_code(d.kind)};
  }
  [[noreturn]] void fail(int code, const std::string& msg) {
    err_ << "error: " << msg << "\n";
    throw Failure{code};
  }

  template <class T>
  T take(Result<T> r) {
    if (!r) fail(r.error());
    return std::move(r).value();
  }

  void load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(kMalformed, "cannot read `" + path + "`");
    std::stringstream buf;
    buf << in.rdbuf();
    sig_ = take(check_signature(take(parse_signature(buf.str(), path)), fuel_));
  }

  void context(const std::string& text) {
    ctx_ = take(parse_context(text, sig_.signature()));
    take(check_context(sig_, ctx_, fuel_));
  }

  Family family(const std::string& text) {
    Family a = take(parse_family(text, sig_.signature(), ctx_));
    take(synth_family(sig_, ctx_, a, fuel_));
    return a;
  }

  Object object(const std::string& text) { return take(parse_object(text, sig_.signature(), ctx_)); }

  const CheckedSignature& sig() const { return sig_; }
  const Context& ctx() const { return ctx_; }
  std::uint64_t fuel() const { return fuel_; }
  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::uint64_t fuel_;
  CheckedSignature sig_;
  Context ctx_;
};

inline int cmd_check(Session& s, const std::string& file) {
  s.load(file);
  s.out() << "ok: " << s.sig().size() << " declarations\n";
  return kOk;
}

inline int cmd_synth(Session& s, const std::string& file, const std::string& ctx, const std::string& term) {
  s.load(file);
  s.context(ctx);
  AnyTerm t = s.take(parse_any(term, s.sig().signature(), s.ctx()));
  if (const auto* m = std::get_if<Object>(&t)) {
    s.out() << print(s.take(synth_object(s.sig(), s.ctx(), *m, s.fuel()))) << "\n";
  } else if (const auto* a = std::get_if<Family>(&t)) {
    s.out() << print(s.take(synth_family(s.sig(), s.ctx(), *a, s.fuel()))) << "\n";
  } else {
    s.take(synth_kind(s.sig(), s.ctx(), std::get<Kind>(t), s.fuel()));
    s.out() << "kind\n";
  }
  return kOk;
}

inline int cmd_eq(Session& s, const std::string& file, const std::string& ctx, const std::string& type,
                  const std::string& lhs, const std::string& rhs) {
  s.load(file);
  s.context(ctx);
  Family a = s.family(type);
  Object m = s.object(lhs), n = s.object(rhs);
  EqOutcome r = s.take(def_equal_objects(s.sig(), s.ctx(), m, n, a, s.fuel()));
  if (r.ok()) {
    s.out() << "equal\n";
    return kOk;
  }
  s.out() << "not equal\n";
  if (r.mismatch) s.err() << r.mismatch->to_string() << "\n";
  return kFails;
}

inline int cmd_canon(Session& s, const std::string& file, const std::string& ctx, const std::string& type,
                     const std::string& term) {
  s.load(file);
  s.context(ctx);
  Family a = s.family(type);
  Object m = s.object(term);
  s.take(check_object(s.sig(), s.ctx(), m, a, s.fuel()));
  s.out() << print(s.take(canonicalize(s.sig(), s.ctx(), m, a, s.fuel()))) << "\n";
  return kOk;
}

// Recovers the function symbol table from a signature that must coincide,
// up to declaration order, with the generated encoding signature.
inline fol::SignatureTable fol_table(Session& s) {
  fol::SignatureTable tbl;
  const Signature& sig = s.sig().signature();
  for (const auto& d : sig) {
    if (d.declares_family() || fol::is_reserved(d.name)) continue;
    std::size_t n = 0;
    Family t = *d.type();
    while (const auto* pi = t.as<Pi>()) {
      if (!alpha_equal(pi->dom, fol::iota())) break;
      ++n;
      t = pi->cod;
    }
    if (!alpha_equal(t, fol::iota())) s.fail(kFails, "`" + d.name + "` is not a function symbol over iota");
    tbl.add(d.name, n);
  }
  std::vector<std::string> want, have;
  for (const auto& d : fol::gen_lf_signature(tbl)) want.push_back(print(d));
  for (const auto& d : sig) have.push_back(print(d));
  std::sort(want.begin(), want.end());
  std::sort(have.begin(), have.end());
  if (want != have) s.fail(kFails, "signature is not a first-order logic encoding");
  return tbl;
}

inline int cmd_fol_demo(Session& s, const std::string& file, const std::string& text) {
  s.load(file);
  auto tbl = fol_table(s);
  fol::Formula p = [&] {
    try {
      return fol::parse_formula(text, tbl);
    } catch (const fol::FolError& e) {
      s.fail(kMalformed, std::string("formula: ") + e.what());
    }
  }();
  auto xs = fol::free_vars(p);
  Context g = fol::lf_context(xs);
  QuasiCanonical q = fol::encode(tbl, xs, p);
  Object m = s.take(elaborate_qc(s.sig(), g, q, fol::prop(), s.fuel()));
  s.take(check_object(s.sig(), g, m, fol::prop(), s.fuel()));
  QuasiCanonical again = s.take(canonicalize(s.sig(), g, m, fol::prop(), s.fuel()));
  fol::Formula back = fol::decode_formula(tbl, xs, again);

  s.out() << "formula:    " << fol::to_string(p) << "\n";
  s.out() << "context:    " << print(g) << "\n";
  s.out() << "encoded:    " << print(q) << "\n";
  s.out() << "elaborated: " << print(m) << "\n";
  s.out() << "decoded:    " << fol::to_string(back) << "\n";
  if (!(back == p) || !alpha_equal(again, q)) {
    s.out() << "round trip: FAILED\n";
    return kFails;
  }
  s.out() << "round trip: ok\n";
  return kOk;
}

inline int cmd_fol_sig(Session& s, const std::vector<std::string>& symbols) {
  fol::SignatureTable tbl;
  for (const auto& sym : symbols) {
    auto slash = sym.rfind('/');
    if (slash == std::string::npos) s.fail(kMalformed, "expected NAME/ARITY, found `" + sym + "`");
    std::size_t arity = 0;
    try {
      std::size_t used = 0;
      arity = std::stoul(sym.substr(slash + 1), &used);
      if (used != sym.size() - slash - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      s.fail(kMalformed, "bad arity in `" + sym + "`");
    }
    try {
      tbl.add(sym.substr(0, slash), arity);
    } catch (const fol::FolError& e) {
      s.fail(kMalformed, e.what());
    }
  }
  s.out() << print(fol::gen_lf_signature(tbl));
  return kOk;
}

}  // namespace detail

/// Runs one command; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Type checker and equality decider for the LF logical framework", "lfcheck"};
  app.require_subcommand(1);

  std::string file, ctx, type, term, lhs, rhs, formula;
  std::vector<std::string> symbols;
  std::uint64_t fuel = kDefaultFuel;

  auto with_fuel = [&](CLI::App* sub) {
    sub->add_option("--fuel", fuel, "Reduction step budget per query")->check(CLI::PositiveNumber);
  };
  auto with_ctx = [&](CLI::App* sub) { sub->add_option("--ctx", ctx, "Ambient context, e.g. \"x:A, y:B\""); };

  auto* check = app.add_subcommand("check", "Check a signature file");
  check->add_option("FILE", file)->required();
  with_fuel(check);

  auto* synth = app.add_subcommand("synth", "Synthesize the type or kind of a term");
  synth->add_option("FILE", file)->required();
  synth->add_option("TERM", term)->required();
  with_ctx(synth);
  with_fuel(synth);

  auto* eq = app.add_subcommand("eq", "Decide definitional equality of two objects");
  eq->add_option("FILE", file)->required();
  eq->add_option("M", lhs)->required();
  eq->add_option("N", rhs)->required();
  eq->add_option("--type", type, "Common type of M and N")->required();
  with_ctx(eq);
  with_fuel(eq);

  auto* canon = app.add_subcommand("canon", "Print the quasi-canonical form of an object");
  canon->add_option("FILE", file)->required();
  canon->add_option("M", term)->required();
  canon->add_option("--type", type, "Type of M")->required();
  with_ctx(canon);
  with_fuel(canon);

  auto* demo = app.add_subcommand("fol-demo", "Encode, elaborate, check and decode a first-order formula");
  demo->add_option("FILE", file)->required();
  demo->add_option("FORMULA", formula)->required();
  with_fuel(demo);

  auto* folsig = app.add_subcommand("fol-sig", "Print the encoding signature for function symbols NAME/ARITY");
  folsig->add_option("SYMBOLS", symbols);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }

  detail::Session s(out, err, fuel);
  try {
    if (*check) return detail::cmd_check(s, file);
    if (*synth) return detail::cmd_synth(s, file, ctx, term);
    if (*eq) return detail::cmd_eq(s, file, ctx, type, lhs, rhs);
    if (*canon) return detail::cmd_canon(s, file, ctx, type, term);
    if (*demo) return detail::cmd_fol_demo(s, file, formula);
    if (*folsig) return detail::cmd_fol_sig(s, symbols);
  } catch (const detail::Failure& f) {
    return f.code;
  } catch (const fol::FolError& e) {
    err << "error: " << e.what() << "\n";
    return kFails;
  }
  return kMalformed;
}

}  // namespace lf::cli
